#ifndef D2Q9LAB_CSV_HPP_
#define D2Q9LAB_CSV_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/experiments.hpp"
#include "d2q9lab/grid.hpp"
#include "d2q9lab/spectral.hpp"

namespace d2q9lab {

namespace csv_detail {

/// 17 significant digits: exact round trip for IEEE doubles.
inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace csv_detail

inline void write_field_csv(std::ostream& out, const ScalarField& field) {
  using csv_detail::num;
  out << "i,j,x,y,value\n";
  const CellGrid& g = field.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out << i << ',' << j << ',' << num(g.x_center(i)) << ',' << num(g.y_center(j)) << ',' << num(field(i, j)) << '\n';
}

inline void write_field_csv(const ScalarField& field, const std::filesystem::path& path) {
  auto out = csv_detail::open_out(path);
  write_field_csv(out, field);
  csv_detail::finish(out, path);
}

/// Inverse of write_field_csv; geometry is rebuilt from the cell centers.
inline ScalarField read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != "i,j,x,y,value") throw IoError("'" + path.string() + "' is not a field CSV");
  struct Row {
    int i, j;
    double x, y, v;
  };
  std::vector<Row> rows;
  int nx = 0, ny = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    if (cols.size() != 5) throw IoError("malformed row in '" + path.string() + "': " + line);
    Row r{std::stoi(cols[0]), std::stoi(cols[1]), std::strtod(cols[2].c_str(), nullptr),
          std::strtod(cols[3].c_str(), nullptr), std::strtod(cols[4].c_str(), nullptr)};
    nx = std::max(nx, r.i + 1);
    ny = std::max(ny, r.j + 1);
    rows.push_back(r);
  }
  if (rows.empty()) return ScalarField{};
  if (rows.size() != static_cast<std::size_t>(nx) * ny) throw IoError("'" + path.string() + "' has missing cells");
  double dx = 0.0;
  if (nx > 1) dx = rows[1].x - rows[0].x;
  else if (ny > 1) dx = rows[static_cast<std::size_t>(nx)].y - rows[0].y;
  else dx = 2.0 * std::abs(rows[0].x);
  CellGrid g{nx, ny, dx, rows[0].x - 0.5 * dx, rows[0].y - 0.5 * dx};
  ScalarField f(g);
  for (const auto& r : rows) f(r.i, r.j) = r.v;
  return f;
}

/// Columns n, dx, dt, steps, sJ, final_time, l2, linf, then extras; a trailer row
/// carries the fitted orders in the l2 / linf columns; '#' lines hold metadata.
inline void write_report_csv(std::ostream& out, const ConvergenceReport& rep) {
  using csv_detail::num;
  out << "n,dx,dt,steps,sJ,final_time,l2,linf,steps_a,steps_b,rel_l2,rel_linf,status\n";
  for (const auto& r : rep.rows) {
    std::string status = r.status;
    for (char& c : status)
      if (c == ',' || c == '\n') c = ';';
    out << r.plan.n << ',' << num(r.plan.dx) << ',' << num(r.plan.dt) << ',' << r.plan.steps << ',' << num(r.plan.s_j)
        << ',' << num(r.plan.final_time) << ',' << num(r.errors.l2) << ',' << num(r.errors.linf) << ',' << r.steps_a
        << ',' << r.steps_b << ',' << num(r.relative.l2) << ',' << num(r.relative.linf) << ',' << status << '\n';
  }
  out << "fitted_order,,,,,," << (rep.order_l2 ? num(*rep.order_l2) : "") << ','
      << (rep.order_linf ? num(*rep.order_linf) : "") << ",,,,," << rep.order_note << '\n';
  out << "# experiment=" << rep.experiment << '\n';
  out << "# solvers=" << to_string(rep.solvers.first) << ':' << to_string(rep.solvers.second) << '\n';
  out << "# scaling=" << to_string(rep.scaling) << " lambda=" << num(rep.lambda) << '\n';
  out << "# kappa_policy=" << rep.kappa_policy << '\n';
  out << "# time_policy=" << rep.time_policy << '\n';
  if (!rep.rows.empty()) out << "# kappa=" << num(rep.rows.front().plan.kappa) << '\n';
}

inline void write_report_csv(const ConvergenceReport& rep, const std::filesystem::path& path) {
  auto out = csv_detail::open_out(path);
  write_report_csv(out, rep);
  csv_detail::finish(out, path);
}

/// Autocorrelation histories of both solvers for every mesh of a report.
inline void write_trace_csv(const ConvergenceReport& rep, const std::filesystem::path& path) {
  using csv_detail::num;
  auto out = csv_detail::open_out(path);
  out << "n,solver,time,gamma\n";
  for (const auto& r : rep.rows) {
    for (const auto& p : r.trace_a) out << r.plan.n << ',' << to_string(rep.solvers.first) << ',' << num(p.time) << ',' << num(p.gamma) << '\n';
    for (const auto& p : r.trace_b) out << r.plan.n << ',' << to_string(rep.solvers.second) << ',' << num(p.time) << ',' << num(p.gamma) << '\n';
  }
  csv_detail::finish(out, path);
}

inline void write_spectrum_header(std::ostream& out) {
  out << "kx,ky,branch,re_gamma,im_gamma,branch_ambiguous,heat_rate,acoustic_re_1,acoustic_im_1,acoustic_re_2,"
         "acoustic_im_2,mode_class\n";
}

/// One row per lattice rate (branch 0 = slowest).
inline void write_spectrum_rows(std::ostream& out, const DispersionSpectrum& s) {
  using csv_detail::num;
  for (std::size_t b = 0; b < s.lbm_rates.size(); ++b) {
    const auto& r = s.lbm_rates[b];
    out << num(s.k.kx) << ',' << num(s.k.ky) << ',' << b << ',' << num(r.gamma.real()) << ',' << num(r.gamma.imag())
        << ',' << (r.branch_ambiguous ? 1 : 0) << ',' << num(s.heat_rate) << ',' << num(s.acoustic_roots[0].real())
        << ',' << num(s.acoustic_roots[0].imag()) << ',' << num(s.acoustic_roots[1].real()) << ','
        << num(s.acoustic_roots[1].imag()) << ',' << to_string(s.mode_class) << '\n';
  }
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_CSV_HPP_
