// d2q9lab: run lattice Boltzmann studies, mesh sweeps and dispersion scans from the command line.
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 runtime failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "d2q9lab/d2q9lab.hpp"

namespace fs = std::filesystem;
using namespace d2q9lab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

/// The only environment variable consulted: overrides the configured output directory.
constexpr const char* kOutputEnv = "D2Q9LAB_OUTPUT_DIR";

struct SourceOptions {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::string meshes;
  bool long_run = false;
};

void add_source_options(CLI::App* cmd, SourceOptions& o) {
  auto* cfg = cmd->add_option("--config", o.config_path, "configuration file");
  auto* pre = cmd->add_option("--preset", o.preset, "shipped configuration (see 'presets')");
  cfg->excludes(pre);
  cmd->add_option("--out", o.out_dir, "output directory (overrides config and " + std::string(kOutputEnv) + ")");
  cmd->add_option("--meshes", o.meshes, "comma-separated subset or replacement of the mesh list");
  cmd->add_flag("--long", o.long_run, "enable long-run meshes (above the default cap)");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read configuration '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Replaces the mesh list. Per-mesh step lists are narrowed to the chosen meshes,
/// which then must all come from the configured list.
void override_meshes(RunConfig& rc, const std::vector<int>& meshes) {
  StudyConfig& st = rc.study;
  auto pick = [&](std::vector<int>& per_mesh, const char* what) {
    if (per_mesh.empty()) return;
    std::vector<int> picked;
    for (int n : meshes) {
      auto it = std::find(st.meshes.begin(), st.meshes.end(), n);
      if (it == st.meshes.end())
        throw ConfigError({"mesh " + std::to_string(n) + " has no prescribed " + what + " in this configuration"});
      picked.push_back(per_mesh[static_cast<std::size_t>(it - st.meshes.begin())]);
    }
    per_mesh = std::move(picked);
  };
  pick(st.lbm_steps, "lattice Boltzmann step count");
  if (st.fd_policy == FdStepPolicy::Explicit) pick(st.fd_steps, "finite difference step count");
  st.meshes = meshes;
  rc.long_meshes.clear();
}

/// Resolves config source, overrides and output directory; re-validates the result.
RunConfig load_config(const SourceOptions& o) {
  std::string text;
  if (!o.preset.empty()) {
    auto p = find_preset(o.preset);
    if (!p) throw ConfigError({"unknown preset '" + o.preset + "'"});
    text = p->text;
  } else if (!o.config_path.empty()) {
    text = read_text(o.config_path);
  } else {
    throw ConfigError({"one of --config or --preset is required"});
  }
  RunConfig rc = parse_config(text);
  if (o.long_run) rc.long_run = true;
  if (!o.meshes.empty()) {
    auto list = config_detail::parse_int_list(o.meshes);
    if (!list || list->empty()) throw ConfigError({"--meshes must be a comma-separated integer list"});
    override_meshes(rc, *list);
  }
  if (const char* env = std::getenv(kOutputEnv); env && *env) rc.output_dir = env;
  if (!o.out_dir.empty()) rc.output_dir = o.out_dir;
  // the overrides may break cross-field rules: validate again
  return parse_config(serialize_config(rc));
}

std::string pair_tag(const SolverPair& p) { return std::string(to_string(p.first)) + "_vs_" + std::string(to_string(p.second)); }

void write_snapshots(const fs::path& dir, const MeshResult& m) {
  const std::string n = std::to_string(m.plan.n);
  write_field_csv(m.initial, dir / ("n" + n + "_initial.csv"));
  for (const auto& [kind, out] : m.outcomes)
    if (out.ok()) write_field_csv(out.density, dir / ("n" + n + "_" + std::string(to_string(kind)) + ".csv"));
}

void write_config_copy(const RunConfig& rc, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "config.cfg");
  out << serialize_config(rc);
  if (!out) throw IoError("cannot write '" + (dir / "config.cfg").string() + "'");
}

void print_report(const ConvergenceReport& rep) {
  std::printf("%s vs %s\n", std::string(to_string(rep.solvers.first)).c_str(),
              std::string(to_string(rep.solvers.second)).c_str());
  std::printf("  %6s %12s %12s %7s %10s %10s %13s %13s  %s\n", "n", "dx", "dt", "steps", "sJ", "T", "l2", "linf",
              "status");
  for (const auto& r : rep.rows)
    std::printf("  %6d %12.5e %12.5e %7d %10.5f %10.5f %13.6e %13.6e  %s\n", r.plan.n, r.plan.dx, r.plan.dt,
                r.plan.steps, r.plan.s_j, r.plan.final_time, r.errors.l2, r.errors.linf, r.status.c_str());
  if (rep.order_l2)
    std::printf("  fitted order: l2 %.3f  linf %.3f\n", *rep.order_l2, *rep.order_linf);
  else
    std::printf("  fitted order: n/a (%s)\n", rep.order_note.c_str());
}

int cmd_presets(bool show, const std::string& name) {
  if (!name.empty()) {
    auto p = find_preset(name);
    if (!p) {
      std::fprintf(stderr, "error: unknown preset '%s'\n", name.c_str());
      return kExitInvalid;
    }
    std::cout << p->text;
    return kExitOk;
  }
  for (const auto& p : kPresets) {
    std::printf("%-14s %s\n", std::string(p.name).c_str(), std::string(p.summary).c_str());
    if (show) std::cout << p.text << "\n";
  }
  return kExitOk;
}

int cmd_convergence(const SourceOptions& o, unsigned threads) {
  const RunConfig rc = load_config(o);
  const StudyConfig st = effective_study(rc);
  const fs::path dir = fs::path(rc.output_dir);
  const StudyResult res = run_study(st, threads);
  write_config_copy(rc, dir);
  for (const auto& m : res.meshes)
    if (m.error.empty()) write_snapshots(dir / "fields", m);
  bool all_ok = true;
  for (const auto& rep : res.reports) {
    write_report_csv(rep, dir / ("report_" + pair_tag(rep.solvers) + ".csv"));
    write_trace_csv(rep, dir / ("trace_" + pair_tag(rep.solvers) + ".csv"));
    print_report(rep);
    for (const auto& r : rep.rows) all_ok = all_ok && r.ok();
  }
  std::printf("wrote %s\n", dir.string().c_str());
  return all_ok ? kExitOk : kExitRuntime;
}

int cmd_run(const SourceOptions& o, std::optional<int> mesh) {
  RunConfig rc = load_config(o);
  StudyConfig st = effective_study(rc);
  std::size_t index = 0;
  if (mesh) {
    auto it = std::find(st.meshes.begin(), st.meshes.end(), *mesh);
    if (it == st.meshes.end()) throw ConfigError({"mesh " + std::to_string(*mesh) + " is not in the mesh list"});
    index = static_cast<std::size_t>(it - st.meshes.begin());
  }
  const MeshResult m = run_mesh(st, index);
  if (!m.error.empty()) {
    std::fprintf(stderr, "error: mesh %d: %s\n", m.plan.n, m.error.c_str());
    return kExitRuntime;
  }
  const fs::path dir = fs::path(rc.output_dir);
  write_config_copy(rc, dir);
  write_snapshots(dir / "fields", m);

  const fs::path trace_path = dir / ("trace_n" + std::to_string(m.plan.n) + ".csv");
  std::ofstream trace(trace_path);
  if (!trace) throw IoError("cannot open '" + trace_path.string() + "' for writing");
  trace << "n,solver,time,gamma\n";
  bool ok = true;
  std::printf("mesh %d: dx %.6g dt %.6g steps %d sJ %.6g T %.6g\n", m.plan.n, m.plan.dx, m.plan.dt, m.plan.steps,
              m.plan.s_j, m.plan.final_time);
  for (const auto& [kind, out] : m.outcomes) {
    if (!out.ok()) {
      std::printf("  %-10s failed: %s\n", std::string(to_string(kind)).c_str(), out.error.c_str());
      ok = false;
      continue;
    }
    const ErrorNorms norms = field_norms(out.density);
    std::printf("  %-10s steps %7d dt %.6g T %.6g max %.6e l2 %.6e gamma(T) %.6f\n",
                std::string(to_string(kind)).c_str(), out.steps, out.dt, out.final_time, out.density.max(), norms.l2,
                out.trace.back().gamma);
    for (const auto& p : out.trace)
      trace << m.plan.n << ',' << to_string(kind) << ',' << csv_detail::num(p.time) << ',' << csv_detail::num(p.gamma)
            << '\n';
  }
  if (!trace) throw IoError("write to '" + trace_path.string() + "' failed");
  std::printf("wrote %s\n", dir.string().c_str());
  return ok ? kExitOk : kExitRuntime;
}

struct DispersionOptions {
  std::string ks = "1,0";
  double lambda = 1.0;
  std::string kappa;
  std::string s_j;
  double alpha = -2.0;
  double dx = 0.0;
  double dt = 0.0;
  std::string out_dir;
};

std::vector<WaveVector> parse_wave_vectors(const std::string& text) {
  std::vector<WaveVector> ks;
  for (const auto& item : config_detail::split(text, ';')) {
    const auto parts = config_detail::split(item, ',');
    std::optional<double> kx, ky;
    if (parts.size() == 2) {
      kx = config_detail::parse_number(parts[0]);
      ky = config_detail::parse_number(parts[1]);
    }
    if (!kx || !ky) throw ConfigError({"--k entry '" + item + "' is not 'kx,ky'"});
    ks.push_back({*kx, *ky});
  }
  return ks;
}

int cmd_dispersion(const DispersionOptions& o) {
  std::vector<std::string> errors;
  if (!(o.dx > 0.0)) errors.push_back("--dx must be positive");
  if (!(o.lambda > 0.0)) errors.push_back("--lambda must be positive");
  if (o.kappa.empty() == o.s_j.empty()) errors.push_back("exactly one of --kappa or --sJ is required");
  if (!errors.empty()) throw ConfigError(std::move(errors));
  const double dt = o.dt > 0.0 ? o.dt : o.dx / o.lambda;
  // the lattice velocity follows from the mesh: lambda = dx / dt
  const double lambda = o.dx / dt;

  double s_j = 0.0, kappa = 0.0;
  if (!o.kappa.empty()) {
    auto k = config_detail::parse_number(o.kappa);
    if (!k) throw ConfigError({"--kappa is not a number"});
    kappa = *k;
    s_j = sJ_for_diffusivity(kappa, lambda, o.dx, o.alpha);
  } else {
    auto s = config_detail::parse_number(o.s_j);
    if (!s) throw ConfigError({"--sJ is not a number"});
    s_j = *s;
    kappa = diffusivity(s_j, lambda, o.dx, o.alpha);
  }
  const SchemeParams p = SchemeParams::make(s_j, lambda, o.alpha);
  const auto ks = parse_wave_vectors(o.ks);

  std::string dir = o.out_dir;
  if (dir.empty())
    if (const char* env = std::getenv(kOutputEnv); env && *env) dir = env;
  // the summary moves to stderr when the CSV goes to stdout
  std::FILE* info = dir.empty() ? stderr : stdout;

  std::ostringstream csv;
  write_spectrum_header(csv);
  std::fprintf(info, "dx %.6g dt %.6g lambda %.6g sJ %.6g kappa %.6g\n", o.dx, dt, lambda, s_j, kappa);
  for (const auto& k : ks) {
    const DispersionSpectrum s = analyze_dispersion(k, p, dt, kappa);
    write_spectrum_rows(csv, s);
    std::fprintf(info, "k = (%g, %g) %s: slowest %.6e%+.6ei, %.6e%+.6ei; acoustic %.6e%+.6ei, %.6e%+.6ei; heat %.6e\n", k.kx,
                k.ky, std::string(to_string(s.mode_class)).c_str(), s.lbm_rates[0].gamma.real(),
                s.lbm_rates[0].gamma.imag(), s.lbm_rates[1].gamma.real(), s.lbm_rates[1].gamma.imag(),
                s.acoustic_roots[0].real(), s.acoustic_roots[0].imag(), s.acoustic_roots[1].real(),
                s.acoustic_roots[1].imag(), s.heat_rate);
  }
  if (dir.empty()) {
    std::cout << csv.str();
  } else {
    const fs::path path = fs::path(dir) / "spectrum.csv";
    auto out = csv_detail::open_out(path);
    out << csv.str();
    csv_detail::finish(out, path);
    std::printf("wrote %s\n", path.string().c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D2Q9 lattice Boltzmann convergence and dispersion studies"};
  app.require_subcommand(1);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads, "worker threads for mesh sweeps")->check(CLI::Range(1u, 1024u));

  SourceOptions run_opts, conv_opts;
  std::optional<int> run_mesh_opt;
  auto* run = app.add_subcommand("run", "run every solver of a configuration on one mesh");
  add_source_options(run, run_opts);
  run->add_option("--mesh", run_mesh_opt, "mesh to run (default: first of the list)");

  auto* conv = app.add_subcommand("convergence", "mesh sweep with error norms and fitted orders");
  add_source_options(conv, conv_opts);

  DispersionOptions disp_opts;
  auto* disp = app.add_subcommand("dispersion", "lattice Boltzmann spectrum against the limit models");
  disp->add_option("--k", disp_opts.ks, "wave vectors 'kx,ky;kx,ky;...'");
  disp->add_option("--dx", disp_opts.dx, "mesh step")->required();
  disp->add_option("--dt", disp_opts.dt, "time step (default dx / lambda)");
  disp->add_option("--lambda", disp_opts.lambda, "lattice velocity when --dt is omitted");
  disp->add_option("--kappa", disp_opts.kappa, "target diffusivity (s_J follows)");
  disp->add_option("--sJ", disp_opts.s_j, "relaxation rate of the momentum (kappa follows)");
  disp->add_option("--alpha", disp_opts.alpha, "energy equilibrium coefficient");
  disp->add_option("--out", disp_opts.out_dir, "output directory (default: CSV on stdout)");

  bool show = false;
  std::string show_name;
  auto* presets = app.add_subcommand("presets", "list the shipped configurations");
  presets->add_flag("--show", show, "print every configuration");
  presets->add_option("name", show_name, "print one configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*presets) return cmd_presets(show, show_name);
    if (*run) return cmd_run(run_opts, run_mesh_opt);
    if (*conv) return cmd_convergence(conv_opts, threads);
    if (*disp) return cmd_dispersion(disp_opts);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "invalid configuration:\n");
    for (const auto& v : e.violations()) std::fprintf(stderr, "  %s\n", v.c_str());
    return kExitInvalid;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitInvalid;
}
