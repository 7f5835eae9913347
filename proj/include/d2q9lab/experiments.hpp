#ifndef D2Q9LAB_EXPERIMENTS_HPP_
#define D2Q9LAB_EXPERIMENTS_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "d2q9lab/diagnostics.hpp"
#include "d2q9lab/errors.hpp"
#include "d2q9lab/grid.hpp"
#include "d2q9lab/haway.hpp"
#include "d2q9lab/heat_fd.hpp"
#include "d2q9lab/initial_conditions.hpp"
#include "d2q9lab/lattice.hpp"
#include "d2q9lab/scaling.hpp"
#include "d2q9lab/spectral.hpp"

namespace d2q9lab {

enum class SolverKind { Lbm, HeatFd, Haway, ExactWave };
enum class FdStepPolicy { MatchLbm, Stable, Explicit };
enum class HawayStepPolicy { QuarterLbm, Cfl };
enum class InitialKind { Gaussian, PlaneWave };

inline std::string_view to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Lbm: return "lbm";
    case SolverKind::HeatFd: return "heat_fd";
    case SolverKind::Haway: return "haway";
    case SolverKind::ExactWave: return "exact_wave";
  }
  return "?";
}
inline std::string_view to_string(FdStepPolicy p) {
  switch (p) {
    case FdStepPolicy::MatchLbm: return "match_lbm";
    case FdStepPolicy::Stable: return "stable";
    case FdStepPolicy::Explicit: return "explicit";
  }
  return "?";
}
inline std::string_view to_string(HawayStepPolicy p) { return p == HawayStepPolicy::QuarterLbm ? "quarter_lbm" : "cfl"; }
inline std::string_view to_string(InitialKind k) { return k == InitialKind::Gaussian ? "gaussian" : "plane_wave"; }

inline std::optional<SolverKind> parse_solver_kind(std::string_view s) {
  for (auto k : {SolverKind::Lbm, SolverKind::HeatFd, SolverKind::Haway, SolverKind::ExactWave})
    if (s == to_string(k)) return k;
  return std::nullopt;
}
inline std::optional<FdStepPolicy> parse_fd_policy(std::string_view s) {
  for (auto k : {FdStepPolicy::MatchLbm, FdStepPolicy::Stable, FdStepPolicy::Explicit})
    if (s == to_string(k)) return k;
  return std::nullopt;
}
inline std::optional<HawayStepPolicy> parse_haway_policy(std::string_view s) {
  for (auto k : {HawayStepPolicy::QuarterLbm, HawayStepPolicy::Cfl})
    if (s == to_string(k)) return k;
  return std::nullopt;
}
inline std::optional<InitialKind> parse_initial_kind(std::string_view s) {
  for (auto k : {InitialKind::Gaussian, InitialKind::PlaneWave})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

using SolverPair = std::pair<SolverKind, SolverKind>;

/// Everything that defines a refinement study, independent of where results go.
struct StudyConfig {
  std::string name = "study";
  std::vector<int> meshes;

  ScalingKind scaling = ScalingKind::Acoustic;
  double lambda = 1.0;  ///< lattice velocity (acoustic) or lambda * dx (diffusive)
  std::optional<double> kappa;
  std::optional<double> s_j;

  double alpha = -2.0;
  double beta = 1.0;
  double s_e = 1.7;
  double s_x = 1.1;
  double s_q = 1.1;
  double s_eps = 1.7;

  double domain_lo = -1.0;
  double domain_hi = 1.0;

  InitialKind initial = InitialKind::Gaussian;
  double gaussian_width = 0.09;
  WaveVector wave{1.0, 1.0};

  /// Exactly one of these fixes the lattice Boltzmann step count per mesh.
  std::optional<double> final_time;
  std::vector<int> lbm_steps;

  std::vector<SolverPair> pairs{{SolverKind::Lbm, SolverKind::HeatFd}};
  FdStepPolicy fd_policy = FdStepPolicy::Stable;
  std::vector<int> fd_steps;
  double fd_safety = 1.0;
  HawayStepPolicy haway_policy = HawayStepPolicy::QuarterLbm;
  double haway_safety = 1.0;

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

/// Lattice Boltzmann plan of the i-th mesh.
inline ExperimentPlan plan_for_mesh(const StudyConfig& cfg, std::size_t i) {
  const int n = cfg.meshes.at(i);
  const double extent = cfg.domain_hi - cfg.domain_lo;
  if (!cfg.lbm_steps.empty())
    return resolve_plan_with_steps(n, cfg.scaling, cfg.kappa, cfg.alpha, cfg.lambda, cfg.lbm_steps.at(i), extent,
                                   cfg.s_j);
  if (!cfg.final_time) throw ParameterError("study needs final_time or lbm_steps");
  return resolve_plan(n, cfg.scaling, cfg.kappa, cfg.alpha, cfg.lambda, *cfg.final_time, extent, cfg.s_j);
}

inline SchemeParams scheme_for_plan(const StudyConfig& cfg, const ExperimentPlan& plan) {
  return SchemeParams::make(plan.s_j, plan.lambda, cfg.alpha, cfg.beta, cfg.s_e, cfg.s_x, cfg.s_q, cfg.s_eps);
}

inline CellGrid grid_for_plan(const StudyConfig& cfg, const ExperimentPlan& plan) {
  return CellGrid::square(plan.n, cfg.domain_lo, cfg.domain_hi);
}

inline ScalarField initial_density(const StudyConfig& cfg, const CellGrid& grid) {
  if (cfg.initial == InitialKind::Gaussian) {
    const double w = cfg.gaussian_width;
    return ScalarField::sample(grid, [w](double x, double y) { return gaussian_init(x, y, w); });
  }
  const PlaneWave wave(cfg.wave, grid);
  return ScalarField::sample(grid, wave);
}

struct TracePoint {
  double time;
  double gamma;
};

/// Final density and autocorrelation history of one solver on one mesh.
struct SolverOutcome {
  SolverKind kind = SolverKind::Lbm;
  int steps = 0;
  double dt = 0.0;
  double final_time = 0.0;
  ScalarField density;
  std::vector<TracePoint> trace;
  std::string error;  ///< empty on success

  bool ok() const noexcept { return error.empty(); }
};

namespace detail {

inline int trace_stride(int steps) { return std::max(1, steps / 200); }

template <class Advance, class Density>
void run_traced(SolverOutcome& out, const ScalarField& rho0, Advance&& advance, Density&& density) {
  const int stride = trace_stride(out.steps);
  out.trace.push_back({0.0, 1.0});
  for (int n = 1; n <= out.steps; ++n) {
    advance();
    if (n % stride == 0 || n == out.steps) out.trace.push_back({n * out.dt, autocorrelation(density(), rho0)});
  }
  out.density = density();
}

inline int steps_for(double final_time, double dt_max) {
  return std::max(1, static_cast<int>(std::ceil(final_time / dt_max * (1.0 - 1e-12))));
}

}  // namespace detail

/// Runs one solver to the plan's final time from the shared initial density.
inline SolverOutcome run_solver(SolverKind kind, const StudyConfig& cfg, const ExperimentPlan& plan,
                                const ScalarField& rho0, std::size_t mesh_index) {
  SolverOutcome out;
  out.kind = kind;
  const double t_final = plan.final_time;
  switch (kind) {
    case SolverKind::Lbm: {
      const SchemeParams params = scheme_for_plan(cfg, plan);
      auto grid = init_equilibrium(rho0, params);
      LbmStepper<double> stepper(params);
      out.steps = plan.steps;
      out.dt = plan.dt;
      detail::run_traced(out, rho0, [&] { stepper.step(grid); }, [&] { return density_field(grid); });
      break;
    }
    case SolverKind::HeatFd: {
      switch (cfg.fd_policy) {
        case FdStepPolicy::MatchLbm: out.steps = plan.steps; break;
        case FdStepPolicy::Explicit: out.steps = cfg.fd_steps.at(mesh_index); break;
        case FdStepPolicy::Stable:
          out.steps = detail::steps_for(t_final, heat_fd_stable_dt(plan.kappa, plan.dx, cfg.fd_safety));
          break;
      }
      out.dt = cfg.fd_policy == FdStepPolicy::MatchLbm ? plan.dt : t_final / out.steps;
      HeatFdSolver solver(rho0, plan.kappa, out.dt);
      detail::run_traced(out, rho0, [&] { solver.step(); }, [&] { return solver.field(); });
      break;
    }
    case SolverKind::Haway: {
      const auto ac = c0_and_g(cfg.alpha, plan.lambda, plan.kappa);
      if (cfg.haway_policy == HawayStepPolicy::QuarterLbm) {
        out.steps = 4 * plan.steps;
        out.dt = haway_dt_from_lbm(plan.dt);
      } else {
        out.steps = detail::steps_for(t_final, haway_stable_dt(ac.c0, plan.dx, cfg.haway_safety));
        out.dt = t_final / out.steps;
      }
      auto state = StaggeredState::at_rest(rho0, ac.c0, ac.g);
      detail::run_traced(out, rho0, [&] { haway_advance(state, out.dt); }, [&] { return state.rho; });
      break;
    }
    case SolverKind::ExactWave: {
      if (cfg.initial != InitialKind::PlaneWave)
        throw DomainError("exact damped acoustic solution needs a plane-wave initial condition");
      const auto ac = c0_and_g(cfg.alpha, plan.lambda, plan.kappa);
      const CellGrid& grid = rho0.grid;
      const WaveVector k = cfg.wave;
      out.steps = plan.steps;
      out.dt = plan.dt;
      double t = 0.0;
      auto sample = [&] {
        return ScalarField::sample(
            grid, [&](double x, double y) { return released_wave_solution(x, y, t, k, ac.c0, ac.g, 1.0).rho; });
      };
      int n = 0;
      detail::run_traced(out, rho0, [&] { t = (++n) * out.dt; }, sample);
      break;
    }
  }
  out.final_time = out.steps * out.dt;
  return out;
}

struct ReportRow {
  ExperimentPlan plan;
  int steps_a = 0;
  int steps_b = 0;
  ErrorNorms errors{};
  ErrorNorms relative{};  ///< errors divided by the norms of solver_b's field
  std::string status = "ok";
  std::vector<TracePoint> trace_a;
  std::vector<TracePoint> trace_b;

  bool ok() const noexcept { return status == "ok"; }
};

/// Error between two solvers over a mesh sequence, with fitted orders.
struct ConvergenceReport {
  std::string experiment;
  SolverPair solvers{SolverKind::Lbm, SolverKind::HeatFd};
  ScalingKind scaling = ScalingKind::Acoustic;
  double lambda = 1.0;
  std::string kappa_policy;
  std::string time_policy;
  std::vector<ReportRow> rows;
  std::optional<double> order_l2;
  std::optional<double> order_linf;
  std::string order_note;
};

/// Fitted orders from the successful rows; leaves them empty with a note when not possible.
inline void fit_orders(ConvergenceReport& report) {
  std::vector<double> dxs, l2, linf;
  for (const auto& r : report.rows) {
    if (!r.ok()) continue;
    dxs.push_back(r.plan.dx);
    l2.push_back(r.errors.l2);
    linf.push_back(r.errors.linf);
  }
  report.order_l2.reset();
  report.order_linf.reset();
  try {
    report.order_l2 = convergence_order(dxs, l2);
    report.order_linf = convergence_order(dxs, linf);
    report.order_note.clear();
  } catch (const ParameterError& e) {
    report.order_l2.reset();
    report.order_linf.reset();
    report.order_note = e.what();
  }
}

/// Per-mesh solver outcomes of a study.
struct MeshResult {
  ExperimentPlan plan;
  ScalarField initial;
  std::map<SolverKind, SolverOutcome> outcomes;
  std::string error;
};

struct StudyResult {
  std::vector<MeshResult> meshes;
  std::vector<ConvergenceReport> reports;  ///< one per solver pair, in configuration order
};

inline void validate_meshes(const std::vector<int>& meshes) {
  if (meshes.empty()) throw ParameterError("no meshes given");
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    if (meshes[i] < 3) throw ParameterError("mesh sizes must be at least 3");
    if (i > 0 && meshes[i] <= meshes[i - 1]) throw ParameterError("mesh sizes must be strictly increasing");
  }
}

inline MeshResult run_mesh(const StudyConfig& cfg, std::size_t i) {
  MeshResult m;
  try {
    m.plan = plan_for_mesh(cfg, i);
    m.initial = initial_density(cfg, grid_for_plan(cfg, m.plan));
  } catch (const std::exception& e) {
    m.error = e.what();
    m.plan.n = cfg.meshes.at(i);
    return m;
  }
  std::set<SolverKind> kinds;
  for (const auto& [a, b] : cfg.pairs) {
    kinds.insert(a);
    kinds.insert(b);
  }
  for (SolverKind k : kinds) {
    try {
      m.outcomes[k] = run_solver(k, cfg, m.plan, m.initial, i);
    } catch (const std::exception& e) {
      SolverOutcome failed;
      failed.kind = k;
      failed.error = e.what();
      m.outcomes[k] = std::move(failed);
    }
  }
  return m;
}

/// Runs every needed solver once per mesh (mesh rows in parallel) and assembles one report per pair.
inline StudyResult run_study(const StudyConfig& cfg, unsigned threads = std::thread::hardware_concurrency()) {
  validate_meshes(cfg.meshes);
  if (cfg.pairs.empty()) throw ParameterError("no solver pairs to compare");
  StudyResult result;
  result.meshes.resize(cfg.meshes.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.meshes.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.meshes.size(); ++i) result.meshes[i] = run_mesh(cfg, i);
  } else {
    // largest meshes first; each worker owns the rows it takes
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const std::size_t count = cfg.meshes.size();
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < count; t = next++) {
          const std::size_t i = count - 1 - t;
          result.meshes[i] = run_mesh(cfg, i);
        }
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& pair : cfg.pairs) {
    ConvergenceReport rep;
    rep.experiment = cfg.name;
    rep.solvers = pair;
    rep.scaling = cfg.scaling;
    rep.lambda = cfg.lambda;
    rep.kappa_policy = cfg.kappa ? "kappa fixed, s_J resolved per mesh" : "s_J fixed, kappa resolved per mesh";
    rep.time_policy = cfg.lbm_steps.empty() ? "steps = round(final_time / dt)" : "prescribed lattice Boltzmann steps";
    for (const auto& m : result.meshes) {
      ReportRow row;
      row.plan = m.plan;
      if (!m.error.empty()) {
        row.status = "failed: " + m.error;
      } else {
        const auto& a = m.outcomes.at(pair.first);
        const auto& b = m.outcomes.at(pair.second);
        row.steps_a = a.steps;
        row.steps_b = b.steps;
        if (!a.ok() || !b.ok()) {
          row.status = "failed: " + (a.ok() ? b.error : a.error);
        } else {
          row.errors = error_norms(a.density, b.density);
          const ErrorNorms ref = field_norms(b.density);
          row.relative = {ref.l2 > 0.0 ? row.errors.l2 / ref.l2 : std::numeric_limits<double>::quiet_NaN(),
                          ref.linf > 0.0 ? row.errors.linf / ref.linf : std::numeric_limits<double>::quiet_NaN()};
          row.trace_a = a.trace;
          row.trace_b = b.trace;
        }
      }
      if (!row.ok()) row.errors = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
      rep.rows.push_back(std::move(row));
    }
    fit_orders(rep);
    result.reports.push_back(std::move(rep));
  }
  return result;
}

/// Single-pair study.
inline ConvergenceReport run_comparison(StudyConfig cfg, SolverKind a, SolverKind b,
                                        unsigned threads = std::thread::hardware_concurrency()) {
  cfg.pairs = {{a, b}};
  return run_study(cfg, threads).reports.front();
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_EXPERIMENTS_HPP_
