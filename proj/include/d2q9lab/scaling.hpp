#ifndef D2Q9LAB_SCALING_HPP_
#define D2Q9LAB_SCALING_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "d2q9lab/errors.hpp"

namespace d2q9lab {

enum class ScalingKind {
  Diffusive,  ///< dt = dx^2 / lambda_ref, so lambda = lambda_ref / dx
  Acoustic,   ///< dt = dx / lambda
};

inline std::string_view to_string(ScalingKind k) { return k == ScalingKind::Diffusive ? "diffusive" : "acoustic"; }

inline std::optional<ScalingKind> parse_scaling_kind(std::string_view s) {
  if (s == "diffusive") return ScalingKind::Diffusive;
  if (s == "acoustic") return ScalingKind::Acoustic;
  return std::nullopt;
}

/// sigma = 1/s - 1/2.
inline double henon_sigma(double s) {
  if (!(s > 0.0 && s <= 2.0)) throw ParameterError("relaxation rate " + std::to_string(s) + " outside (0, 2]");
  return 1.0 / s - 0.5;
}

namespace detail {
inline void check_alpha(double alpha) {
  if (!(alpha > -4.0 && alpha < 2.0)) throw ParameterError("alpha must lie in (-4, 2), got " + std::to_string(alpha));
}
inline void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(name) + " must be positive and finite");
}
}  // namespace detail

/// kappa = (4 + alpha)/6 * sigma(sJ) * lambda * dx.
inline double diffusivity(double s_j, double lambda, double dx, double alpha) {
  detail::check_positive(lambda, "lambda");
  detail::check_positive(dx, "dx");
  detail::check_alpha(alpha);
  return (4.0 + alpha) / 6.0 * henon_sigma(s_j) * lambda * dx;
}

/// Exact inverse of diffusivity() in s_J.
inline double sJ_for_diffusivity(double kappa, double lambda, double dx, double alpha) {
  detail::check_positive(lambda, "lambda");
  detail::check_positive(dx, "dx");
  detail::check_alpha(alpha);
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw InfeasibleError("diffusivity " + std::to_string(kappa) + " needs s_J >= 2 (violates upper bound s_J < 2)");
  const double sigma = 6.0 * kappa / ((4.0 + alpha) * lambda * dx);
  const double s = 1.0 / (sigma + 0.5);
  if (!(s > 0.0)) throw InfeasibleError("s_J underflows the lower bound s_J > 0 for kappa " + std::to_string(kappa));
  if (!(s < 2.0)) throw InfeasibleError("s_J = " + std::to_string(s) + " violates the upper bound s_J < 2");
  return s;
}

/// Resolved parameters of one mesh of a refinement study.
struct ExperimentPlan {
  int n = 0;
  ScalingKind kind = ScalingKind::Acoustic;
  double extent = 2.0;
  double dx = 0.0;
  double dt = 0.0;
  double lambda = 0.0;
  double alpha = -2.0;
  double kappa = 0.0;
  double s_j = 0.0;
  int steps = 0;
  double final_time = 0.0;
};

/// Mesh spacing, time step and lattice velocity for one scaling convention.
struct MeshTiming {
  double dx, dt, lambda;
};

inline MeshTiming mesh_timing(int n, ScalingKind kind, double lambda_ref, double extent) {
  if (n <= 0) throw ParameterError("mesh size must be positive");
  detail::check_positive(lambda_ref, "reference velocity");
  detail::check_positive(extent, "domain extent");
  const double dx = extent / n;
  const double dt = kind == ScalingKind::Acoustic ? dx / lambda_ref : dx * dx / lambda_ref;
  return {dx, dt, dx / dt};
}

namespace detail {
inline ExperimentPlan finish_plan(int n, ScalingKind kind, double extent, const MeshTiming& mt, double alpha,
                                  std::optional<double> kappa, std::optional<double> s_j, int steps) {
  ExperimentPlan p;
  p.n = n;
  p.kind = kind;
  p.extent = extent;
  p.dx = mt.dx;
  p.dt = mt.dt;
  p.lambda = mt.lambda;
  p.alpha = alpha;
  if (kappa) {
    p.kappa = *kappa;
    p.s_j = sJ_for_diffusivity(*kappa, mt.lambda, mt.dx, alpha);
  } else if (s_j) {
    if (!(*s_j > 0.0 && *s_j < 2.0)) throw InfeasibleError("s_J = " + std::to_string(*s_j) + " outside (0, 2)");
    p.s_j = *s_j;
    p.kappa = diffusivity(*s_j, mt.lambda, mt.dx, alpha);
  } else {
    throw ParameterError("either kappa or s_J must be given");
  }
  if (steps < 1) throw ParameterError("a plan needs at least one time step");
  p.steps = steps;
  p.final_time = steps * mt.dt;
  return p;
}
}  // namespace detail

/// Plan for target final time: steps = round(T / dt), final_time = steps * dt.
/// Exactly one of kappa (s_J derived) or s_j (kappa derived) is used.
inline ExperimentPlan resolve_plan(int n, ScalingKind kind, std::optional<double> kappa, double alpha,
                                   double lambda_ref, double target_final_time, double extent = 2.0,
                                   std::optional<double> s_j = std::nullopt) {
  detail::check_positive(target_final_time, "target final time");
  const MeshTiming mt = mesh_timing(n, kind, lambda_ref, extent);
  const int steps = std::max(1, static_cast<int>(std::lround(target_final_time / mt.dt)));
  return detail::finish_plan(n, kind, extent, mt, alpha, kappa, s_j, steps);
}

/// Plan with a prescribed step count.
inline ExperimentPlan resolve_plan_with_steps(int n, ScalingKind kind, std::optional<double> kappa, double alpha,
                                              double lambda_ref, int steps, double extent = 2.0,
                                              std::optional<double> s_j = std::nullopt) {
  const MeshTiming mt = mesh_timing(n, kind, lambda_ref, extent);
  return detail::finish_plan(n, kind, extent, mt, alpha, kappa, s_j, steps);
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_SCALING_HPP_
