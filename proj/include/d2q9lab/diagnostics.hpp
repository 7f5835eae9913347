#ifndef D2Q9LAB_DIAGNOSTICS_HPP_
#define D2Q9LAB_DIAGNOSTICS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/grid.hpp"

namespace d2q9lab {

struct ErrorNorms {
  double l2 = 0.0;    ///< sqrt(sum_cells d^2 dx^2)
  double linf = 0.0;  ///< max_cells |d|
};

inline ErrorNorms error_norms(const ScalarField& a, const ScalarField& b) {
  if (!a.grid.same_as(b.grid)) throw ParameterError("error norms need identical grids");
  double sq = 0.0, mx = 0.0;
  for (std::size_t c = 0; c < a.values.size(); ++c) {
    const double d = std::abs(a.values[c] - b.values[c]);
    sq += d * d;
    mx = std::max(mx, d);
  }
  return {std::sqrt(sq * a.grid.cell_area()), mx};
}

/// Norms of the field itself, used for relative errors.
inline ErrorNorms field_norms(const ScalarField& a) { return error_norms(a, ScalarField(a.grid)); }

/// Gamma(t) = sum rho(t) rho(0) / sum rho(0)^2.
inline double autocorrelation(const ScalarField& rho_t, const ScalarField& rho_0) {
  if (!rho_t.grid.same_as(rho_0.grid)) throw ParameterError("autocorrelation needs identical grids");
  double num = 0.0, den = 0.0;
  for (std::size_t c = 0; c < rho_0.values.size(); ++c) {
    num += rho_t.values[c] * rho_0.values[c];
    den += rho_0.values[c] * rho_0.values[c];
  }
  if (!(den > 0.0)) throw DomainError("autocorrelation undefined for a zero initial field");
  return num / den;
}

/// Least-squares slope of log(error) against log(dx).
inline double convergence_order(std::span<const double> dxs, std::span<const double> errors) {
  if (dxs.size() != errors.size()) throw ParameterError("dx and error lists differ in length");
  if (dxs.size() < 3) throw ParameterError("convergence order needs at least 3 meshes, got " + std::to_string(dxs.size()));
  double sx = 0.0, sy = 0.0;
  const double n = static_cast<double>(dxs.size());
  for (std::size_t i = 0; i < dxs.size(); ++i) {
    if (!(dxs[i] > 0.0)) throw ParameterError("mesh sizes must be positive");
    if (!(errors[i] > 0.0)) throw ParameterError("errors must be positive to fit an order, got " + std::to_string(errors[i]));
    sx += std::log(dxs[i]);
    sy += std::log(errors[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < dxs.size(); ++i) {
    const double u = std::log(dxs[i]) - mx;
    sxy += u * (std::log(errors[i]) - my);
    sxx += u * u;
  }
  if (!(sxx > 0.0)) throw ParameterError("mesh sizes must not all coincide");
  return sxy / sxx;
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_DIAGNOSTICS_HPP_
