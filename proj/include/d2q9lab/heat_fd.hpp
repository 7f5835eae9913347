#ifndef D2Q9LAB_HEAT_FD_HPP_
#define D2Q9LAB_HEAT_FD_HPP_

#include <cmath>
#include <string>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/grid.hpp"

namespace d2q9lab {

/// Largest explicit step scaled by safety: dt = safety dx^2 / (4 kappa).
inline double heat_fd_stable_dt(double kappa, double dx, double safety = 1.0) {
  if (!(kappa > 0.0) || !(dx > 0.0)) throw ParameterError("kappa and dx must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw ParameterError("safety factor must lie in (0, 1]");
  return safety * dx * dx / (4.0 * kappa);
}

/// Explicit five-point heat scheme on the cell centers of a periodic grid.
class HeatFdSolver {
public:
  HeatFdSolver(ScalarField rho, double kappa, double dt) : rho_(std::move(rho)), next_(rho_), kappa_(kappa), dt_(dt) {
    if (rho_.grid.nx < 3 || rho_.grid.ny < 3) throw ParameterError("heat stencil needs at least 3 cells per direction");
    if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
    if (!(dt > 0.0)) throw ParameterError("dt must be positive");
    const double bound = rho_.grid.dx * rho_.grid.dx / (4.0 * kappa);
    if (dt > bound * (1.0 + 1e-12))
      throw StabilityError("explicit heat step dt = " + std::to_string(dt) + " exceeds stability bound " +
                               std::to_string(bound),
                           bound);
  }

  const ScalarField& field() const noexcept { return rho_; }
  double time() const noexcept { return time_; }
  double dt() const noexcept { return dt_; }

  void step() {
    const CellGrid& g = rho_.grid;
    const double r = kappa_ * dt_ / (g.dx * g.dx);
    const int nx = g.nx, ny = g.ny;
    const double* u = rho_.values.data();
    double* v = next_.values.data();
    for (int j = 0; j < ny; ++j) {
      const double* row = u + static_cast<std::size_t>(j) * nx;
      const double* up = u + static_cast<std::size_t>(j + 1 == ny ? 0 : j + 1) * nx;
      const double* dn = u + static_cast<std::size_t>(j == 0 ? ny - 1 : j - 1) * nx;
      double* out = v + static_cast<std::size_t>(j) * nx;
      out[0] = row[0] + r * (row[1] + row[nx - 1] + up[0] + dn[0] - 4.0 * row[0]);
      for (int i = 1; i < nx - 1; ++i)
        out[i] = row[i] + r * (row[i + 1] + row[i - 1] + up[i] + dn[i] - 4.0 * row[i]);
      out[nx - 1] = row[nx - 1] + r * (row[0] + row[nx - 2] + up[nx - 1] + dn[nx - 1] - 4.0 * row[nx - 1]);
    }
    std::swap(rho_.values, next_.values);
    time_ += dt_;
  }

  void advance(int steps) {
    for (int n = 0; n < steps; ++n) step();
  }

private:
  ScalarField rho_;
  ScalarField next_;
  double kappa_;
  double dt_;
  double time_ = 0.0;
};

/// rho^{n+1} = rho^n + kappa dt / dx^2 * (five-point Laplacian), periodic.
inline ScalarField heat_fd_step(const ScalarField& rho, double kappa, double dt) {
  HeatFdSolver solver(rho, kappa, dt);
  solver.step();
  return solver.field();
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_HEAT_FD_HPP_
