#ifndef D2Q9LAB_HAWAY_HPP_
#define D2Q9LAB_HAWAY_HPP_

#include <cmath>
#include <string>
#include <utility>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/grid.hpp"

namespace d2q9lab {

/// Staggered (HaWAY) state of the damped acoustic system
///   d_t rho + div J = 0,   d_t J + c0^2 grad rho + g J = 0.
///
/// rho sits at cell centers. jx(i, j) lives on the x-face at (x0 + i dx, y_center(j)),
/// jy(i, j) on the y-face at (x_center(i), y0 + j dx). Once staggered, the
/// momenta lag the density by half a step: rho at t, J at t - dt/2.
struct StaggeredState {
  ScalarField rho;
  ScalarField jx;
  ScalarField jy;
  double c0 = 1.0;
  double g = 0.0;
  double time = 0.0;
  bool staggered = false;

  /// Density and momenta all given at t = 0.
  static StaggeredState initial(ScalarField rho0, ScalarField jx0, ScalarField jy0, double c0, double g) {
    if (!(c0 > 0.0)) throw ParameterError("sound speed must be positive");
    if (!(g >= 0.0)) throw ParameterError("damping rate must be non-negative");
    if (!rho0.grid.same_as(jx0.grid) || !rho0.grid.same_as(jy0.grid))
      throw ParameterError("density and momentum grids differ");
    return StaggeredState{std::move(rho0), std::move(jx0), std::move(jy0), c0, g, 0.0, false};
  }

  /// Density at t = 0 with J = 0.
  static StaggeredState at_rest(ScalarField rho0, double c0, double g) {
    ScalarField zero(rho0.grid);
    return initial(std::move(rho0), zero, zero, c0, g);
  }
};

/// dt = safety dx / (c0 sqrt 2).
inline double haway_stable_dt(double c0, double dx, double safety = 1.0) {
  if (!(c0 > 0.0) || !(dx > 0.0)) throw ParameterError("c0 and dx must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw ParameterError("safety factor must lie in (0, 1]");
  return safety * dx / (c0 * std::sqrt(2.0));
}

/// Four HaWAY steps per lattice Boltzmann step.
inline double haway_dt_from_lbm(double dt_lbm) { return dt_lbm / 4.0; }

inline void haway_check_cfl(const StaggeredState& s, double dt) {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  const double bound = s.rho.grid.dx / (s.c0 * std::sqrt(2.0));
  if (dt > bound * (1.0 + 1e-12))
    throw StabilityError("HaWAY step dt = " + std::to_string(dt) + " exceeds CFL bound " + std::to_string(bound),
                         bound);
}

/// Advance in place by dt: momenta from the current density, then density from the new fluxes.
/// The first call on a non-staggered state uses a half step for the momenta.
inline void haway_advance(StaggeredState& s, double dt) {
  haway_check_cfl(s, dt);
  const CellGrid& grid = s.rho.grid;
  const int nx = grid.nx, ny = grid.ny;
  const double h = s.staggered ? dt : 0.5 * dt;
  const double a = 1.0 / h + 0.5 * s.g;
  const double b = 1.0 / h - 0.5 * s.g;
  const double grad = s.c0 * s.c0 / grid.dx;
  const double* rho = s.rho.values.data();
  double* jx = s.jx.values.data();
  double* jy = s.jy.values.data();

  for (int j = 0; j < ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const std::size_t below = static_cast<std::size_t>(j == 0 ? ny - 1 : j - 1) * nx;
    for (int i = 0; i < nx; ++i) {
      const int im = i == 0 ? nx - 1 : i - 1;
      jx[row + i] = (b * jx[row + i] - grad * (rho[row + i] - rho[row + im])) / a;
      jy[row + i] = (b * jy[row + i] - grad * (rho[row + i] - rho[below + i])) / a;
    }
  }

  const double div = dt / grid.dx;
  double* r = s.rho.values.data();
  for (int j = 0; j < ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const std::size_t above = static_cast<std::size_t>(j + 1 == ny ? 0 : j + 1) * nx;
    for (int i = 0; i < nx; ++i) {
      const int ip = i + 1 == nx ? 0 : i + 1;
      r[row + i] -= div * (jx[row + ip] - jx[row + i] + jy[above + i] - jy[row + i]);
    }
  }
  s.staggered = true;
  s.time += dt;
}

inline StaggeredState haway_step(StaggeredState s, double dt) {
  haway_advance(s, dt);
  return s;
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_HAWAY_HPP_
