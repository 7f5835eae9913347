#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "d2q9lab/diagnostics.hpp"
#include "d2q9lab/haway.hpp"
#include "d2q9lab/heat_fd.hpp"
#include "d2q9lab/spectral.hpp"

using namespace d2q9lab;

namespace {

ScalarField random_field(const CellGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(g);
  for (double& v : f.values) v = u(rng);
  return f;
}

/// Samples an exact damped acoustic eigenmode on the staggered layout.
StaggeredState eigenmode_state(const CellGrid& grid, const WaveVector& k, double c0, double g) {
  ScalarField rho(grid), jx(grid), jy(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      rho(i, j) = exact_mode_solution(grid.x_center(i), grid.y_center(j), 0.0, k, c0, g, 1.0, Branch::Plus).rho;
      jx(i, j) = exact_mode_solution(grid.x_face(i), grid.y_center(j), 0.0, k, c0, g, 1.0, Branch::Plus).jx;
      jy(i, j) = exact_mode_solution(grid.x_center(i), grid.y_face(j), 0.0, k, c0, g, 1.0, Branch::Plus).jy;
    }
  return StaggeredState::initial(rho, jx, jy, c0, g);
}

double fourier_amplitude(const ScalarField& f, const WaveVector& k) {
  double c = 0.0, s = 0.0;
  const CellGrid& g = f.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double ph = k.kx * g.x_center(i) + k.ky * g.y_center(j);
      c += f(i, j) * std::cos(ph);
      s += f(i, j) * std::sin(ph);
    }
  return 2.0 * std::hypot(c, s) / static_cast<double>(g.size());
}

}  // namespace

TEST(HeatFd, ConstantFieldUnchanged) {
  const ScalarField c(CellGrid::square(8, 0, 1), 3.25);
  const auto out = heat_fd_step(c, 0.1, heat_fd_stable_dt(0.1, c.grid.dx));
  for (double v : out.values) EXPECT_DOUBLE_EQ(v, 3.25);
}

TEST(HeatFd, ImpulseSpreadsByTheStencil) {
  const CellGrid g = CellGrid::square(7, 0, 7);
  ScalarField f(g);
  f(3, 3) = 1.0;
  const double kappa = 0.5, dt = g.dx * g.dx / (8.0 * kappa);  // kappa dt / dx^2 = 1/8
  const auto out = heat_fd_step(f, kappa, dt);
  EXPECT_DOUBLE_EQ(out(3, 3), 0.5);
  EXPECT_DOUBLE_EQ(out(2, 3), 0.125);
  EXPECT_DOUBLE_EQ(out(4, 3), 0.125);
  EXPECT_DOUBLE_EQ(out(3, 2), 0.125);
  EXPECT_DOUBLE_EQ(out(3, 4), 0.125);
  EXPECT_EQ(out(2, 2), 0.0);
  EXPECT_EQ(out(0, 0), 0.0);
}

TEST(HeatFd, FourierModeDecaysByDiscreteSymbol) {
  const int n = 16;
  const CellGrid g = CellGrid::square(n, 0, 2.0 * std::numbers::pi);
  const WaveVector k{3, 2};
  const auto f = ScalarField::sample(g, [&](double x, double y) { return std::cos(k.kx * x + k.ky * y); });
  const double kappa = 0.2, dt = 0.7 * heat_fd_stable_dt(kappa, g.dx);
  const double r = kappa * dt / (g.dx * g.dx);
  const double factor =
      1.0 - 4.0 * r * (std::pow(std::sin(k.kx * g.dx / 2), 2) + std::pow(std::sin(k.ky * g.dx / 2), 2));
  const auto out = heat_fd_step(f, kappa, dt);
  for (std::size_t c = 0; c < f.values.size(); ++c) EXPECT_NEAR(out.values[c], factor * f.values[c], 1e-13);
}

TEST(HeatFd, StableStepFormula) {
  EXPECT_DOUBLE_EQ(heat_fd_stable_dt(1.0, 2.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(heat_fd_stable_dt(0.3, 0.2, 0.5) * 4.0, heat_fd_stable_dt(0.3, 0.4, 0.5));
  // printed 512 heat steps for the 111 mesh at t = 0.17741 are inside the bound
  EXPECT_LE(0.17741 / 512.0, heat_fd_stable_dt(1.0 / 18.0, 2.0 / 111.0));
  EXPECT_THROW(heat_fd_stable_dt(1.0, 1.0, 0.0), ParameterError);
  EXPECT_THROW(heat_fd_stable_dt(1.0, 1.0, 1.5), ParameterError);
}

TEST(HeatFd, UnstableStepRejectedWithBound) {
  const ScalarField f(CellGrid::square(8, 0, 1), 1.0);
  const double bound = heat_fd_stable_dt(0.1, f.grid.dx);
  try {
    HeatFdSolver(f, 0.1, 1.01 * bound);
    FAIL() << "expected a stability error";
  } catch (const StabilityError& e) {
    EXPECT_DOUBLE_EQ(e.bound(), bound);
  }
  EXPECT_THROW(HeatFdSolver(ScalarField(CellGrid::square(2, 0, 1)), 0.1, 1e-4), ParameterError);
}

TEST(HeatFd, ConservesMassAndObeysMaximumPrinciple) {
  auto f = random_field(CellGrid{9, 6, 0.1, 0, 0}, 17);
  const double m0 = f.sum(), lo = f.min(), hi = f.max();
  HeatFdSolver solver(f, 0.3, heat_fd_stable_dt(0.3, 0.1));
  for (int n = 0; n < 200; ++n) {
    solver.step();
    EXPECT_GE(solver.field().min(), lo - 1e-15);
    EXPECT_LE(solver.field().max(), hi + 1e-15);
  }
  EXPECT_LT(std::abs(solver.field().sum() - m0), 1e-12 * std::max(1.0, std::abs(m0)));
}

TEST(Haway, StableStepFormula) {
  EXPECT_DOUBLE_EQ(haway_stable_dt(1.0 / std::sqrt(3.0), 1.0), std::sqrt(3.0) / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(haway_stable_dt(0.5, 0.1) / 2.0, haway_stable_dt(0.5, 0.05));
  // 32 lattice steps against 128 staggered steps for the 55 mesh
  const double dt_lbm = (2.0 / 55.0) / 6.5;
  EXPECT_DOUBLE_EQ(haway_dt_from_lbm(dt_lbm), dt_lbm / 4.0);
  EXPECT_DOUBLE_EQ(32 * dt_lbm, 128 * haway_dt_from_lbm(dt_lbm));
}

TEST(Haway, RestStateIsStationary) {
  const ScalarField rho(CellGrid::square(6, 0, 1), 2.0);
  auto s = StaggeredState::at_rest(rho, 0.5, 3.0);
  const double dt = haway_stable_dt(0.5, rho.grid.dx);
  for (int n = 0; n < 10; ++n) haway_advance(s, dt);
  for (double v : s.rho.values) EXPECT_EQ(v, 2.0);
  for (double v : s.jx.values) EXPECT_EQ(v, 0.0);
  EXPECT_NEAR(s.time, 10 * dt, 1e-14);
}

TEST(Haway, UniformFluxDampsByTheTrapezoidalFactor) {
  const CellGrid grid = CellGrid::square(5, 0, 1);
  const double c0 = 1.0, g = 4.0, dt = 0.05;
  auto s = StaggeredState::initial(ScalarField(grid, 1.0), ScalarField(grid, 1.0), ScalarField(grid), c0, g);
  // first call: half step from t = 0 to dt/2
  haway_advance(s, dt);
  const double startup = (2.0 / dt - g / 2.0) / (2.0 / dt + g / 2.0);
  for (double v : s.jx.values) EXPECT_NEAR(v, startup, 1e-15);
  const double factor = (1.0 / dt - g / 2.0) / (1.0 / dt + g / 2.0);
  for (int n = 1; n <= 3; ++n) {
    haway_advance(s, dt);
    for (double v : s.jx.values) EXPECT_NEAR(v, startup * std::pow(factor, n), 1e-14);
  }
  for (double v : s.rho.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Haway, CflViolationRejected) {
  auto s = StaggeredState::at_rest(ScalarField(CellGrid::square(6, 0, 1), 1.0), 1.0, 0.0);
  const double bound = haway_stable_dt(1.0, 1.0 / 6.0);
  EXPECT_THROW(haway_advance(s, 1.001 * bound), StabilityError);
  EXPECT_NO_THROW(haway_advance(s, bound));
  EXPECT_THROW(StaggeredState::at_rest(ScalarField(CellGrid::square(6, 0, 1)), 0.0, 1.0), ParameterError);
  EXPECT_THROW(StaggeredState::at_rest(ScalarField(CellGrid::square(6, 0, 1)), 1.0, -1.0), ParameterError);
}

TEST(Haway, ConservesMass) {
  const CellGrid grid{11, 7, 0.2, 0, 0};
  auto s = StaggeredState::initial(random_field(grid, 1), random_field(grid, 2), random_field(grid, 3), 0.8, 2.0);
  const double m0 = s.rho.sum();
  const double dt = haway_stable_dt(0.8, grid.dx, 0.9);
  for (int n = 0; n < 500; ++n) haway_advance(s, dt);
  EXPECT_LT(std::abs(s.rho.sum() - m0), 1e-12 * std::max(1.0, std::abs(m0)));
}

TEST(Haway, UndampedWaveKeepsItsAmplitude) {
  // 64 points per wavelength, one period of the leapfrog at half the CFL step
  const int n = 64;
  const CellGrid grid = CellGrid::square(n, 0, 2.0 * std::numbers::pi);
  const WaveVector k{1, 0};
  const double c0 = 1.0 / std::sqrt(3.0);
  auto s = eigenmode_state(grid, k, c0, 0.0);
  const double period = 2.0 * std::numbers::pi / (c0 * k.norm());
  const int steps = static_cast<int>(std::ceil(period / haway_stable_dt(c0, grid.dx, 0.5)));
  for (int q = 0; q < steps; ++q) haway_advance(s, period / steps);
  EXPECT_NEAR(fourier_amplitude(s.rho, k), 1.0, 1e-3);
}

TEST(Haway, SecondOrderAgainstExactEigenmode) {
  const WaveVector k{1, 1};
  const double c0 = 1.0 / std::sqrt(3.0), g = 1.0, t_final = 1.0;
  std::vector<double> dxs, errs;
  for (int n : {16, 32, 64}) {
    const CellGrid grid = CellGrid::square(n, 0, 2.0 * std::numbers::pi);
    auto s = eigenmode_state(grid, k, c0, g);
    const int steps = static_cast<int>(std::ceil(t_final / haway_stable_dt(c0, grid.dx, 0.5)));
    for (int q = 0; q < steps; ++q) haway_advance(s, t_final / steps);
    const auto exact = ScalarField::sample(grid, [&](double x, double y) {
      return exact_mode_solution(x, y, t_final, k, c0, g, 1.0, Branch::Plus).rho;
    });
    dxs.push_back(grid.dx);
    errs.push_back(error_norms(s.rho, exact).l2);
  }
  EXPECT_NEAR(convergence_order(dxs, errs), 2.0, 0.3);
}
