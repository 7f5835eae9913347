#ifndef D2Q9LAB_GRID_HPP_
#define D2Q9LAB_GRID_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "d2q9lab/errors.hpp"

namespace d2q9lab {

/// Periodic Cartesian mesh of square cells. Cell (i, j) is centered at
/// (x0 + (i + 1/2) dx, y0 + (j + 1/2) dx).
struct CellGrid {
  int nx = 0;
  int ny = 0;
  double dx = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;

  static CellGrid square(int n, double lo, double hi) {
    if (n <= 0) throw ParameterError("cell count must be positive, got " + std::to_string(n));
    if (!(hi > lo)) throw ParameterError("empty domain");
    return CellGrid{n, n, (hi - lo) / n, lo, lo};
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  int wrap_x(int i) const noexcept { return ((i % nx) + nx) % nx; }
  int wrap_y(int j) const noexcept { return ((j % ny) + ny) % ny; }

  double x_center(int i) const noexcept { return x0 + (i + 0.5) * dx; }
  double y_center(int j) const noexcept { return y0 + (j + 0.5) * dx; }
  double x_face(int i) const noexcept { return x0 + i * dx; }
  double y_face(int j) const noexcept { return y0 + j * dx; }
  double width() const noexcept { return nx * dx; }
  double height() const noexcept { return ny * dx; }
  double cell_area() const noexcept { return dx * dx; }
  double area() const noexcept { return width() * height(); }

  bool same_as(const CellGrid& o) const noexcept {
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
    return nx == o.nx && ny == o.ny && close(dx, o.dx) && close(x0, o.x0) && close(y0, o.y0);
  }

  friend bool operator==(const CellGrid&, const CellGrid&) = default;
};

/// Cell-centered scalar values on a periodic grid.
struct ScalarField {
  CellGrid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const CellGrid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

  template <class Fn>
  static ScalarField sample(const CellGrid& g, Fn&& fn) {
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out(i, j) = fn(g.x_center(i), g.y_center(j));
    return out;
  }

  double& operator()(int i, int j) noexcept { return values[grid.index(i, j)]; }
  double operator()(int i, int j) const noexcept { return values[grid.index(i, j)]; }

  double sum() const noexcept {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  double max() const noexcept {
    double m = -HUGE_VAL;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  double min() const noexcept {
    double m = HUGE_VAL;
    for (double v : values) m = std::min(m, v);
    return m;
  }
};

/// Geometry plus time step of a lattice Boltzmann run; lambda = dx / dt.
struct LatticeSpec {
  CellGrid grid;
  double dt = 1.0;
  double lambda = 1.0;

  static LatticeSpec make(const CellGrid& g, double dt) {
    if (g.nx < 3 || g.ny < 3) throw ParameterError("lattice needs at least 3 cells per direction");
    if (!(g.dx > 0.0) || !(dt > 0.0)) throw ParameterError("dx and dt must be positive");
    return LatticeSpec{g, dt, g.dx / dt};
  }

  static LatticeSpec with_velocity(const CellGrid& g, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("lattice velocity must be positive");
    auto spec = make(g, g.dx / lambda);
    spec.lambda = lambda;
    return spec;
  }

  bool consistent() const noexcept { return std::abs(lambda * dt - grid.dx) <= 1e-12 * grid.dx; }
};

}  // namespace d2q9lab

#endif  // D2Q9LAB_GRID_HPP_
