#ifndef D2Q9LAB_LATTICE_HPP_
#define D2Q9LAB_LATTICE_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/grid.hpp"
#include "d2q9lab/moments.hpp"

namespace d2q9lab {

/// Nine populations per cell, cells row-major (i fastest), populations contiguous.
template <class T>
class PopulationGrid {
public:
  using value_type = T;

  PopulationGrid() = default;
  explicit PopulationGrid(const LatticeSpec& spec) : spec_(spec), f_(spec.grid.size() * kQ, T{}) {}

  const LatticeSpec& spec() const noexcept { return spec_; }
  const CellGrid& grid() const noexcept { return spec_.grid; }
  std::size_t cells() const noexcept { return spec_.grid.size(); }

  T& operator()(int i, int j, int q) noexcept { return f_[spec_.grid.index(i, j) * kQ + q]; }
  const T& operator()(int i, int j, int q) const noexcept { return f_[spec_.grid.index(i, j) * kQ + q]; }

  T* cell(std::size_t c) noexcept { return f_.data() + c * kQ; }
  const T* cell(std::size_t c) const noexcept { return f_.data() + c * kQ; }

  std::vector<T>& data() noexcept { return f_; }
  const std::vector<T>& data() const noexcept { return f_; }

  T density(int i, int j) const noexcept {
    const T* c = cell(spec_.grid.index(i, j));
    T rho{};
    for (int q = 0; q < kQ; ++q) rho += c[q];
    return rho;
  }

  T total_mass() const noexcept {
    T sum{};
    for (const T& v : f_) sum += v;
    return sum;
  }

  void swap(PopulationGrid& other) noexcept {
    std::swap(spec_, other.spec_);
    f_.swap(other.f_);
  }

private:
  LatticeSpec spec_{};
  std::vector<T> f_;
};

/// Advection f_j(x) <- f_j(x - e_j dx), periodic. Pure permutation of storage.
template <class T>
void stream_into(const PopulationGrid<T>& in, PopulationGrid<T>& out) {
  const CellGrid& g = in.grid();
  for (int j = 0; j < g.ny; ++j) {
    // source rows for e_y = -1, 0, +1
    const std::array<int, 3> rows{g.wrap_y(j + 1), j, g.wrap_y(j - 1)};
    for (int i = 0; i < g.nx; ++i) {
      const std::array<int, 3> cols{g.wrap_x(i + 1), i, g.wrap_x(i - 1)};
      T* dst = out.cell(g.index(i, j));
      for (int q = 0; q < kQ; ++q) dst[q] = in.cell(g.index(cols[kEx[q] + 1], rows[kEy[q] + 1]))[q];
    }
  }
}

template <class T>
PopulationGrid<T> stream(const PopulationGrid<T>& in) {
  PopulationGrid<T> out(in.spec());
  stream_into(in, out);
  return out;
}

namespace detail {

template <class T>
void collide_cells(const Matrix9& c, PopulationGrid<T>& g) {
  const std::size_t n = g.cells();
  std::array<T, kQ> f;
  for (std::size_t cell = 0; cell < n; ++cell) {
    T* p = g.cell(cell);
    for (int q = 0; q < kQ; ++q) f[q] = p[q];
    for (int q = 0; q < kQ; ++q) {
      T acc{};
      for (int r = 0; r < kQ; ++r) acc += c(q, r) * f[r];
      p[q] = acc;
    }
  }
}

inline void check_lambda(const LatticeSpec& spec, const SchemeParams& p) {
  if (std::abs(spec.lambda - p.lambda) > 1e-12 * std::max(spec.lambda, p.lambda))
    throw ParameterError("lattice velocity mismatch: grid has " + std::to_string(spec.lambda) + ", scheme has " +
                         std::to_string(p.lambda));
}

}  // namespace detail

/// Repeated collide-and-stream with the collision matrix and scratch storage kept alive.
template <class T>
class LbmStepper {
public:
  explicit LbmStepper(const SchemeParams& params) : params_(params), collision_(collision_matrix(params)) {
    params_.validate();
  }

  const SchemeParams& params() const noexcept { return params_; }
  const Matrix9& collision() const noexcept { return collision_; }

  void step(PopulationGrid<T>& g) {
    detail::check_lambda(g.spec(), params_);
    if (scratch_.cells() != g.cells()) scratch_ = PopulationGrid<T>(g.spec());
    detail::collide_cells(collision_, g);
    stream_into(g, scratch_);
    g.swap(scratch_);
  }

  void advance(PopulationGrid<T>& g, int steps) {
    for (int n = 0; n < steps; ++n) step(g);
  }

private:
  SchemeParams params_;
  Matrix9 collision_;
  PopulationGrid<T> scratch_;
};

/// One time step: relaxation in moment space then streaming.
template <class T>
PopulationGrid<T> lbm_step(PopulationGrid<T> g, const SchemeParams& p) {
  LbmStepper<T> stepper(p);
  stepper.step(g);
  return g;
}

/// Per-cell collision through explicit moments (m = M f, relax, f = M^-1 m*).
/// Reference path for the fused collision matrix.
inline Vector9 collide_via_moments(const Vector9& f, const SchemeParams& p) {
  const auto& basis = moment_basis(p.lambda);
  return populations_from_moments(relax_moments(moments_from_populations(f, basis), p), basis);
}

/// Equilibrium populations for the sampled density: zero momentum, rho = rho0.
inline PopulationGrid<double> init_equilibrium(const ScalarField& rho0, const SchemeParams& p) {
  PopulationGrid<double> g(LatticeSpec::with_velocity(rho0.grid, p.lambda));
  const auto& basis = moment_basis(p.lambda);
  const Vector9 unit = basis.m_inv * p.equilibrium_coefficients();
  for (std::size_t c = 0; c < g.cells(); ++c) {
    double* f = g.cell(c);
    for (int q = 0; q < kQ; ++q) f[q] = unit[q] * rho0.values[c];
  }
  return g;
}

/// rho = sum_j f_j in every cell.
inline ScalarField density_field(const PopulationGrid<double>& g) {
  ScalarField out(g.grid());
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const double* f = g.cell(c);
    double rho = 0.0;
    for (int q = 0; q < kQ; ++q) rho += f[q];
    out.values[c] = rho;
  }
  return out;
}

/// Moment vector of one cell.
template <class T>
Eigen::Matrix<T, kQ, 1> cell_moments(const PopulationGrid<T>& g, int i, int j, const MomentBasis& basis) {
  Eigen::Matrix<T, kQ, 1> f;
  for (int q = 0; q < kQ; ++q) f[q] = g(i, j, q);
  return basis.m.template cast<T>() * f;
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_LATTICE_HPP_
