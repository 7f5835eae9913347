#ifndef D2Q9LAB_MOMENTS_HPP_
#define D2Q9LAB_MOMENTS_HPP_

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "d2q9lab/errors.hpp"

namespace d2q9lab {

inline constexpr int kQ = 9;

using Matrix9 = Eigen::Matrix<double, kQ, kQ, Eigen::RowMajor>;
using Vector9 = Eigen::Matrix<double, kQ, 1>;

/// Lattice directions e_j in the column order of the moment matrix:
/// rest, +x, +y, -x, -y, (1,1), (-1,1), (-1,-1), (1,-1).
inline constexpr std::array<int, kQ> kEx{0, 1, 0, -1, 0, 1, -1, -1, 1};
inline constexpr std::array<int, kQ> kEy{0, 0, 1, 0, -1, 1, 1, -1, -1};

/// Population index of the mirror image under x <-> y.
inline constexpr std::array<int, kQ> kTransposed{0, 2, 1, 4, 3, 5, 8, 7, 6};

/// Moment indices: rho, Jx, Jy, energy, xx, xy, qx, qy, epsilon.
enum Moment : int { kRho = 0, kJx, kJy, kEnergy, kXX, kXY, kQx, kQy, kEpsilon };

/// The fixed 9x9 map m = M f for lattice velocity lambda.
inline Matrix9 build_moment_matrix(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterError("moment matrix needs a positive lattice velocity, got " + std::to_string(lambda));
  const double l = lambda, l2 = l * l, l3 = l2 * l, l4 = l2 * l2;
  Matrix9 m;
  // clang-format off
  m <<      1,     1,     1,     1,     1,    1,    1,    1,    1,
            0,     l,     0,    -l,     0,    l,   -l,   -l,    l,
            0,     0,     l,     0,    -l,    l,    l,   -l,   -l,
      -4 * l2,   -l2,   -l2,   -l2,   -l2, 2*l2, 2*l2, 2*l2, 2*l2,
            0,    l2,   -l2,    l2,   -l2,    0,    0,    0,    0,
            0,     0,     0,     0,     0,   l2,  -l2,   l2,  -l2,
            0, -2*l3,     0,  2*l3,     0,   l3,  -l3,  -l3,   l3,
            0,     0, -2*l3,     0,  2*l3,   l3,   l3,  -l3,  -l3,
       4 * l4, -2*l4, -2*l4, -2*l4, -2*l4,   l4,   l4,   l4,   l4;
  // clang-format on
  return m;
}

/// M together with its numerically computed inverse.
struct MomentBasis {
  double lambda;
  Matrix9 m;
  Matrix9 m_inv;

  explicit MomentBasis(double lam) : lambda(lam), m(build_moment_matrix(lam)) {
    Eigen::PartialPivLU<Eigen::Matrix<double, kQ, kQ>> lu(m);
    m_inv = lu.inverse();
  }
};

/// Cached basis for a given lambda; safe to call from several threads.
inline const MomentBasis& moment_basis(double lambda) {
  static std::mutex mutex;
  static std::map<double, std::unique_ptr<MomentBasis>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(lambda);
  if (it == cache.end()) it = cache.emplace(lambda, std::make_unique<MomentBasis>(lambda)).first;
  return *it->second;
}

/// Equilibrium coefficients, relaxation rates and lattice velocity of one scheme.
struct SchemeParams {
  double alpha = -2.0;
  double beta = 1.0;
  /// (s_J, s_J, s_e, s_x, s_x, s_q, s_q, s_eps) acting on moments 1..8.
  std::array<double, 8> s{1.0, 1.0, 1.7, 1.1, 1.1, 1.1, 1.1, 1.7};
  double lambda = 1.0;

  static SchemeParams make(double s_j, double lambda, double alpha = -2.0, double beta = 1.0, double s_e = 1.7,
                           double s_x = 1.1, double s_q = 1.1, double s_eps = 1.7) {
    SchemeParams p{alpha, beta, {s_j, s_j, s_e, s_x, s_x, s_q, s_q, s_eps}, lambda};
    p.validate();
    return p;
  }

  double s_j() const noexcept { return s[0]; }

  void validate() const {
    if (!(alpha > -4.0 && alpha < 2.0))
      throw ParameterError("alpha must lie in (-4, 2), got " + std::to_string(alpha));
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!(s[k] > 0.0 && s[k] <= 2.0))
        throw ParameterError("relaxation rate s[" + std::to_string(k) + "] = " + std::to_string(s[k]) +
                             " outside (0, 2]");
    if (s[0] != s[1] || s[3] != s[4] || s[5] != s[6])
      throw ParameterError("paired relaxation rates (s_J, s_x, s_q) must be equal");
  }

  /// Coefficients E_k with m_k^eq = E_k rho.
  Vector9 equilibrium_coefficients() const {
    const double l2 = lambda * lambda;
    Vector9 e = Vector9::Zero();
    e[kRho] = 1.0;
    e[kEnergy] = alpha * l2;
    e[kEpsilon] = beta * l2 * l2;
    return e;
  }

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

inline Vector9 moments_from_populations(const Vector9& f, const MomentBasis& basis) {
  if (!f.allFinite()) throw ParameterError("non-finite population");
  return basis.m * f;
}

inline Vector9 populations_from_moments(const Vector9& m, const MomentBasis& basis) {
  if (!m.allFinite()) throw ParameterError("non-finite moment");
  return basis.m_inv * m;
}

inline Vector9 equilibrium_moments(double rho, const SchemeParams& p) { return p.equilibrium_coefficients() * rho; }

/// m_k* = m_k + s_k (m_k^eq(rho) - m_k) for k >= 1; rho untouched.
inline Vector9 relax_moments(const Vector9& m, const SchemeParams& p) {
  const Vector9 eq = equilibrium_moments(m[kRho], p);
  Vector9 out = m;
  for (int k = 1; k < kQ; ++k) out[k] = m[k] + p.s[k - 1] * (eq[k] - m[k]);
  return out;
}

/// Moment-space relaxation as a matrix R with m* = R m.
inline Matrix9 relaxation_matrix(const SchemeParams& p) {
  const Vector9 e = p.equilibrium_coefficients();
  Matrix9 r = Matrix9::Zero();
  r(0, 0) = 1.0;
  for (int k = 1; k < kQ; ++k) {
    r(k, k) = 1.0 - p.s[k - 1];
    r(k, 0) += p.s[k - 1] * e[k];
  }
  return r;
}

/// Population-space collision f* = M^-1 R M f.
inline Matrix9 collision_matrix(const SchemeParams& p) {
  const auto& basis = moment_basis(p.lambda);
  return basis.m_inv * relaxation_matrix(p) * basis.m;
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_MOMENTS_HPP_
