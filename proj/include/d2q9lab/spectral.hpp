#ifndef D2Q9LAB_SPECTRAL_HPP_
#define D2Q9LAB_SPECTRAL_HPP_

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/moments.hpp"

namespace d2q9lab {

using cplx = std::complex<double>;
using CMatrix9 = Eigen::Matrix<cplx, kQ, kQ>;
using CVector9 = Eigen::Matrix<cplx, kQ, 1>;

struct WaveVector {
  double kx = 0.0;
  double ky = 0.0;

  double norm2() const noexcept { return kx * kx + ky * ky; }
  double norm() const noexcept { return std::sqrt(norm2()); }
  friend bool operator==(const WaveVector&, const WaveVector&) = default;
};

enum class ModeClass { Propagative, Critical, NonPropagative };

inline std::string_view to_string(ModeClass c) {
  switch (c) {
    case ModeClass::Propagative: return "propagative";
    case ModeClass::Critical: return "critical";
    case ModeClass::NonPropagative: return "non-propagative";
  }
  return "?";
}

/// Fourier symbol of the first-order streaming operator: -M diag(i k.v_j) M^-1.
inline CMatrix9 velocity_operator_matrix(const WaveVector& k, double lambda) {
  const auto& basis = moment_basis(lambda);
  CMatrix9 d = CMatrix9::Zero();
  for (int j = 0; j < kQ; ++j) d(j, j) = cplx(0.0, lambda * (k.kx * kEx[j] + k.ky * kEy[j]));
  return -(basis.m.cast<cplx>() * d * basis.m_inv.cast<cplx>());
}

/// Exact one-step evolution of plane-wave moments: G = M diag(exp(-i k.v_j dt)) M^-1 R.
inline CMatrix9 amplification_matrix(const WaveVector& k, const SchemeParams& p, double dt) {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  const auto& basis = moment_basis(p.lambda);
  CMatrix9 shift = CMatrix9::Zero();
  const double step = p.lambda * dt;
  for (int j = 0; j < kQ; ++j) shift(j, j) = std::exp(cplx(0.0, -step * (k.kx * kEx[j] + k.ky * kEy[j])));
  return basis.m.cast<cplx>() * shift * basis.m_inv.cast<cplx>() * relaxation_matrix(p).cast<cplx>();
}

struct SpectralRate {
  cplx gamma;             ///< decay rate: eigenvalue = exp(-gamma dt)
  cplx eigenvalue;
  bool branch_ambiguous;  ///< |Im(gamma) dt| within 1e-6 of pi
};

/// gamma_j = -log(eig_j) / dt on the principal branch, sorted by ascending |Re gamma|.
inline std::vector<SpectralRate> lbm_spectrum(const WaveVector& k, const SchemeParams& p, double dt) {
  const CMatrix9 g = amplification_matrix(k, p, dt);
  Eigen::ComplexEigenSolver<CMatrix9> solver(g, false);
  if (solver.info() != Eigen::Success) throw BranchError("eigen decomposition of the amplification matrix failed");
  std::vector<SpectralRate> rates;
  rates.reserve(kQ);
  for (int j = 0; j < kQ; ++j) {
    const cplx mu = solver.eigenvalues()[j];
    if (std::abs(mu) < 1e-13)
      throw BranchError("amplification matrix has a zero eigenvalue; log rate undefined");
    const cplx gamma = -std::log(mu) / dt;
    const bool ambiguous = std::abs(std::abs(gamma.imag() * dt) - std::numbers::pi) < 1e-6;
    rates.push_back({gamma, mu, ambiguous});
  }
  std::stable_sort(rates.begin(), rates.end(), [](const SpectralRate& a, const SpectralRate& b) {
    return std::abs(a.gamma.real()) < std::abs(b.gamma.real());
  });
  return rates;
}

/// Sound speed and damping of the emergent damped acoustic limit.
struct AcousticParams {
  double c0;
  double g;
};

inline AcousticParams c0_and_g(double alpha, double lambda, double kappa) {
  if (!(alpha > -4.0 && alpha < 2.0)) throw ParameterError("alpha must lie in (-4, 2)");
  if (!(lambda > 0.0) || !(kappa > 0.0)) throw ParameterError("lambda and kappa must be positive");
  const double c02 = lambda * lambda * (4.0 + alpha) / 6.0;
  return {std::sqrt(c02), c02 / kappa};
}

/// Roots of gamma^2 - g gamma + |k|^2 c0^2 = 0. Complex pair ordered (g/2 - i w, g/2 + i w);
/// real pair ordered ascending.
inline std::array<cplx, 2> acoustic_roots(const WaveVector& k, double c0, double g) {
  if (!(c0 > 0.0) || !(g >= 0.0)) throw ParameterError("need c0 > 0 and g >= 0");
  const double k2c2 = k.norm2() * c0 * c0;
  const double disc = 0.25 * g * g - k2c2;
  if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    return {cplx(0.5 * g, -w), cplx(0.5 * g, w)};
  }
  const double r = std::sqrt(disc);
  // product form for the small root keeps it accurate when g^2 >> |k|^2 c0^2
  const double big = 0.5 * g + r;
  const double small = big > 0.0 ? k2c2 / big : 0.0;
  return {cplx(small, 0.0), cplx(big, 0.0)};
}

/// Classification against a given threshold 2|k|c0.
inline ModeClass classify_mode_threshold(double g, double two_k_c0) {
  if (std::abs(g - two_k_c0) <= 1e-12 * std::max(std::abs(g), std::abs(two_k_c0))) return ModeClass::Critical;
  return g < two_k_c0 ? ModeClass::Propagative : ModeClass::NonPropagative;
}

inline ModeClass classify_mode(const WaveVector& k, double c0, double g) {
  return classify_mode_threshold(g, 2.0 * k.norm() * c0);
}

inline double heat_rate(const WaveVector& k, double kappa) {
  if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
  return kappa * k.norm2();
}

struct ModeSample {
  double rho;
  double jx;
  double jy;
};

/// Sign choice in exp(i(k.x +/- w t)).
enum class Branch { Plus, Minus };

/// Real part of a damped acoustic eigenmode,
///   rho = rho0 exp(-g t / 2) exp(i(k.x +/- w t)),  J = i k / |k|^2 (-gamma) rho,
/// with gamma = g/2 -/+ i w. Only defined in the propagative regime.
inline ModeSample exact_mode_solution(double x, double y, double t, const WaveVector& k, double c0, double g,
                                      double rho0, Branch branch) {
  if (classify_mode(k, c0, g) != ModeClass::Propagative)
    throw DomainError("eigenmode formula needs a propagative wave (g < 2|k|c0)");
  const double w = std::sqrt(k.norm2() * c0 * c0 - 0.25 * g * g);
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  const cplx gamma(0.5 * g, -sign * w);
  const cplx rho = rho0 * std::exp(-gamma * t + cplx(0.0, k.kx * x + k.ky * y));
  const cplx flux = cplx(0.0, 1.0) * (-gamma) * rho / k.norm2();
  return {rho.real(), (flux * k.kx).real(), (flux * k.ky).real()};
}

/// Solution of the damped acoustic system from rho = rho0 cos(k.x), J = 0:
/// the combination of both roots with zero initial momentum. Valid in both
/// regimes except the critical double root.
inline ModeSample released_wave_solution(double x, double y, double t, const WaveVector& k, double c0, double g,
                                         double rho0) {
  if (!(k.norm2() > 0.0)) throw DomainError("wave vector must be non-zero");
  const auto roots = acoustic_roots(k, c0, g);
  const cplx diff = roots[1] - roots[0];
  if (std::abs(diff) <= 1e-12 * std::abs(roots[1])) throw DomainError("critical damping has a double root");
  const cplx a0 = roots[1] / diff;
  const cplx a1 = -roots[0] / diff;
  const cplx amp = a0 * std::exp(-roots[0] * t) + a1 * std::exp(-roots[1] * t);
  const cplx famp = -(a0 * roots[0] * std::exp(-roots[0] * t) + a1 * roots[1] * std::exp(-roots[1] * t));
  const cplx phase = std::exp(cplx(0.0, k.kx * x + k.ky * y));
  const cplx rho = rho0 * amp * phase;
  const cplx flux = cplx(0.0, 1.0) * rho0 * famp * phase / k.norm2();
  return {rho.real(), (flux * k.kx).real(), (flux * k.ky).real()};
}

/// Lattice rates for one k together with both candidate limit models.
struct DispersionSpectrum {
  WaveVector k;
  std::vector<SpectralRate> lbm_rates;
  double heat_rate = 0.0;
  std::array<cplx, 2> acoustic_roots{};
  ModeClass mode_class = ModeClass::Propagative;
};

/// kappa is the physical diffusivity the scheme is tuned to (c0 and g follow from it).
inline DispersionSpectrum analyze_dispersion(const WaveVector& k, const SchemeParams& p, double dt, double kappa) {
  DispersionSpectrum out;
  out.k = k;
  out.lbm_rates = lbm_spectrum(k, p, dt);
  out.heat_rate = heat_rate(k, kappa);
  const auto ac = c0_and_g(p.alpha, p.lambda, kappa);
  out.acoustic_roots = acoustic_roots(k, ac.c0, ac.g);
  out.mode_class = classify_mode(k, ac.c0, ac.g);
  return out;
}

/// For each target, the lattice rate closest in the complex plane (each rate used once).
inline std::vector<cplx> match_rates(const std::vector<SpectralRate>& rates, const std::vector<cplx>& targets) {
  std::vector<bool> used(rates.size(), false);
  std::vector<cplx> out;
  out.reserve(targets.size());
  for (const cplx& t : targets) {
    std::size_t best = rates.size();
    for (std::size_t r = 0; r < rates.size(); ++r) {
      if (used[r]) continue;
      if (best == rates.size() || std::abs(rates[r].gamma - t) < std::abs(rates[best].gamma - t)) best = r;
    }
    if (best == rates.size()) throw ParameterError("more targets than rates");
    used[best] = true;
    out.push_back(rates[best].gamma);
  }
  return out;
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_SPECTRAL_HPP_
