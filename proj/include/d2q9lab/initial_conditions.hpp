#ifndef D2Q9LAB_INITIAL_CONDITIONS_HPP_
#define D2Q9LAB_INITIAL_CONDITIONS_HPP_

#include <cmath>
#include <numbers>
#include <sstream>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/grid.hpp"
#include "d2q9lab/spectral.hpp"

namespace d2q9lab {

/// exp(-(x^2 + y^2) / width); width = 0.09 for the standard pulse.
inline double gaussian_init(double x, double y, double width = 0.09) { return std::exp(-(x * x + y * y) / width); }

/// cos(k.x) for a wave vector that is periodic on the given box.
class PlaneWave {
public:
  PlaneWave(const WaveVector& k, double width, double height) : k_(k) {
    const double mx = k.kx * width / (2.0 * std::numbers::pi);
    const double my = k.ky * height / (2.0 * std::numbers::pi);
    const double rx = std::round(mx), ry = std::round(my);
    if (std::abs(mx - rx) > 1e-9 || std::abs(my - ry) > 1e-9) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "wave vector (" << k.kx << ", " << k.ky << ") is not periodic on a " << width << " x " << height
          << " box; nearest commensurate choice is (" << rx * 2.0 * std::numbers::pi / width << ", "
          << ry * 2.0 * std::numbers::pi / height << ")";
      throw ParameterError(msg.str());
    }
  }

  PlaneWave(const WaveVector& k, const CellGrid& g) : PlaneWave(k, g.width(), g.height()) {}

  const WaveVector& k() const noexcept { return k_; }
  double operator()(double x, double y) const { return std::cos(k_.kx * x + k_.ky * y); }

private:
  WaveVector k_;
};

inline PlaneWave plane_wave_init(const WaveVector& k, const CellGrid& g) { return PlaneWave(k, g); }

}  // namespace d2q9lab

#endif  // D2Q9LAB_INITIAL_CONDITIONS_HPP_
