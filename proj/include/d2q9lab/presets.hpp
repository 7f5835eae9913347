#ifndef D2Q9LAB_PRESETS_HPP_
#define D2Q9LAB_PRESETS_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace d2q9lab {

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::string_view text;
};

// Gaussian pulse on [-1, 1]^2 unless stated otherwise. Table 2 and 3 use
// lambda = 6.5 (= 1/dx on the 13-cell mesh); the target time 0.177 rounds
// to 8, 16, 32, 64, 128 steps.
inline constexpr std::array<Preset, 7> kPresets{{
    {"table1", "diffusive scaling, D2Q9 vs explicit heat FD, kappa = 1/18",
     R"([experiment]
name = table1
meshes = 13, 27, 55, 111, 223
lbm_steps = 8, 36, 128, 600, 2048

[scaling]
kind = diffusive
lambda = 1
kappa = 1/18

[initial]
kind = gaussian
width = 0.09

[solvers]
pairs = lbm:heat_fd
fd_policy = match_lbm

[output]
dir = out/table1
)"},
    {"table2", "acoustic scaling, D2Q9 vs explicit heat FD, kappa = 1/18",
     R"([experiment]
name = table2
meshes = 13, 27, 55, 111, 223
lbm_steps = 8, 16, 32, 64, 128

[scaling]
kind = acoustic
lambda = 6.5
kappa = 1/18

[initial]
kind = gaussian
width = 0.09

[solvers]
pairs = lbm:heat_fd
fd_policy = explicit
fd_steps = 8, 32, 128, 512, 2048

[output]
dir = out/table2
)"},
    {"table3", "acoustic scaling, D2Q9 vs HaWAY damped acoustics, kappa = 1/18",
     R"([experiment]
name = table3
meshes = 13, 27, 55, 111, 223
lbm_steps = 8, 16, 32, 64, 128

[scaling]
kind = acoustic
lambda = 6.5
kappa = 1/18

[initial]
kind = gaussian
width = 0.09

[solvers]
pairs = lbm:haway
haway_policy = quarter_lbm

[output]
dir = out/table3
)"},
    {"table4-k015", "Gaussian, kappa = 0.15, D2Q9 vs HaWAY and vs heat FD at t = 2",
     R"([experiment]
name = table4-k015
meshes = 13, 27, 55, 111, 223, 447
long_meshes = 895
final_time = 2

[scaling]
kind = acoustic
lambda = 1
kappa = 0.15

[initial]
kind = gaussian
width = 0.09

[solvers]
pairs = lbm:haway, lbm:heat_fd
fd_policy = stable
fd_safety = 1
haway_policy = quarter_lbm

[output]
dir = out/table4-k015
)"},
    {"table4-k0015", "Gaussian, kappa = 0.015, D2Q9 vs HaWAY and vs heat FD at t = 2",
     R"([experiment]
name = table4-k0015
meshes = 13, 27, 55, 111, 223, 447
long_meshes = 895, 1791
final_time = 2

[scaling]
kind = acoustic
lambda = 1
kappa = 0.015

[initial]
kind = gaussian
width = 0.09

[solvers]
pairs = lbm:haway, lbm:heat_fd
fd_policy = stable
fd_safety = 1
haway_policy = quarter_lbm

[output]
dir = out/table4-k0015
)"},
    {"wave-nonprop", "plane wave k = (3, 4) on [0, 2pi]^2, g = 6 (non-propagative)",
     R"([experiment]
name = wave-nonprop
meshes = 32, 64, 128, 256, 512
long_meshes = 1024
final_time = 5

[scaling]
kind = acoustic
lambda = 1
kappa = 1/18

[domain]
lo = 0
hi = 2pi

[initial]
kind = plane_wave
kx = 3
ky = 4

[solvers]
pairs = lbm:exact_wave, lbm:haway
haway_policy = quarter_lbm

[output]
dir = out/wave-nonprop
)"},
    {"wave-prop", "plane wave k = (3, 4) on [0, 2pi]^2, g = 96/17 (propagative)",
     R"([experiment]
name = wave-prop
meshes = 32, 64, 128, 256, 512
long_meshes = 1024
final_time = 5

[scaling]
kind = acoustic
lambda = 1
kappa = 17/288

[domain]
lo = 0
hi = 2pi

[initial]
kind = plane_wave
kx = 3
ky = 4

[solvers]
pairs = lbm:exact_wave, lbm:haway
haway_policy = quarter_lbm

[output]
dir = out/wave-prop
)"},
}};

inline std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : kPresets)
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_PRESETS_HPP_
