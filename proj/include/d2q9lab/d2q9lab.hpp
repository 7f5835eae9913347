#ifndef D2Q9LAB_D2Q9LAB_HPP_
#define D2Q9LAB_D2Q9LAB_HPP_

#include "d2q9lab/config.hpp"
#include "d2q9lab/csv.hpp"
#include "d2q9lab/diagnostics.hpp"
#include "d2q9lab/errors.hpp"
#include "d2q9lab/experiments.hpp"
#include "d2q9lab/grid.hpp"
#include "d2q9lab/haway.hpp"
#include "d2q9lab/heat_fd.hpp"
#include "d2q9lab/initial_conditions.hpp"
#include "d2q9lab/lattice.hpp"
#include "d2q9lab/moments.hpp"
#include "d2q9lab/presets.hpp"
#include "d2q9lab/scaling.hpp"
#include "d2q9lab/spectral.hpp"

#endif  // D2Q9LAB_D2Q9LAB_HPP_
