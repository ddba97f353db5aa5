#pragma once

#include <string_view>

#include "wmgtomo/bench.hpp"
#include "wmgtomo/convergence.hpp"
#include "wmgtomo/dense.hpp"
#include "wmgtomo/geometry.hpp"
#include "wmgtomo/grid_vector.hpp"
#include "wmgtomo/haar.hpp"
#include "wmgtomo/io.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/phantom.hpp"
#include "wmgtomo/random.hpp"
#include "wmgtomo/solvers.hpp"
#include "wmgtomo/sparse.hpp"
#include "wmgtomo/spectral.hpp"
#include "wmgtomo/two_grid.hpp"
#include "wmgtomo/wmg.hpp"

namespace wmgtomo {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace wmgtomo
