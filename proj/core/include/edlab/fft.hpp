#pragma once

#include <span>

#include "edlab/constants.hpp"
#include "edlab/grid.hpp"

namespace edlab::fft {

enum class Direction { forward = -1, backward = +1 };

/// In-place unnormalized DFT of every line along `axis` of a row-major array
/// shaped like `g`. Plans are cached per (shape, axis, direction).
void transform_axis(const Grid& g, int axis, std::span<cplx> data, Direction dir);

/// Transform along every axis.
void transform_all(const Grid& g, std::span<cplx> data, Direction dir);

}  // namespace edlab::fft
