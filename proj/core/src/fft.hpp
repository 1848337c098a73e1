#pragma once

#include <vector>

#include "biortho/types.hpp"

namespace biortho::detail {

// In-place unnormalized 3-D DFT on an n^3 row-major array.
// exponent_sign = +1 computes sum_j a_j exp(+2 pi i j.m / n), -1 the conjugate kernel.
void fft3(std::vector<Complex>& data, int n, int exponent_sign);

}  // namespace biortho::detail
