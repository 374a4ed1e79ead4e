#pragma once

#include "besselft/types.hpp"

namespace besselft {

// Lanczos approximation (g = 7, 9 terms), reflection for Re z < 1/2.
// Throws PoleError within 1e-12 of a non-positive integer.
cplx gamma(cplx z);

// Entire; exactly zero at non-positive integers.
cplx reciprocal_gamma(cplx z);

// sin(pi z) and cos(pi z) with exact reduction of the real part.
cplx sin_pi(cplx z);
cplx cos_pi(cplx z);

}  // namespace besselft
