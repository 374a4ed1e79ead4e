#pragma once

#include <functional>

#include "besselft/types.hpp"

namespace besselft {

// J_nu(z) from its power series; (z/2)^nu follows the carried branch of z.
// Falls back to binary128 summation when double rounding would exceed tol.
EvalResult bessel_j_series(cplx nu, const BranchedArgument& z, const EvalOptions& opts = {});

// Hankel expansion of H^(kind)_nu with optimal truncation. kind is 1 or 2.
// Throws SectorError outside the validity sector, AccuracyError when the
// smallest term is above tol relative to the sum.
EvalResult hankel_asymptotic(int kind, cplx nu, const BranchedArgument& z,
                             const EvalOptions& opts = {});

// As hankel_asymptotic but without the exp(+-iz) factor, so products at
// conjugate points do not overflow: H = exp(+-iz) * scaled.
EvalResult hankel_asymptotic_scaled(int kind, cplx nu, const BranchedArgument& z,
                                    const EvalOptions& opts = {});

// J = (H1 + H2) / 2 after reducing arg z into [-pi/2, pi/2].
EvalResult bessel_j_asymptotic(cplx nu, const BranchedArgument& z, const EvalOptions& opts = {});

EvalResult bessel_j(cplx nu, const BranchedArgument& z, const EvalOptions& opts = {});
EvalResult bessel_y(cplx nu, const BranchedArgument& z, const EvalOptions& opts = {});
EvalResult bessel_i(cplx nu, const BranchedArgument& z, const EvalOptions& opts = {});
EvalResult hankel(int kind, cplx nu, const BranchedArgument& z, const EvalOptions& opts = {});

inline constexpr double kOrderOffsetThreshold = 1e-3;
inline constexpr double kOrderOffsetStep = 1e-3;

// Distance from nu to the nearest integer (complex distance).
double distance_to_integer(cplx nu);

// Limit of an order-dependent function that is 0/0 at integer orders.
// Evaluates f at n +- h, n +- h/2 around the nearest integer n and
// interpolates at nu; a fifth node at n + h/4 yields the error estimate.
EvalResult order_offset_limit(cplx nu, const std::function<EvalResult(cplx)>& f,
                              double h = kOrderOffsetStep);

}  // namespace besselft
