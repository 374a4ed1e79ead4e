#pragma once

#include "besselft/types.hpp"

namespace besselft {

// True iff 2 mu lies within 1e-3 of an integer, where sin(2 pi mu) vanishes.
bool near_half_integer(cplx mu);

// J_{-nu}(w) J_{-nu}(conj w) - J_nu(w) J_nu(conj w), with the conjugate point
// on the conjugate branch (arg -> -arg). Regular in nu; vanishes at integers.
EvalResult bessel_pair_difference(cplx nu, const BranchedArgument& w, const EvalOptions& opts = {});

// Spherical Bessel function of index mu over C:
//   (2 pi^2 / sin 2 pi mu) * pair_difference(2 mu, 4 pi sqrt z),
// taken as a limit when 2 mu is (nearly) an integer.
EvalResult spherical_j(cplx mu, const BranchedArgument& z, const EvalOptions& opts = {});

// Same function as i pi^2 (e^{2 pi i mu} H1 H1 - e^{-2 pi i mu} H2 H2) at 4 pi sqrt z
// and its conjugate; no sin(2 pi mu) denominator.
EvalResult spherical_j_hankel_product(cplx mu, const BranchedArgument& z,
                                      const EvalOptions& opts = {});

// Elementary forms for mu = 1/4 and mu = 3/4; UnsupportedIndex otherwise.
cplx closed_form_reference(cplx mu, const BranchedArgument& z);

}  // namespace besselft
