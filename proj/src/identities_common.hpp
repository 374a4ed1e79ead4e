#pragma once

// Shared plumbing for the identity verifiers.

#include <functional>
#include <string>
#include <vector>

#include "besselft/identities.hpp"

namespace besselft::detail {

inline const cplx kI{0.0, 1.0};

void require(bool condition, const std::string& message);  // PreconditionError
void require_sign(int sign);

// Preconditions of each verifier; PreconditionError (SectorError for weber2's p).
void check_weber_real(cplx nu, double y, int sign);
void check_hardy_real(cplx nu, double y, int sign);
void check_weber_second(cplx nu, cplx a, cplx p);
void check_first_lemma(cplx nu, cplx a, double c, int sign);
void check_emot(cplx nu, double a, cplx b);
void check_second_lemma(cplx nu, double a, double c);
void check_main_theorem(cplx mu, double y, double theta);
void check_proof_pipeline(cplx mu, double y, double theta, int sign);
void check_reformulation_consistency(cplx mu, double y, double theta);

std::string describe(const std::string& key, double v);
std::string describe(const std::string& key, cplx v);

// Schedule for lim eps->0 of the integral of g e(sign c x): eps_start is scaled
// down to the oscillation scale c and the stationary point unless overridden.
RegularizationSchedule schedule_for(const VerifyConfig& cfg, double c, double stationary_x);

// Radial tolerance used for a verification tolerance.
double radial_tolerance(double tol);

// Runs body(diagnostics) -> {lhs, rhs}; numerical failures produce a failing report.
struct Sides {
  cplx lhs;
  cplx rhs;
};
VerificationReport run_verifier(const std::string& name, const ParamList& params, double tol,
                                const std::function<Sides(std::vector<std::string>&)>& body);

VerificationReport make_report(const std::string& name, const ParamList& params, cplx lhs, cplx rhs,
                               double tol, std::vector<std::string> diagnostics);

// a or -a, whichever has its argument in (-pi/2, pi/2].
cplx fold_right(cplx a);

// Integral of g(x) e^{-p_sq x} over [0, inf) by direct quadrature; Re p_sq > 0.
QuadResult damped_integral(const RealIntegrand& g, cplx p_sq, double max_panel, double tol);

}  // namespace besselft::detail
