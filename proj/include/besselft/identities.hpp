#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "besselft/quad.hpp"
#include "besselft/types.hpp"

namespace besselft {

using ParamList = std::vector<std::pair<std::string, cplx>>;

struct VerificationReport {
  std::string identity_name;
  ParamList params;
  cplx lhs{};
  cplx rhs{};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<std::string> diagnostics;
};

// pass <=> rel_err <= tol, or |rhs| < 1e-12 and abs_err <= tol.
bool passes(double abs_err, double rel_err, cplx rhs, double tol);

// Per-call overrides; unset fields take the identity's defaults.
struct VerifyConfig {
  std::optional<double> tol;
  std::optional<double> eps_start;  // default: scaled to the oscillation and stationary point
  std::optional<double> eps_ratio;
  std::optional<int> eps_steps;
  std::optional<int> richardson_depth;
};

// Default tolerances by integral type.
inline constexpr double kTolAbsolute = 1e-6;
inline constexpr double kTolRegularized = 1e-4;
inline constexpr double kTolDouble = 1e-2;
inline constexpr double kTolAlgebraic = 1e-10;

VerificationReport verify_weber_real(cplx nu, double y, int sign, const VerifyConfig& cfg = {});
VerificationReport verify_hardy_real(cplx nu, double y, int sign, const VerifyConfig& cfg = {});
VerificationReport verify_weber_second(cplx nu, cplx a, cplx p, const VerifyConfig& cfg = {});
VerificationReport verify_first_lemma(cplx nu, cplx a, double c, int sign, const VerifyConfig& cfg = {});
VerificationReport verify_emot(cplx nu, double a, cplx b, const VerifyConfig& cfg = {});
VerificationReport verify_second_lemma(cplx nu, double a, double c, const VerifyConfig& cfg = {});
VerificationReport verify_main_theorem(cplx mu, double y, double theta, const VerifyConfig& cfg = {});
VerificationReport verify_proof_pipeline(cplx mu, double y, double theta, int sign, const VerifyConfig& cfg = {});
VerificationReport verify_reformulation_consistency(cplx mu, double y, double theta,
                                                    const VerifyConfig& cfg = {});

// Inner radial integral of the main identity at angle phi: the integral over x > 0 of
// spherical_j(mu, x e^{i phi}) e(-2 x y cos(phi + theta)). Direct quadrature up to
// past the stationary point, contour-rotated Hankel tail beyond.
QuadResult main_theorem_inner(cplx mu, double y, double theta, double phi, double tol);

// Closed-form sides, exposed for algebraic checks.
cplx theorem_rhs(cplx mu, double y, double theta);
cplx reformulated_rhs(cplx mu, double y, double theta, int sign);

// Tag-based dispatch used by sweeps and the command line.
struct IdentityInfo {
  std::string tag;
  // Parameter names in report order, with defaults for the optional ones.
  std::vector<std::pair<std::string, std::optional<cplx>>> params;
};

const std::vector<IdentityInfo>& identity_catalog();
const IdentityInfo& identity_info(const std::string& tag);  // DomainError if unknown

// Fills defaults and checks names; DomainError on unknown or missing names.
ParamList complete_params(const std::string& tag, const ParamList& given);
// PreconditionError if the point is outside the identity's validity range.
void validate_params(const std::string& tag, const ParamList& params);
VerificationReport verify(const std::string& tag, const ParamList& params, const VerifyConfig& cfg = {});

struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<cplx>>> axes;  // first axis varies slowest
  VerifyConfig config;
};

struct SweepSummary {
  std::vector<VerificationReport> reports;
  int pass_count = 0;
  double max_rel_err = 0.0;
};

// Row-major expansion of the grid. Every point is validated before any is run.
std::vector<ParamList> expand_grid(const ParamGrid& grid);
SweepSummary sweep(const ParamGrid& grid, const std::string& tag);

}  // namespace besselft
