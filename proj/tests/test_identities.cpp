#include <cmath>

#include "besselft/identities.hpp"
#include "besselft/spherical.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace besselft;

namespace {

const cplx I{0.0, 1.0};

std::string diagnostic(const VerificationReport& r, const std::string& key) {
  for (const auto& d : r.diagnostics)
    if (d.rfind(key + "=", 0) == 0) return d.substr(key.size() + 1);
  return "";
}

double diagnostic_value(const VerificationReport& r, const std::string& key) {
  return std::stod(diagnostic(r, key));
}

}  // namespace

TEST_CASE("pass rule has an absolute floor near zero") {
  CHECK(passes(1e-5, 1e-5, 1.0, 1e-4));
  CHECK_FALSE(passes(1e-3, 1e-3, 1.0, 1e-4));
  CHECK(passes(1e-5, 1e7, 1e-13, 1e-4));
  CHECK_FALSE(passes(1e-3, 1e9, 1e-13, 1e-4));
}

TEST_CASE("weber over the reals") {
  // nu = 1, y = 1: RHS carries J_{1/2}(pi) = 0, so the absolute floor decides.
  VerificationReport a = verify_weber_real(1.0, 1.0, 1);
  CHECK(a.pass);
  CHECK(std::abs(a.rhs) < 1e-15);
  CHECK(a.abs_err < 1e-6);
  CHECK(a.identity_name == "weber");

  VerificationReport b = verify_weber_real(0.5, 2.0, -1);
  CHECK(b.rel_err < 1e-4);
  // RHS carries J_{1/4}(pi/2); compare with the 50-digit series.
  cplx expected = std::pow(4.0, -0.5) * expi2pi(0.25 - 0.0625 - 0.125) * oracle::bessel_j(0.25, kPi / 2.0, 0.0);
  CHECK(oracle::rel_err(b.rhs, expected) < 1e-13);

  VerificationReport c = verify_weber_real(-0.5, 1.0, 1);
  CHECK(c.params.size() == 3);
  CHECK(std::isfinite(c.rel_err));

  CHECK_THROWS_AS(verify_weber_real(-1.2, 1.0, 1), PreconditionError);
  CHECK_THROWS_AS(verify_weber_real(0.5, -1.0, 1), PreconditionError);
  CHECK_THROWS_AS(verify_weber_real(0.5, 1.0, 2), PreconditionError);
}

TEST_CASE("hardy over the reals") {
  CHECK(verify_hardy_real(0.4, 1.0, 1).rel_err < 1e-5);
  CHECK(verify_hardy_real(0.6 * I, 0.5, -1).rel_err < 1e-5);
  CHECK_THROWS_AS(verify_hardy_real(1.2, 1.0, 1), PreconditionError);
  CHECK_THROWS_AS(verify_hardy_real(1.0, 1.0, 1), PreconditionError);
  // Order zero goes through the order-offset limit on both sides.
  VerificationReport zero = verify_hardy_real(0.0, 0.5, -1);
  CHECK(zero.pass);
  CHECK(std::abs(zero.rhs - verify_hardy_real(0.002, 0.5, -1).rhs) < 1e-5);
  CHECK(verify_hardy_real(0.9, 1.0, 1).rel_err < 1e-5);
}

TEST_CASE("weber second exponential integral") {
  VerificationReport inside = verify_weber_second(0.3, 1.0, 1.0);
  CHECK(inside.rel_err < 1e-8);
  CHECK(inside.tol == kTolAbsolute);

  VerificationReport edge = verify_weber_second(0.3, cplx(1.0, 0.5), std::polar(1.0, kPi / 4.0));
  CHECK(edge.rel_err < 1e-4);
  CHECK(edge.tol == kTolRegularized);

  VerificationReport zero = verify_weber_second(0.0, 1.0, 1.0);
  CHECK(std::abs(zero.lhs) < 1e-10);
  CHECK(std::abs(zero.rhs) < 1e-10);
  CHECK(zero.pass);

  CHECK_THROWS_AS(verify_weber_second(0.3, 1.0, std::polar(1.0, 0.3 * kPi)), SectorError);
  CHECK_THROWS_AS(verify_weber_second(1.3, 1.0, 1.0), PreconditionError);
}

TEST_CASE("first lemma") {
  CHECK(verify_first_lemma(0.4, 1.0, 2.0, 1).rel_err < 1e-4);
  CHECK(verify_first_lemma(0.5, std::polar(1.0, kPi / 8.0), 1.0, -1).rel_err < 1e-4);

  // Both sides depend on a only up to a -> -a.
  VerificationReport a = verify_first_lemma(0.3, cplx(0.8, 0.3), 1.5, 1);
  VerificationReport b = verify_first_lemma(0.3, -cplx(0.8, 0.3), 1.5, 1);
  CHECK(std::abs(a.lhs - b.lhs) <= 1e-12 * std::abs(a.lhs));
  CHECK(std::abs(a.rhs - b.rhs) <= 1e-12 * std::abs(a.rhs));

  VerificationReport zero = verify_first_lemma(0.0, 1.0, 1.0, 1);
  CHECK(std::abs(zero.lhs) < 1e-10);
  CHECK(std::abs(zero.rhs) < 1e-10);

  CHECK_THROWS_AS(verify_first_lemma(0.3, 0.0, 1.0, 1), PreconditionError);
  CHECK_THROWS_AS(verify_first_lemma(0.3, 1.0, 0.0, 1), PreconditionError);
}

TEST_CASE("emot formula") {
  CHECK(verify_emot(0.5, 3.0, 1.0).rel_err < 1e-6);
  CHECK(verify_emot(0.5, 3.0, 2.0 * I).rel_err < 1e-6);
  VerificationReport zero = verify_emot(0.5, 3.0, 0.0);
  CHECK(zero.rel_err < 1e-6);
  CHECK_THROWS_AS(verify_emot(0.5, 3.0, cplx(-0.5, 0.0)), PreconditionError);
  CHECK_THROWS_AS(verify_emot(-1.5, 3.0, 1.0), PreconditionError);
}

TEST_CASE("second lemma") {
  VerificationReport a = verify_second_lemma(0.5, 2.0, 0.0);
  CHECK(a.rel_err < 1e-6);
  CHECK(verify_second_lemma(0.5, 2.0, 2.0).rel_err < 1e-5);

  // c -> -c conjugates w; for real nu both sides are real.
  VerificationReport plus = verify_second_lemma(0.5, 2.0, 1.2);
  VerificationReport minus = verify_second_lemma(0.5, 2.0, -1.2);
  CHECK(std::abs(plus.rhs.imag()) < 1e-12 * std::abs(plus.rhs));
  CHECK(std::abs(plus.rhs - minus.rhs) < 1e-12 * std::abs(plus.rhs));
  CHECK(std::abs(plus.lhs - minus.lhs) < 1e-8 * std::abs(plus.lhs));

  CHECK_THROWS_AS(verify_second_lemma(0.5, 2.0, 2.5), PreconditionError);
  CHECK_THROWS_AS(verify_second_lemma(0.0, 2.0, 1.0), PreconditionError);
}

TEST_CASE("closed forms of the main identity") {
  // Consistency between the two closed forms.
  CHECK(verify_reformulation_consistency(0.3, 1.0, 0.7).rel_err < 1e-10);
  CHECK(verify_reformulation_consistency(0.1 * I, 2.0, 0.0).rel_err < 1e-10);
  CHECK(verify_reformulation_consistency(cplx(0.3, 0.1), 0.5, kPi / 2.0).rel_err < 1e-10);
  CHECK_THROWS_AS(verify_reformulation_consistency(0.0002, 1.0, 0.0), PreconditionError);

  // mu -> -mu: the spherical side is even, the product side odd, so the check is unchanged.
  for (cplx mu : {cplx(0.3), cplx(0.0, 0.2), cplx(0.2, 0.1)}) {
    cplx a = theorem_rhs(mu, 0.8, 1.1), b = theorem_rhs(-mu, 0.8, 1.1);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
    cplx c = reformulated_rhs(mu, 0.8, 1.1, 1), d = reformulated_rhs(-mu, 0.8, 1.1, 1);
    CHECK(std::abs(c + d) < 1e-12 * std::abs(c));
    VerificationReport r = verify_reformulation_consistency(mu, 0.8, 1.1);
    VerificationReport s = verify_reformulation_consistency(-mu, 0.8, 1.1);
    CHECK(std::abs(r.rhs - s.rhs) < 1e-12 * std::abs(r.rhs));
  }

  // Sign coherence: the two exponent signs differ by e(2 cos(theta) / y).
  for (double theta : {0.0, 0.4, 2.5}) {
    cplx plus = reformulated_rhs(0.2, 1.3, theta, 1), minus = reformulated_rhs(0.2, 1.3, theta, -1);
    CHECK(std::abs(plus * expi2pi(2.0 * std::cos(theta) / 1.3) - minus) < 1e-10 * std::abs(minus));
  }

  // theta -> theta + pi keeps the spherical argument and flips e(cos(theta) / y).
  for (double theta : {0.2, 1.0, 2.9}) {
    cplx a = theorem_rhs(0.15, 0.7, theta), b = theorem_rhs(0.15, 0.7, theta + kPi);
    CHECK(std::abs(b - a * expi2pi(-2.0 * std::cos(theta) / 0.7)) < 1e-10 * std::abs(a));
  }

  // mu = 1/8: the index 1/16 spherical value against the 50-digit oracle.
  cplx rhs = theorem_rhs(0.125, 1.0, 0.5);
  cplx expected = expi2pi(std::cos(0.5)) * oracle::spherical_j(0.0625, 1.0 / 16.0, -1.0) / 4.0;
  CHECK(oracle::rel_err(rhs, expected) < 1e-12);
}

TEST_CASE("proof pipeline links") {
  VerificationReport r = verify_proof_pipeline(0.2, 1.0, kPi / 4.0, 1);
  CHECK(r.pass);
  CHECK(diagnostic_value(r, "link_change_of_variables_rel_err") < 1e-6);
  CHECK(diagnostic_value(r, "link_second_lemma_rel_err") < 1e-6);
  CHECK(diagnostic_value(r, "link_assembly_rel_err") < 1e-6);

  CHECK(verify_proof_pipeline(0.2, 1.0, 0.0, -1).rel_err < 1e-6);
  VerificationReport edge = verify_proof_pipeline(0.15 * I, 0.5, kPi / 2.0, 1);
  CHECK(diagnostic_value(edge, "link_second_lemma_rel_err") < 1e-5);

  // Angles beyond a quarter turn reduce to the half plane with the sign flipped.
  CHECK(verify_proof_pipeline(0.2, 1.0, 2.5, 1).rel_err < 1e-6);
  CHECK_THROWS_AS(verify_proof_pipeline(0.5, 1.0, 0.0, 1), PreconditionError);
}

TEST_CASE("main identity inner integral against regularization") {
  const cplx mu = 0.1;
  const double y = 1.0, theta = kPi / 6.0;
  for (double phi : {2.0, 1.2, 4.4}) {
    QuadResult fast = main_theorem_inner(mu, y, theta, phi, 1e-7);
    const double shift = std::cos(phi + theta);
    const double c = 2.0 * y * std::abs(shift);
    const double half = std::abs(std::cos(0.5 * phi));
    RegularizationSchedule s;
    s.eps_start = std::min(0.5, c * c / (4.0 * half * half));
    RadialOptions ro;
    ro.tol = 1e-7;
    ro.local_frequency = [half](double x) { return 4.0 * kPi * half / std::sqrt(x); };
    auto g = [&](double x) { return spherical_j(mu, BranchedArgument::polar(x, phi)).value; };
    QuadResult slow = regularized_fourier_radial(g, c, shift > 0.0 ? -1 : 1, s, ro);
    CHECK(std::abs(fast.value - slow.value) < 1e-6 * std::abs(slow.value));
  }
  CHECK_THROWS_AS(verify_main_theorem(0.6, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(verify_main_theorem(0.1, 1.0, 7.0), PreconditionError);
}

TEST_CASE("tag dispatch") {
  CHECK(identity_catalog().size() == 9);
  CHECK_THROWS_AS(identity_info("nope"), DomainError);

  ParamList full = complete_params("main", {{"mu", 0.6}});
  REQUIRE(full.size() == 3);
  CHECK(full[1] == std::pair<std::string, cplx>{"y", 1.0});
  CHECK(full[2] == std::pair<std::string, cplx>{"theta", 0.0});
  CHECK_THROWS_AS(complete_params("main", {{"mu", 0.1}, {"nu", 0.2}}), DomainError);
  CHECK_THROWS_AS(complete_params("lemma2", {{"nu", 0.5}, {"a", 2.0}}), DomainError);

  CHECK_THROWS_AS(validate_params("main", {{"mu", 0.6}}), PreconditionError);
  CHECK_THROWS_AS(validate_params("weber", {{"nu", 0.5}, {"y", cplx(1.0, 1.0)}}), PreconditionError);
  CHECK_THROWS_AS(validate_params("weber2", {{"nu", 0.3}, {"a", 1.0}, {"p", I}}), SectorError);
  CHECK_NOTHROW(validate_params("lemma2", {{"nu", 0.5}, {"a", 2.0}, {"c", 0.0}}));
  CHECK_THROWS_AS(verify("main", {{"mu", 0.6}}), PreconditionError);

  VerificationReport a = verify("consistency", {{"mu", 0.3}, {"y", 1.0}, {"theta", 0.7}});
  VerificationReport b = verify_reformulation_consistency(0.3, 1.0, 0.7);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.params == b.params);
}

TEST_CASE("grid sweeps") {
  ParamGrid empty;
  SweepSummary none = sweep(empty, "weber");
  CHECK(none.reports.empty());
  CHECK(none.pass_count == 0);

  ParamGrid one;
  one.axes = {{"mu", {0.3}}, {"y", {1.0}}, {"theta", {0.7}}};
  SweepSummary single = sweep(one, "consistency");
  REQUIRE(single.reports.size() == 1);
  VerificationReport direct = verify_reformulation_consistency(0.3, 1.0, 0.7);
  CHECK(single.reports[0].lhs == direct.lhs);
  CHECK(single.reports[0].rel_err == direct.rel_err);

  ParamGrid grid;
  grid.axes = {{"nu", {0.4, 1.0, 0.6 * I}}, {"y", {1.0, 2.0}}};
  std::vector<ParamList> points = expand_grid(grid);
  REQUIRE(points.size() == 6);
  CHECK(points[1][0].second == cplx(0.4));
  CHECK(points[1][1].second == cplx(2.0));
  CHECK(points[2][0].second == cplx(1.0));
  SweepSummary weber = sweep(grid, "weber");
  REQUIRE(weber.reports.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(weber.reports[k].params[0].second == points[k][0].second);
  CHECK(weber.pass_count == 6);

  // One invalid point rejects the whole grid before anything runs.
  ParamGrid bad;
  bad.axes = {{"mu", {0.3, 0.7}}};
  CHECK_THROWS_AS(sweep(bad, "consistency"), PreconditionError);
}
