#include "identities_common.hpp"

#include <algorithm>
#include <cmath>

#include "besselft/bessel.hpp"
#include "besselft/report_io.hpp"

namespace besselft::detail {

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

void require_sign(int sign) { require(sign == 1 || sign == -1, "sign must be +1 or -1"); }

void check_weber_real(cplx nu, double y, int sign) {
  require(nu.real() > -1.0, "weber: requires Re nu > -1");
  require(y > 0.0, "weber: requires y > 0");
  require_sign(sign);
}

void check_hardy_real(cplx nu, double y, int sign) {
  require(std::abs(nu.real()) < 1.0, "hardy: requires |Re nu| < 1");
  require(y > 0.0, "hardy: requires y > 0");
  require_sign(sign);
}

void check_weber_second(cplx nu, cplx a, cplx p) {
  require(std::abs(nu.real()) < 1.0, "weber2: requires |Re nu| < 1");
  require(a != cplx(0.0), "weber2: requires a != 0");
  require(p != cplx(0.0), "weber2: requires p != 0");
  if (std::abs(std::arg(p)) > 0.25 * kPi + 1e-12) throw SectorError("weber2: requires |arg p| <= pi/4");
}

void check_first_lemma(cplx nu, cplx a, double c, int sign) {
  require(std::abs(nu.real()) < 1.0, "lemma1: requires |Re nu| < 1");
  require(a != cplx(0.0), "lemma1: requires a != 0");
  require(c > 0.0, "lemma1: requires c > 0");
  require_sign(sign);
}

void check_emot(cplx nu, double a, cplx b) {
  require(nu.real() > -1.0, "emot: requires Re nu > -1");
  require(a > 0.0, "emot: requires a > 0");
  require(b.real() >= 0.0, "emot: requires Re b >= 0");
}

void check_second_lemma(cplx nu, double a, double c) {
  require(std::abs(nu.real()) < 1.0, "lemma2: requires |Re nu| < 1");
  require(distance_to_integer(0.5 * nu) >= 1e-3, "lemma2: nu/2 within 1e-3 of an integer");
  require(a > 0.0, "lemma2: requires a > 0");
  require(-a <= c && c <= a, "lemma2: requires -a <= c <= a");
}

namespace {

void check_spherical_index(cplx mu, double y, const std::string& tag) {
  require(std::abs(mu.real()) < 0.5, tag + ": requires |Re mu| < 1/2");
  require(y > 0.0, tag + ": requires y > 0");
}

}  // namespace

void check_main_theorem(cplx mu, double y, double theta) {
  check_spherical_index(mu, y, "main");
  require(theta >= 0.0 && theta < 2.0 * kPi, "main: requires theta in [0, 2 pi)");
}

void check_proof_pipeline(cplx mu, double y, double /*theta*/, int sign) {
  check_spherical_index(mu, y, "pipeline");
  require(distance_to_integer(2.0 * mu) >= 1e-3, "pipeline: 2 mu within 1e-3 of an integer");
  require_sign(sign);
}

void check_reformulation_consistency(cplx mu, double y, double /*theta*/) {
  check_spherical_index(mu, y, "consistency");
  require(distance_to_integer(2.0 * mu) >= 1e-3, "consistency: 2 mu within 1e-3 of an integer");
}

std::string describe(const std::string& key, double v) { return key + "=" + format_number(v); }
std::string describe(const std::string& key, cplx v) { return key + "=" + format_complex(v); }

RegularizationSchedule schedule_for(const VerifyConfig& cfg, double c, double stationary_x) {
  RegularizationSchedule s;
  if (cfg.eps_start) {
    s.eps_start = *cfg.eps_start;
  } else {
    s.eps_start = std::min(s.eps_start, 0.5 * kPi * c);
    if (stationary_x > 0.0) s.eps_start = std::min(s.eps_start, 1.0 / stationary_x);
    s.eps_start = std::max(s.eps_start, 100.0 * s.eps_floor);
  }
  if (cfg.eps_ratio) s.eps_ratio = *cfg.eps_ratio;
  if (cfg.eps_steps) s.eps_steps = *cfg.eps_steps;
  if (cfg.richardson_depth) s.richardson_depth = *cfg.richardson_depth;
  return s;
}

double radial_tolerance(double tol) { return std::clamp(1e-2 * tol, 1e-11, 1e-5); }

VerificationReport make_report(const std::string& name, const ParamList& params, cplx lhs, cplx rhs,
                               double tol, std::vector<std::string> diagnostics) {
  VerificationReport r;
  r.identity_name = name;
  r.params = params;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = std::abs(rhs) > 0.0 ? r.abs_err / std::abs(rhs) : (r.abs_err == 0.0 ? 0.0 : INFINITY);
  if (!std::isfinite(r.abs_err)) r.rel_err = r.abs_err = INFINITY;
  r.pass = passes(r.abs_err, r.rel_err, rhs, tol);
  r.diagnostics = std::move(diagnostics);
  return r;
}

VerificationReport run_verifier(const std::string& name, const ParamList& params, double tol,
                                const std::function<Sides(std::vector<std::string>&)>& body) {
  std::vector<std::string> diagnostics;
  try {
    Sides s = body(diagnostics);
    return make_report(name, params, s.lhs, s.rhs, tol, std::move(diagnostics));
  } catch (const PreconditionError&) {
    throw;
  } catch (const SectorError&) {
    throw;
  } catch (const Error& e) {
    diagnostics.push_back(std::string("failure=") + e.what());
    const double nan = std::nan("");
    VerificationReport r = make_report(name, params, cplx(nan, nan), cplx(nan, nan), tol, std::move(diagnostics));
    r.pass = false;
    return r;
  }
}

cplx fold_right(cplx a) {
  bool flip = a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0);
  return flip ? -a : a;
}

QuadResult damped_integral(const RealIntegrand& g, cplx p_sq, double max_panel, double tol) {
  const double decay = p_sq.real();
  if (!(decay > 0.0)) throw DomainError("damped_integral requires Re p^2 > 0");
  const double end = std::max(10.0, 45.0 / decay);
  double step = max_panel;
  if (p_sq.imag() != 0.0) step = std::min(step, kPi / std::abs(p_sq.imag()));
  std::vector<double> br{0.0, std::min(1.0, end)};
  while (br.back() < end) br.push_back(std::min(end, br.back() + step));
  QuadOptions o;
  o.left_power = 4;
  o.throw_on_limit = false;
  o.abs_tol = 1e-15;
  return adaptive_quad([&](double x) { return g(x) * std::exp(-p_sq * x); }, br, tol, o);
}

}  // namespace besselft::detail

namespace besselft {

bool passes(double abs_err, double rel_err, cplx rhs, double tol) {
  return rel_err <= tol || (std::abs(rhs) < 1e-12 && abs_err <= tol);
}

}  // namespace besselft
