#include "besselft/spherical.hpp"

#include <cmath>
#include <limits>

#include "besselft/bessel.hpp"
#include "besselft/gamma.hpp"
#include "wide.hpp"

namespace besselft {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI{0.0, 1.0};

// Scaled Hankel products with w moved into the right half-plane; exact since
// the pair expression is invariant under w -> -w on consistent branches.
EvalResult hankel_bracket_asymptotic(cplx nu, double r, double arg, bool* ok,
                                     const EvalOptions& opts) {
  double theta = arg - kPi * std::round(arg / kPi);
  BranchedArgument w = BranchedArgument::polar(r, theta);
  BranchedArgument wc = w.conj();
  EvalOptions loose = opts;
  loose.tol = 1.0;
  EvalResult a1 = hankel_asymptotic_scaled(1, nu, w, loose);
  EvalResult b1 = hankel_asymptotic_scaled(1, nu, wc, loose);
  EvalResult a2 = hankel_asymptotic_scaled(2, nu, w, loose);
  EvalResult b2 = hankel_asymptotic_scaled(2, nu, wc, loose);
  cplx phase = std::polar(1.0, 2.0 * r * std::cos(theta));
  cplx e_plus = std::exp(kI * kPi * nu), e_minus = std::exp(-kI * kPi * nu);
  cplx p1 = e_plus * phase * a1.value * b1.value;
  cplx p2 = e_minus * std::conj(phase) * a2.value * b2.value;
  cplx v = p1 - p2;
  double err = std::abs(e_plus) * (std::abs(a1.value) * b1.err_estimate + std::abs(b1.value) * a1.err_estimate) +
               std::abs(e_minus) * (std::abs(a2.value) * b2.err_estimate + std::abs(b2.value) * a2.err_estimate) +
               4.0 * kEps * (1.0 + r) * (std::abs(p1) + std::abs(p2));
  *ok = err <= opts.tol * std::abs(v);
  return {v, err, Method::asymptotic};
}

EvalResult pair_series_wide(cplx nu, double r, double arg, const EvalOptions& opts) {
  using detail::wcplx;
  wcplx wv(nu);
  auto jm = detail::j_series(-wv, r, arg, opts.max_terms);
  auto jm_c = detail::j_series(-wv, r, -arg, opts.max_terms);
  auto jp = detail::j_series(wv, r, arg, opts.max_terms);
  auto jp_c = detail::j_series(wv, r, -arg, opts.max_terms);
  wcplx v = jm.value * jm_c.value - jp.value * jp_c.value;
  double err = static_cast<double>(detail::abs(jm.value)) * jm_c.err +
               static_cast<double>(detail::abs(jm_c.value)) * jm.err +
               static_cast<double>(detail::abs(jp.value)) * jp_c.err +
               static_cast<double>(detail::abs(jp_c.value)) * jp.err;
  cplx out = v.to_double();
  return {out, err + kEps * std::abs(out), Method::series};
}

EvalResult pair_series(cplx nu, double r, double arg, const EvalOptions& opts) {
  BranchedArgument w = BranchedArgument::polar(r, arg);
  BranchedArgument wc = w.conj();
  bool real_order = nu.imag() == 0.0;
  EvalResult jm = bessel_j_series(-nu, w, opts);
  EvalResult jp = bessel_j_series(nu, w, opts);
  EvalResult jm_c = real_order ? EvalResult{std::conj(jm.value), jm.err_estimate, jm.method}
                               : bessel_j_series(-nu, wc, opts);
  EvalResult jp_c = real_order ? EvalResult{std::conj(jp.value), jp.err_estimate, jp.method}
                               : bessel_j_series(nu, wc, opts);
  cplx a = jm.value * jm_c.value, b = jp.value * jp_c.value;
  cplx v = a - b;
  double err = std::abs(jm.value) * jm_c.err_estimate + std::abs(jm_c.value) * jm.err_estimate +
               std::abs(jp.value) * jp_c.err_estimate + std::abs(jp_c.value) * jp.err_estimate +
               2.0 * kEps * (std::abs(a) + std::abs(b));
  if (err <= opts.tol * std::abs(v)) return {v, err, Method::series};
  return pair_series_wide(nu, r, arg, opts);
}

}  // namespace

bool near_half_integer(cplx mu) { return distance_to_integer(2.0 * mu) < kOrderOffsetThreshold; }

EvalResult bessel_pair_difference(cplx nu, const BranchedArgument& w, const EvalOptions& opts) {
  if (w.is_zero()) throw DomainError("pair difference at w = 0");
  double r = w.modulus();
  if (r > opts.series_limit(nu)) {
    bool ok = false;
    EvalResult br = hankel_bracket_asymptotic(nu, r, w.arg(), &ok, opts);
    if (ok || r >= opts.asymptotic_limit(nu)) {
      cplx factor = 0.5 * kI * sin_pi(nu);
      return {factor * br.value, std::abs(factor) * br.err_estimate, Method::asymptotic};
    }
  }
  return pair_series(nu, r, w.arg(), opts);
}

EvalResult spherical_j_hankel_product(cplx mu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) throw DomainError("spherical Bessel function at z = 0");
  const cplx nu = 2.0 * mu;
  BranchedArgument w = z.sqrt().scaled(4.0 * kPi);
  const double pi_sq = kPi * kPi;
  if (w.modulus() >= opts.asymptotic_limit(nu)) {
    bool ok = false;
    EvalResult br = hankel_bracket_asymptotic(nu, w.modulus(), w.arg(), &ok, opts);
    return {kI * pi_sq * br.value, pi_sq * br.err_estimate, Method::asymptotic};
  }
  BranchedArgument wc = w.conj();
  EvalResult a1 = hankel(1, nu, w, opts), b1 = hankel(1, nu, wc, opts);
  EvalResult a2 = hankel(2, nu, w, opts), b2 = hankel(2, nu, wc, opts);
  cplx e_plus = std::exp(kI * kPi * nu), e_minus = std::exp(-kI * kPi * nu);
  cplx p1 = e_plus * a1.value * b1.value, p2 = e_minus * a2.value * b2.value;
  double err = std::abs(e_plus) * (std::abs(a1.value) * b1.err_estimate + std::abs(b1.value) * a1.err_estimate) +
               std::abs(e_minus) * (std::abs(a2.value) * b2.err_estimate + std::abs(b2.value) * a2.err_estimate) +
               2.0 * kEps * (std::abs(p1) + std::abs(p2));
  return {kI * pi_sq * (p1 - p2), pi_sq * err, a1.method};
}

EvalResult spherical_j(cplx mu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) throw DomainError("spherical Bessel function at z = 0");
  const cplx nu = 2.0 * mu;
  BranchedArgument w = z.sqrt().scaled(4.0 * kPi);
  const double r = w.modulus();
  const double two_pi_sq = 2.0 * kPi * kPi;

  if (r > opts.series_limit(nu)) {
    bool ok = false;
    EvalResult br = hankel_bracket_asymptotic(nu, r, w.arg(), &ok, opts);
    if (ok || r >= opts.asymptotic_limit(nu))
      return {kI * 0.5 * two_pi_sq * br.value, 0.5 * two_pi_sq * br.err_estimate, Method::asymptotic};
  }

  if (!near_half_integer(mu)) {
    EvalResult p = pair_series(nu, r, w.arg(), opts);
    cplx factor = two_pi_sq / sin_pi(nu);
    return {factor * p.value, std::abs(factor) * p.err_estimate, p.method};
  }

  EvalResult limit = order_offset_limit(nu, [&](cplx v) {
    EvalResult p = pair_series_wide(v, r, w.arg(), opts);
    cplx factor = two_pi_sq / sin_pi(v);
    return EvalResult{factor * p.value, std::abs(factor) * p.err_estimate, Method::series};
  });
  if (r >= 5.0) {
    EvalResult check = spherical_j_hankel_product(mu, z, opts);
    limit.err_estimate = std::max(limit.err_estimate, std::abs(check.value - limit.value));
  }
  return limit;
}

cplx closed_form_reference(cplx mu, const BranchedArgument& z) {
  if (z.is_zero()) throw DomainError("closed form at z = 0");
  double modulus = z.modulus();
  double re_sqrt = std::sqrt(modulus) * std::cos(0.5 * z.arg());
  double phase = 8.0 * kPi * re_sqrt;
  if (mu == cplx(0.25)) return std::cos(phase) / std::sqrt(modulus);
  if (mu == cplx(0.75)) {
    double inv = 1.0 / (16.0 * kPi * kPi * modulus);
    return ((1.0 - inv) * std::cos(phase) - phase * inv * std::sin(phase)) / std::sqrt(modulus);
  }
  throw UnsupportedIndex("closed form available only for mu = 1/4 and mu = 3/4");
}

}  // namespace besselft
