#include "besselft/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "besselft/gamma.hpp"
#include "wide.hpp"

namespace besselft {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI{0.0, 1.0};

bool is_nonpositive_integer(cplx nu) {
  return nu.imag() == 0.0 && nu.real() <= 0.0 && nu.real() == std::round(nu.real());
}

EvalResult value_at_zero(cplx nu) {
  if (nu == cplx(0.0)) return {1.0, 0.0, Method::series};
  if (nu.real() > 0.0) return {0.0, 0.0, Method::series};
  throw DomainError("J_nu(0) undefined for Re nu <= 0, nu != 0");
}

struct DoubleSum {
  cplx value;
  double abs_sum = 0.0;
  double last = 0.0;
  bool converged = false;
};

DoubleSum double_j_series(cplx nu, double r, double arg, int max_terms) {
  DoubleSum out;
  cplx log_half(std::log(0.5 * r), arg);
  cplx half_sq = std::polar(0.25 * r * r, 2.0 * arg);
  int start = 0;
  cplx term;
  if (is_nonpositive_integer(nu)) {
    start = static_cast<int>(-nu.real());
    double fact = std::tgamma(start + 1.0);
    term = std::exp((nu + 2.0 * start) * log_half) / fact;
    if (start % 2 == 1) term = -term;
  } else {
    term = std::exp(nu * log_half) * reciprocal_gamma(nu + 1.0);
  }
  cplx sum = 0.0;
  int small_run = 0;
  for (int n = start; n < start + max_terms; ++n) {
    sum += term;
    double mag = std::abs(term);
    out.abs_sum += mag;
    out.last = mag;
    if (mag <= 1e-17 * std::abs(sum) || (mag == 0.0 && sum == 0.0)) {
      if (++small_run >= 3 && n + 1 > 0.5 * r) {
        out.value = sum;
        out.converged = true;
        return out;
      }
    } else {
      small_run = 0;
    }
    term *= -half_sq / ((n + 1.0) * (nu + (n + 1.0)));
  }
  return out;
}

EvalResult wide_j(cplx nu, double r, double arg, const EvalOptions& opts) {
  auto s = detail::j_series(detail::wcplx(nu), r, arg, opts.max_terms);
  cplx v = s.value.to_double();
  return {v, s.err + kEps * std::abs(v), Method::series};
}

struct AsymSum {
  cplx sum;
  double err = 0.0;
};

// sum_k (+-i)^k a_k(nu) / z^k with a_k = a_{k-1} (4 nu^2 - (2k-1)^2) / (8k)
AsymSum asymptotic_sum(int kind, cplx nu, cplx inv_z) {
  const cplx rot = kind == 1 ? kI : -kI;
  const cplx four_nu_sq = 4.0 * nu * nu;
  AsymSum out{1.0, 0.0};
  cplx term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1.0;
    term *= rot * (four_nu_sq - odd * odd) / (8.0 * k) * inv_z;
    double mag = std::abs(term);
    if (mag == 0.0) return out;
    if (mag > prev) {
      out.err = mag;
      return out;
    }
    out.sum += term;
    prev = mag;
    if (mag <= 1e-17 * std::abs(out.sum)) {
      out.err = mag;
      return out;
    }
  }
  out.err = prev;
  return out;
}

void check_sector(int kind, double arg, double delta) {
  if (kind != 1 && kind != 2) throw DomainError("Hankel kind must be 1 or 2");
  bool ok = kind == 1 ? (arg >= -kPi + delta && arg <= 2.0 * kPi - delta)
                      : (arg >= -2.0 * kPi + delta && arg <= kPi - delta);
  if (!ok) throw SectorError("argument outside the validity sector of the Hankel expansion");
}

// Unchecked scaled expansion; err is absolute.
EvalResult scaled_expansion(int kind, cplx nu, double r, double arg) {
  cplx inv_z = std::polar(1.0 / r, -arg);
  AsymSum s = asymptotic_sum(kind, nu, inv_z);
  double sgn = kind == 1 ? 1.0 : -1.0;
  cplx pre = std::sqrt(2.0 / (kPi * r)) * std::polar(1.0, -0.5 * arg) *
             std::exp(-sgn * kI * (0.5 * kPi * nu + 0.25 * kPi));
  cplx v = pre * s.sum;
  double err = std::abs(pre) * s.err + 4.0 * kEps * std::abs(v);
  return {v, err, Method::asymptotic};
}

EvalResult full_expansion(int kind, cplx nu, double r, double arg) {
  EvalResult s = scaled_expansion(kind, nu, r, arg);
  cplx z = std::polar(r, arg);
  cplx phase = std::exp((kind == 1 ? kI : -kI) * z);
  double mag = std::abs(phase);
  // Forming z from (r, arg) perturbs the phase by ~eps r unless z is real.
  double phase_err = arg == 0.0 ? 2.0 * kEps : kEps * r;
  return {s.value * phase, s.err_estimate * mag + phase_err * std::abs(s.value) * mag, Method::asymptotic};
}

bool accurate(const EvalResult& r, double tol) {
  return std::isfinite(r.value.real()) && std::isfinite(r.value.imag()) &&
         r.err_estimate <= tol * std::abs(r.value);
}

// Reduce arg into [-pi/2, pi/2]: arg = base + m pi.
int half_turns(double arg, double* base) {
  double m = std::round(arg / kPi);
  *base = arg - m * kPi;
  return static_cast<int>(m);
}

struct HankelPair {
  EvalResult h1, h2;
};

EvalResult connection_single(int kind, cplx nu, double r, double arg, const EvalOptions& opts) {
  auto eval = [&](cplx v) {
    using detail::wcplx;
    wcplx wv(v);
    auto jp = detail::j_series(wv, r, arg, opts.max_terms);
    auto jm = detail::j_series(-wv, r, arg, opts.max_terms);
    wcplx i_sin = detail::sin_pi(wv) * wcplx(0, 1);
    wcplx num = kind == 1 ? jm.value - detail::exp_i_pi(-wv) * jp.value
                          : detail::exp_i_pi(wv) * jp.value - jm.value;
    cplx h = (num / i_sin).to_double();
    double scale = std::abs(detail::exp_i_pi(kind == 1 ? -wv : wv).to_double());
    double err = (jm.err + scale * jp.err) / std::abs(i_sin.to_double()) + kEps * std::abs(h);
    return EvalResult{h, err, Method::connection};
  };
  if (distance_to_integer(nu) < kOrderOffsetThreshold) return order_offset_limit(nu, eval);
  return eval(nu);
}

// H1, H2 at r e^{i base}, |base| <= pi/2.
HankelPair hankel_pair_base(cplx nu, double r, double base, const EvalOptions& opts) {
  if (r > opts.series_limit(nu)) {
    HankelPair p{full_expansion(1, nu, r, base), full_expansion(2, nu, r, base)};
    if (r >= opts.asymptotic_limit(nu) ||
        (accurate(p.h1, opts.tol) && accurate(p.h2, opts.tol)))
      return p;
  }
  return {connection_single(1, nu, r, base, opts), connection_single(2, nu, r, base, opts)};
}

// sin(k pi nu) / sin(pi nu) via the Chebyshev recurrence; regular at integers.
cplx sine_ratio(int k, cplx nu) {
  if (k < 0) return -sine_ratio(-k, nu);
  if (k == 0) return 0.0;
  cplx two_cos = 2.0 * cos_pi(nu);
  cplx prev = 0.0, cur = 1.0;
  for (int j = 1; j < k; ++j) {
    cplx next = two_cos * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double distance_to_integer(cplx nu) { return std::abs(nu - std::round(nu.real())); }

EvalResult order_offset_limit(cplx nu, const std::function<EvalResult(cplx)>& f, double h) {
  const double n = std::round(nu.real());
  const std::array<double, 5> nodes = {n - h, n - 0.5 * h, n + 0.5 * h, n + h, n + 0.25 * h};
  std::array<EvalResult, 5> vals;
  for (std::size_t j = 0; j < nodes.size(); ++j) vals[j] = f(nodes[j]);

  auto interpolate = [&](std::size_t count, double* propagated) {
    cplx acc = 0.0;
    double err = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      cplx w = 1.0;
      for (std::size_t k = 0; k < count; ++k)
        if (k != j) w *= (nu - nodes[k]) / (nodes[j] - nodes[k]);
      acc += w * vals[j].value;
      err += std::abs(w) * vals[j].err_estimate;
    }
    if (propagated) *propagated = err;
    return acc;
  };
  double propagated = 0.0;
  cplx cubic = interpolate(4, &propagated);
  cplx quartic = interpolate(5, nullptr);
  return {cubic, std::abs(quartic - cubic) + propagated, Method::limit};
}

EvalResult bessel_j_series(cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) return value_at_zero(nu);
  DoubleSum d = double_j_series(nu, z.modulus(), z.arg(), opts.max_terms);
  if (d.converged) {
    double mag = std::abs(d.value);
    double err = 8.0 * kEps * d.abs_sum + 4.0 * kEps * (1.0 + std::abs(nu)) * mag + d.last;
    if (err <= 0.1 * opts.tol * mag) return {d.value, err, Method::series};
  }
  return wide_j(nu, z.modulus(), z.arg(), opts);
}

EvalResult hankel_asymptotic_scaled(int kind, cplx nu, const BranchedArgument& z,
                                    const EvalOptions& opts) {
  check_sector(kind, z.arg(), opts.sector_margin);
  if (z.is_zero()) throw DomainError("Hankel expansion at z = 0");
  EvalResult r = scaled_expansion(kind, nu, z.modulus(), z.arg());
  if (!accurate(r, opts.tol)) throw AccuracyError("Hankel expansion cannot reach tolerance");
  return r;
}

EvalResult hankel_asymptotic(int kind, cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  check_sector(kind, z.arg(), opts.sector_margin);
  if (z.is_zero()) throw DomainError("Hankel expansion at z = 0");
  EvalResult r = full_expansion(kind, nu, z.modulus(), z.arg());
  if (!accurate(r, opts.tol)) throw AccuracyError("Hankel expansion cannot reach tolerance");
  return r;
}

EvalResult bessel_j_asymptotic(cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) throw DomainError("Hankel expansion at z = 0");
  double base;
  int m = half_turns(z.arg(), &base);
  EvalResult h1 = full_expansion(1, nu, z.modulus(), base);
  EvalResult h2 = full_expansion(2, nu, z.modulus(), base);
  cplx factor = m == 0 ? cplx(1.0) : std::exp(kI * kPi * nu * double(m));
  EvalResult r{0.5 * (h1.value + h2.value) * factor,
               0.5 * (h1.err_estimate + h2.err_estimate) * std::abs(factor), Method::asymptotic};
  // Relative to the Hankel magnitudes, so zeros of J do not count as failures.
  double scale = 0.5 * (std::abs(h1.value) + std::abs(h2.value)) * std::abs(factor);
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()) || !(r.err_estimate <= opts.tol * scale))
    throw AccuracyError("Hankel expansion cannot reach tolerance");
  return r;
}

EvalResult bessel_j(cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) return value_at_zero(nu);
  double r = z.modulus();
  if (r > opts.series_limit(nu)) {
    try {
      return bessel_j_asymptotic(nu, z, opts);
    } catch (const AccuracyError&) {
      if (r >= opts.asymptotic_limit(nu)) throw;
    }
  }
  return bessel_j_series(nu, z, opts);
}

EvalResult hankel(int kind, cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  if (kind != 1 && kind != 2) throw DomainError("Hankel kind must be 1 or 2");
  if (z.is_zero()) throw DomainError("Hankel function at z = 0");
  double base;
  int m = half_turns(z.arg(), &base);
  HankelPair p = hankel_pair_base(nu, z.modulus(), base, opts);
  if (m == 0) return kind == 1 ? p.h1 : p.h2;
  // Continuation from z e^{i base} to z e^{i (base + m pi)}.
  cplx c1, c2;
  if (kind == 1) {
    c1 = -sine_ratio(m - 1, nu);
    c2 = -std::exp(-kI * kPi * nu) * sine_ratio(m, nu);
  } else {
    c1 = std::exp(kI * kPi * nu) * sine_ratio(m, nu);
    c2 = sine_ratio(m + 1, nu);
  }
  cplx v = c1 * p.h1.value + c2 * p.h2.value;
  double err = std::abs(c1) * p.h1.err_estimate + std::abs(c2) * p.h2.err_estimate +
               kEps * (std::abs(c1 * p.h1.value) + std::abs(c2 * p.h2.value));
  return {v, err, p.h1.method};
}

EvalResult bessel_y(cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) throw DomainError("Y_nu(0) is singular");
  double r = z.modulus();
  if (r > opts.series_limit(nu)) {
    EvalResult h1 = hankel(1, nu, z, opts);
    EvalResult h2 = hankel(2, nu, z, opts);
    EvalResult y{(h1.value - h2.value) / (2.0 * kI), 0.5 * (h1.err_estimate + h2.err_estimate),
                 h1.method};
    if (r >= opts.asymptotic_limit(nu) || accurate(y, opts.tol)) return y;
  }
  auto eval = [&](cplx v) {
    using detail::wcplx;
    wcplx wv(v);
    auto jp = detail::j_series(wv, r, z.arg(), opts.max_terms);
    auto jm = detail::j_series(-wv, r, z.arg(), opts.max_terms);
    wcplx cosv = detail::cos_pi(wv), sinv = detail::sin_pi(wv);
    cplx y = ((jp.value * cosv - jm.value) / sinv).to_double();
    double err = (jp.err * std::abs(cosv.to_double()) + jm.err) / std::abs(sinv.to_double()) +
                 kEps * std::abs(y);
    return EvalResult{y, err, Method::connection};
  };
  if (distance_to_integer(nu) < kOrderOffsetThreshold) return order_offset_limit(nu, eval);
  return eval(nu);
}

EvalResult bessel_i(cplx nu, const BranchedArgument& z, const EvalOptions& opts) {
  if (z.is_zero()) return value_at_zero(nu);
  // I_nu(z) = e^{i pi nu/2} J_nu(z e^{-i pi/2}) = e^{-i pi nu/2} J_nu(z e^{i pi/2})
  bool upper = z.arg() > 0.0;
  BranchedArgument w = z.rotated(upper ? -0.5 * kPi : 0.5 * kPi);
  cplx factor = std::exp((upper ? 0.5 : -0.5) * kI * kPi * nu);
  EvalResult j = bessel_j(nu, w, opts);
  return {factor * j.value, std::abs(factor) * j.err_estimate, j.method};
}

}  // namespace besselft
