#include "wide.hpp"

#include <array>

namespace besselft::detail {

wcplx operator/(wcplx a, wcplx b) {
  // Smith's algorithm.
  if (fabsq(b.re) >= fabsq(b.im)) {
    wreal r = b.im / b.re;
    wreal d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  wreal r = b.re / b.im;
  wreal d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

wreal wide_pi() { return M_PIq; }

wreal abs(wcplx z) { return hypotq(z.re, z.im); }

wcplx conj(wcplx z) { return {z.re, -z.im}; }

wcplx polar(wreal r, wreal theta) {
  wreal s, c;
  sincosq(theta, &s, &c);
  return {r * c, r * s};
}

wcplx exp(wcplx z) { return polar(expq(z.re), z.im); }

wcplx log(wcplx z) { return {logq(abs(z)), atan2q(z.im, z.re)}; }

wcplx sin_pi(wcplx z) {
  wreal n = roundq(z.re);
  wreal x = M_PIq * (z.re - n), y = M_PIq * z.im;
  wreal s, c;
  sincosq(x, &s, &c);
  wcplx v{s * coshq(y), c * sinhq(y)};
  return fmodq(n, 2) == 0 ? v : -v;
}

wcplx cos_pi(wcplx z) {
  wreal n = roundq(z.re);
  wreal x = M_PIq * (z.re - n), y = M_PIq * z.im;
  wreal s, c;
  sincosq(x, &s, &c);
  wcplx v{c * coshq(y), -s * sinhq(y)};
  return fmodq(n, 2) == 0 ? v : -v;
}

wcplx exp_i_pi(wcplx nu) {
  wreal n = roundq(nu.re);
  wcplx v = polar(expq(-M_PIq * nu.im), M_PIq * (nu.re - n));
  return fmodq(n, 2) == 0 ? v : -v;
}

namespace {

struct Fraction {
  double num, den;
};

// B_2 .. B_30
constexpr std::array<Fraction, 15> kBernoulli = {{{1, 6},
                                                  {-1, 30},
                                                  {1, 42},
                                                  {-1, 30},
                                                  {5, 66},
                                                  {-691, 2730},
                                                  {7, 6},
                                                  {-3617, 510},
                                                  {43867, 798},
                                                  {-174611, 330},
                                                  {854513, 138},
                                                  {-236364091, 2730},
                                                  {8553103, 6},
                                                  {-23749461029.0, 870},
                                                  {8615841276005.0, 14322}}};

bool is_nonpositive_integer(wcplx z) { return z.im == 0 && z.re <= 0 && z.re == roundq(z.re); }

}  // namespace

wcplx reciprocal_gamma(wcplx z) {
  if (is_nonpositive_integer(z)) return {0, 0};
  wcplx prod{1, 0};
  wcplx w = z;
  while (w.re < 40) {
    prod *= w;
    w += wcplx{1, 0};
  }
  wcplx inv_w = wcplx{1, 0} / w;
  wcplx inv_w2 = inv_w * inv_w;
  wcplx corr{0, 0};
  wcplx pow = inv_w;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    wreal two_k = 2 * wreal(k + 1);
    wreal coef = wreal(kBernoulli[k].num) / wreal(kBernoulli[k].den) / (two_k * (two_k - 1));
    corr += pow * coef;
    pow *= inv_w2;
  }
  wcplx log_gamma = (w - wcplx{0.5q, 0}) * log(w) - w + wcplx{0.5q * logq(2 * M_PIq), 0} + corr;
  return prod * exp(-log_gamma);
}

namespace {

// Sum of sign^n (z/2)^{nu+2n} / (n! Gamma(nu+n+1)) with (z/2)^2 = half_sq.
WideSum power_series(wcplx nu, wcplx log_half, wcplx half_sq, wreal sign, double half_mod,
                     int max_terms) {
  WideSum out;
  int start = 0;
  wcplx term;
  if (is_nonpositive_integer(nu)) {
    // Terms with n < -nu vanish; the first surviving one has Gamma(1) in the denominator.
    start = static_cast<int>(-nu.re);
    wreal fact = 1;
    for (int k = 2; k <= start; ++k) fact *= k;
    term = exp((nu + wcplx{wreal(2 * start), 0}) * log_half) / fact;
    if (start % 2 == 1) term = term * sign;
  } else {
    term = exp(nu * log_half) * reciprocal_gamma(nu + wcplx{1, 0});
  }
  wcplx sum{0, 0};
  wreal abs_sum = 0;
  int small_run = 0;
  for (int n = start; n < start + max_terms; ++n) {
    sum += term;
    wreal mag = abs(term);
    abs_sum += mag;
    ++out.terms;
    if (mag <= 1e-34q * abs(sum) || (mag == 0 && abs(sum) == 0)) {
      if (++small_run >= 3 && n + 1 > half_mod) {
        out.value = sum;
        out.err = static_cast<double>(4 * kWideEps * abs_sum + mag);
        return out;
      }
    } else {
      small_run = 0;
    }
    wcplx denom = wcplx{wreal(n + 1), 0} * (nu + wcplx{wreal(n + 1), 0});
    term = term * half_sq * sign / denom;
  }
  throw NonConvergence("power series did not converge within max_terms");
}

}  // namespace

WideSum j_series(wcplx nu, double r, double arg, int max_terms) {
  if (r == 0.0) {
    WideSum out;
    out.value = (nu.re == 0 && nu.im == 0) ? wcplx{1, 0} : wcplx{0, 0};
    out.terms = 1;
    return out;
  }
  wreal half = wreal(r) / 2;
  wcplx log_half{logq(half), wreal(arg)};
  wcplx half_sq = polar(half * half, 2 * wreal(arg));
  return power_series(nu, log_half, half_sq, -1, r / 2, max_terms);
}

WideSum i_series(wcplx nu, double x, int max_terms) {
  wreal half = wreal(x) / 2;
  wcplx log_half{logq(half), 0};
  return power_series(nu, log_half, wcplx{half * half, 0}, 1, x / 2, max_terms);
}

}  // namespace besselft::detail
