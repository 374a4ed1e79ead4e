#pragma once

// Quad-precision (binary128) helpers for cancellation-prone Bessel series.

#include <quadmath.h>

#include "besselft/types.hpp"

namespace besselft::detail {

using wreal = __float128;

struct wcplx {
  wreal re = 0;
  wreal im = 0;

  wcplx() = default;
  wcplx(wreal r, wreal i = 0) : re(r), im(i) {}
  explicit wcplx(cplx z) : re(z.real()), im(z.imag()) {}

  cplx to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  friend wcplx operator+(wcplx a, wcplx b) { return {a.re + b.re, a.im + b.im}; }
  friend wcplx operator-(wcplx a, wcplx b) { return {a.re - b.re, a.im - b.im}; }
  friend wcplx operator-(wcplx a) { return {-a.re, -a.im}; }
  friend wcplx operator*(wcplx a, wcplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend wcplx operator*(wcplx a, wreal s) { return {a.re * s, a.im * s}; }
  friend wcplx operator/(wcplx a, wcplx b);
  friend wcplx operator/(wcplx a, wreal s) { return {a.re / s, a.im / s}; }
  wcplx& operator+=(wcplx b) { return *this = *this + b; }
  wcplx& operator-=(wcplx b) { return *this = *this - b; }
  wcplx& operator*=(wcplx b) { return *this = *this * b; }
};

inline constexpr double kWideEps = 1.93e-34;

wreal wide_pi();
wreal abs(wcplx z);
wcplx conj(wcplx z);
wcplx exp(wcplx z);
wcplx log(wcplx z);  // principal branch
wcplx polar(wreal r, wreal theta);
wcplx sin_pi(wcplx z);
wcplx cos_pi(wcplx z);
wcplx exp_i_pi(wcplx nu);  // exp(i pi nu)

// 1/Gamma(z): upward shift to Re z >= 40 then Stirling. Exactly 0 at poles.
wcplx reciprocal_gamma(wcplx z);

struct WideSum {
  wcplx value;
  double err = 0.0;  // absolute: rounding plus truncation
  int terms = 0;
};

// J_nu(z) for z = r e^{i arg} by direct power series, all in binary128.
WideSum j_series(wcplx nu, double r, double arg, int max_terms);

// I_nu(x) for real x > 0 by its power series.
WideSum i_series(wcplx nu, double x, int max_terms);

}  // namespace besselft::detail
