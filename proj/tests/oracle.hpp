#pragma once

// 50-digit reference implementations used only by the tests.

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>

namespace oracle {

using real50 = boost::multiprecision::cpp_bin_float_50;
using cplx50 = boost::multiprecision::cpp_complex_50;

inline cplx50 to50(std::complex<double> z) { return cplx50(real50(z.real()), real50(z.imag())); }
inline std::complex<double> to_double(const cplx50& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline real50 pi50() { return boost::math::constants::pi<real50>(); }

// 1/Gamma(z): shift to Re z >= 60, then Stirling with 30 Bernoulli terms.
inline cplx50 rgamma(cplx50 z) {
  if (z.imag() == 0 && z.real() <= 0 && z.real() == round(z.real())) return cplx50(0);
  cplx50 prod(1);
  while (z.real() < 60) {
    prod *= z;
    z += 1;
  }
  cplx50 inv = cplx50(1) / z, inv2 = inv * inv, pw = inv, corr(0);
  for (int k = 1; k <= 30; ++k) {
    real50 b = boost::math::bernoulli_b2n<real50>(k);
    corr += pw * b / real50(2 * k * (2 * k - 1));
    pw *= inv2;
  }
  cplx50 lg = (z - real50(0.5)) * log(z) - z + log(2 * pi50()) / 2 + corr;
  return prod * exp(-lg);
}

inline std::complex<double> gamma(std::complex<double> z) { return to_double(cplx50(1) / rgamma(to50(z))); }

// J_nu(r e^{i arg}) by the power series with the carried branch.
inline cplx50 bessel_j(cplx50 nu, real50 r, real50 arg) {
  cplx50 half_log(log(r / 2), arg);
  cplx50 half_sq = exp(cplx50(2 * log(r / 2), 2 * arg));
  int start = 0;
  cplx50 term;
  if (nu.imag() == 0 && nu.real() <= 0 && nu.real() == round(nu.real())) {
    start = static_cast<int>(-nu.real());
    real50 fact = 1;
    for (int k = 2; k <= start; ++k) fact *= k;
    term = exp((nu + real50(2 * start)) * half_log) / fact;
    if (start % 2) term = -term;
  } else {
    term = exp(nu * half_log) * rgamma(nu + real50(1));
  }
  cplx50 sum(0);
  for (int n = start; n < start + 400; ++n) {
    sum += term;
    if (n > r && abs(term) < real50("1e-55") * abs(sum)) break;
    term *= -half_sq / (real50(n + 1) * (nu + real50(n + 1)));
  }
  return sum;
}

inline std::complex<double> bessel_j(std::complex<double> nu, double r, double arg) {
  return to_double(bessel_j(to50(nu), real50(r), real50(arg)));
}

inline std::complex<double> bessel_j(std::complex<double> nu, std::complex<double> z) {
  return bessel_j(nu, std::abs(z), std::arg(z));
}

inline cplx50 sin_pi(cplx50 nu) { return sin(pi50() * nu); }
inline cplx50 cos_pi(cplx50 nu) { return cos(pi50() * nu); }

// Y_nu from the connection formula; at integer orders by symmetric offsets
// nu +- 1e-20 (second-order error far below double precision).
inline std::complex<double> bessel_y(std::complex<double> nu_d, double r, double arg) {
  auto direct = [&](cplx50 nu) {
    return (bessel_j(nu, real50(r), real50(arg)) * cos_pi(nu) - bessel_j(-nu, real50(r), real50(arg))) /
           sin_pi(nu);
  };
  cplx50 nu = to50(nu_d);
  if (nu.imag() == 0 && nu.real() == round(nu.real())) {
    real50 h("1e-20");
    return to_double((direct(nu + h) + direct(nu - h)) / 2);
  }
  return to_double(direct(nu));
}

// I_nu(x), x > 0.
inline std::complex<double> bessel_i(std::complex<double> nu_d, double x) {
  cplx50 nu = to50(nu_d);
  real50 half = real50(x) / 2;
  cplx50 term = exp(nu * log(half)) * rgamma(nu + real50(1)), sum(0);
  for (int n = 0; n < 400; ++n) {
    sum += term;
    if (n > x && abs(term) < real50("1e-55") * abs(sum)) break;
    term *= half * half / (real50(n + 1) * (nu + real50(n + 1)));
  }
  return to_double(sum);
}

// Pair difference J_{-nu}(w)J_{-nu}(conj w) - J_nu(w)J_nu(conj w).
inline cplx50 pair_difference(cplx50 nu, real50 r, real50 arg) {
  return bessel_j(-nu, r, arg) * bessel_j(-nu, r, -arg) - bessel_j(nu, r, arg) * bessel_j(nu, r, -arg);
}

// Spherical Bessel function of index mu at z = modulus e^{i arg}.
inline std::complex<double> spherical_j(std::complex<double> mu_d, double modulus, double arg) {
  cplx50 nu = to50(mu_d) * 2;
  real50 r = 4 * pi50() * sqrt(real50(modulus));
  return to_double(2 * pi50() * pi50() / sin_pi(nu) * pair_difference(nu, r, real50(arg) / 2));
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace oracle
