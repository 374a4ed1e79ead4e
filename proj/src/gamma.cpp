#include "besselft/gamma.hpp"

#include <array>
#include <cmath>

namespace besselft {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + double(k));
  cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

bool near_pole(cplx z, double* nearest) {
  double n = std::round(z.real());
  *nearest = n;
  return n <= 0.0 && std::abs(z - n) < 1e-12;
}

}  // namespace

cplx sin_pi(cplx z) {
  double n = std::round(z.real());
  double frac = z.real() - n;  // exact
  cplx s = std::sin(kPi * cplx(frac, z.imag()));
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

cplx cos_pi(cplx z) {
  double n = std::round(z.real());
  double frac = z.real() - n;
  cplx c = std::cos(kPi * cplx(frac, z.imag()));
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

cplx gamma(cplx z) {
  double n;
  if (near_pole(z, &n)) throw PoleError("gamma: argument at a non-positive integer");
  if (z.real() < 0.5) return kPi / (sin_pi(z) * std::exp(log_gamma_right(1.0 - z)));
  return std::exp(log_gamma_right(z));
}

cplx reciprocal_gamma(cplx z) {
  double n = std::round(z.real());
  if (n <= 0.0 && z == cplx(n, 0.0)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * std::exp(log_gamma_right(1.0 - z)) / kPi;
  return std::exp(-log_gamma_right(z));
}

}  // namespace besselft
