#include "besselft/types.hpp"

#include <cmath>

namespace besselft {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::asymptotic: return "asymptotic";
    case Method::connection: return "connection";
    case Method::limit: return "limit";
  }
  return "unknown";
}

BranchedArgument::BranchedArgument(cplx z) : modulus_(std::abs(z)), arg_(std::arg(z)) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite argument");
  if (modulus_ == 0.0) arg_ = 0.0;
  // std::arg returns -pi for (-x, -0.0); keep the principal range (-pi, pi].
  if (arg_ == -kPi) arg_ = kPi;
}

BranchedArgument BranchedArgument::polar(double modulus, double arg) {
  if (!(modulus >= 0.0) || !std::isfinite(modulus) || !std::isfinite(arg))
    throw DomainError("invalid polar argument");
  BranchedArgument b;
  b.modulus_ = modulus;
  b.arg_ = modulus == 0.0 ? 0.0 : arg;
  return b;
}

BranchedArgument BranchedArgument::with_arg(cplx z, double arg) {
  BranchedArgument principal(z);
  if (principal.is_zero()) return principal;
  double diff = std::remainder(arg - principal.arg_, 2.0 * kPi);
  if (std::abs(diff) > 1e-9) throw DomainError("argument branch inconsistent with z");
  return polar(principal.modulus_, arg);
}

cplx BranchedArgument::value() const { return std::polar(modulus_, arg_); }

BranchedArgument BranchedArgument::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
  return polar(modulus_ * factor, arg_);
}

BranchedArgument BranchedArgument::sqrt() const { return polar(std::sqrt(modulus_), 0.5 * arg_); }

}  // namespace besselft
