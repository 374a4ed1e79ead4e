#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace besselft {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// e(x) = exp(2 pi i x)
inline cplx expi2pi(cplx x) { return std::exp(cplx(0.0, 2.0 * kPi) * x); }

enum class Method { series, asymptotic, connection, limit };

std::string_view to_string(Method m);

struct EvalResult {
  cplx value{};
  double err_estimate = 0.0;
  Method method = Method::series;
};

struct EvalOptions {
  double tol = 1e-12;
  int max_terms = 200;
  double sector_margin = 0.05;
  // Series when |z| <= series_base + |nu|^2, asymptotic when |z| >= asymptotic_base + |nu|^2.
  double series_base = 12.0;
  double asymptotic_base = 25.0;

  double series_limit(cplx nu) const { return series_base + std::norm(nu); }
  double asymptotic_limit(cplx nu) const { return asymptotic_base + std::norm(nu); }
};

// A complex number together with the branch of its argument. Modulus and
// argument are the primary data so that powers z^nu follow the carried branch.
class BranchedArgument {
 public:
  BranchedArgument() = default;
  BranchedArgument(cplx z);  // principal argument in (-pi, pi]
  BranchedArgument(double x) : BranchedArgument(cplx(x, 0.0)) {}

  static BranchedArgument polar(double modulus, double arg);
  // Throws DomainError unless arg agrees with the direction of z modulo 2 pi.
  static BranchedArgument with_arg(cplx z, double arg);

  cplx value() const;
  double modulus() const { return modulus_; }
  double arg() const { return arg_; }
  bool is_zero() const { return modulus_ == 0.0; }

  // Conjugate point on the conjugate branch: arg -> -arg.
  BranchedArgument conj() const { return polar(modulus_, -arg_); }
  BranchedArgument rotated(double dtheta) const { return polar(modulus_, arg_ + dtheta); }
  BranchedArgument scaled(double factor) const;  // factor > 0
  BranchedArgument sqrt() const;

 private:
  double modulus_ = 0.0;
  double arg_ = 0.0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BESSELFT_ERROR(Name) \
  class Name : public Error { \
   public: \
    using Error::Error; \
  }

BESSELFT_ERROR(PoleError);
BESSELFT_ERROR(DomainError);
BESSELFT_ERROR(NonConvergence);
BESSELFT_ERROR(SectorError);
BESSELFT_ERROR(AccuracyError);
BESSELFT_ERROR(UnsupportedIndex);
BESSELFT_ERROR(PreconditionError);
BESSELFT_ERROR(SubdivisionLimit);
BESSELFT_ERROR(ExtrapolationDivergence);
BESSELFT_ERROR(TailBoundExceeded);
BESSELFT_ERROR(ParseError);

#undef BESSELFT_ERROR

class InnerFailure : public Error {
 public:
  InnerFailure(double phi, const std::string& what)
      : Error("inner integral failed at phi=" + std::to_string(phi) + ": " + what), phi_(phi) {}
  double phi() const { return phi_; }

 private:
  double phi_;
};

}  // namespace besselft
