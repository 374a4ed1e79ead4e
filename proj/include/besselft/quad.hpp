#pragma once

#include <functional>
#include <vector>

#include "besselft/types.hpp"

namespace besselft {

struct QuadResult {
  cplx value{};
  double err_estimate = 0.0;
  long evaluations = 0;
};

using RealIntegrand = std::function<cplx(double)>;
using ComplexIntegrand = std::function<cplx(cplx)>;

struct QuadOptions {
  double abs_tol = 1e-14;
  int max_depth = 50;
  int max_intervals = 100000;
  // x = a + (b - a) u^left_power on the first interval; > 1 tames x^-s endpoint singularities.
  int left_power = 1;
  int right_power = 1;  // same at the last interval's right end
  bool throw_on_limit = true;
};

// Globally adaptive Gauss-Kronrod (21/10) integration with QUADPACK error
// estimates. Stops when err <= max(tol |value|, abs_tol).
QuadResult adaptive_quad(const RealIntegrand& f, double a, double b, double tol,
                         const QuadOptions& opts = {});
// Same with the interval pre-split at the given ascending breakpoints.
QuadResult adaptive_quad(const RealIntegrand& f, const std::vector<double>& breakpoints, double tol,
                         const QuadOptions& opts = {});

struct RegularizationSchedule {
  double eps_start = 0.5;
  double eps_ratio = 0.5;
  int eps_steps = 12;
  int richardson_depth = 4;
  double truncation_factor = 20.0;  // T(eps) = max(truncation_min, truncation_factor / eps)
  double truncation_min = 50.0;
  double eps_floor = 1e-6;

  double truncation(double eps) const;
  // Steps actually usable without going below eps_floor.
  int usable_steps() const;
};

struct RadialOptions {
  double tol = 1e-8;     // target for successive extrapolants
  double abs_tol = 1e-12;  // floor for values near zero
  double lower = 0.0;    // integrate over [lower, infinity)
  int singular_power = 4;  // power map on the first panel when lower == 0
  // Optional angular frequency of g near x; panels are kept below half its period.
  std::function<double(double)> local_frequency;
  double max_panel = 0.0;  // 0: only the half period of e(cx) limits panel length
};

// lim_{eps -> 0+} of the damped integral of g(x) e^{-eps x} e(sign c x) over [lower, inf),
// by geometric eps schedule and Richardson extrapolation. Throws
// ExtrapolationDivergence if the extrapolants keep drifting apart.
QuadResult regularized_fourier_radial(const RealIntegrand& g, double c, int sign,
                                      const RegularizationSchedule& sched = {},
                                      const RadialOptions& opts = {});

struct IbpTailSpec {
  double sigma = 0.5;  // 1/2 or 1
  cplx beta = 0.0;     // coefficient of i sqrt(x) in the exponent
  int depth = 3;       // expand until every remaining power is >= sigma + depth / 2
};

// Integral of x^-sigma exp(i beta sqrt x - p_sq x) over [x0, inf) by repeated
// integration by parts: boundary terms plus absolutely convergent remainders.
QuadResult ibp_tail(const IbpTailSpec& spec, cplx p_sq, double x0, double tol = 1e-10);

// Piece slow(x) e^{i omega x} of an integrand on [X, inf); slow must extend
// analytically to the ray X + i t / omega.
struct TailComponent {
  cplx omega;
  ComplexIntegrand slow;
};

// Sum of the component integrals over [X, inf): contour rotation for omega != 0,
// x = X / u^2 for omega == 0.
QuadResult oscillatory_tail(const std::vector<TailComponent>& parts, double X, double tol);

// Integral of h(x) / sqrt(x^2 - 1) over (1, inf): x = cosh u on [1, X] removes the
// endpoint singularity; beyond X the integrand is given by tail components.
QuadResult secant_singular_integral(const std::function<cplx(double)>& h_of_x,
                                    const std::vector<TailComponent>& tail, double X,
                                    double oscillation_rate, double tol);

// g with an analytic large-x split g(x) = sum_k e^{i freq_k x} slow_k(x), valid for x >= valid_from.
struct SplitFunction {
  RealIntegrand value;
  std::vector<std::pair<double, ComplexIntegrand>> split;
  double valid_from = 1.0;
};

// Integral of g(x) cos(c sqrt(x^2-1)) / sqrt(x^2-1) over (1, inf).
// `a` is the oscillation frequency of g.
QuadResult cosh_substituted_tail(const SplitFunction& g, double c, double a, double tol);

struct IteratedOptions {
  double tol = 1e-4;
  double abs_tol = 1e-10;
  // Interior points where the inner value is singular; each is approached by
  // phi = phi0 -+ s^2 from both sides unless it is excluded with a window.
  std::vector<double> singular_points;
  std::vector<double> window_half_widths;  // 0: no window at that point
};

// Outer integral over [lo, hi] of inner(phi); err adds the largest inner error
// times the measure. Inner exceptions become InnerFailure carrying phi.
QuadResult iterated_double(const std::function<QuadResult(double)>& inner, double lo, double hi,
                           const IteratedOptions& opts = {});

}  // namespace besselft
