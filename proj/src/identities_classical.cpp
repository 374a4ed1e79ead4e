#include <algorithm>
#include <cmath>

#include "besselft/bessel.hpp"
#include "besselft/gamma.hpp"
#include "besselft/identities.hpp"
#include "besselft/spherical.hpp"
#include "identities_common.hpp"
#include "wide.hpp"

namespace besselft {

using detail::describe;
using detail::kI;
using detail::require;

namespace {

cplx j_at(cplx nu, double x) { return bessel_j(nu, BranchedArgument(x)).value; }

// K_nu(z), z > 0: pi (I_{-nu} - I_nu) / (2 sin pi nu) in binary128 for moderate z,
// with the order-offset limit near integers; (pi i / 2) e^{i pi nu / 2} H1_nu(i z) beyond.
cplx bessel_k_real(cplx nu, double z) {
  if (z > 30.0) {
    EvalResult h = hankel(1, nu, BranchedArgument::polar(z, 0.5 * kPi));
    return 0.5 * kPi * kI * std::exp(0.5 * kI * kPi * nu) * h.value;
  }
  auto difference_form = [z](cplx order) {
    using detail::wcplx;
    wcplx wv(order);
    auto plus = detail::i_series(wv, z, 400);
    auto minus = detail::i_series(-wv, z, 400);
    wcplx num = (minus.value - plus.value) * detail::wide_pi();
    return EvalResult{(num / (detail::sin_pi(wv) * detail::wreal(2))).to_double(), 0.0, Method::series};
  };
  if (distance_to_integer(nu) < kOrderOffsetThreshold) return order_offset_limit(nu, difference_form).value;
  return difference_form(nu).value;
}

void add_quad_diagnostics(std::vector<std::string>& diag, const std::string& method, const QuadResult& q) {
  diag.push_back("lhs_method=" + method);
  diag.push_back(describe("lhs_err_estimate", q.err_estimate));
  diag.push_back("evaluations=" + std::to_string(q.evaluations));
}

// sqrt(x^2 - 1) continued off the real axis for |x| >= 2.
cplx secant_root(cplx x) { return x * std::sqrt(1.0 - 1.0 / (x * x)); }

double tail_start(cplx nu, double a) { return std::max(2.0, (25.0 + std::norm(nu)) / a + 1.0); }

}  // namespace

VerificationReport verify_weber_real(cplx nu, double y, int sign, const VerifyConfig& cfg) {
  detail::check_weber_real(nu, y, sign);
  const double tol = cfg.tol.value_or(kTolRegularized);
  ParamList params{{"nu", nu}, {"y", y}, {"sign", double(sign)}};
  return detail::run_verifier("weber", params, tol, [&](std::vector<std::string>& diag) {
    auto g = [&](double x) { return j_at(nu, 4.0 * kPi * std::sqrt(x)) / std::sqrt(x); };
    RadialOptions ro;
    ro.tol = detail::radial_tolerance(tol);
    ro.local_frequency = [](double x) { return 2.0 * kPi / std::sqrt(x); };
    QuadResult lhs = regularized_fourier_radial(g, y, sign, detail::schedule_for(cfg, y, 1.0 / (y * y)), ro);
    add_quad_diagnostics(diag, "regularized", lhs);
    cplx rhs = std::pow(2.0 * y, -0.5) * expi2pi(-double(sign) * (0.5 / y - nu / 8.0 - 0.125)) *
               j_at(0.5 * nu, kPi / y);
    return detail::Sides{lhs.value, rhs};
  });
}

VerificationReport verify_hardy_real(cplx nu, double y, int sign, const VerifyConfig& cfg) {
  detail::check_hardy_real(nu, y, sign);
  const double tol = cfg.tol.value_or(kTolAbsolute);
  ParamList params{{"nu", nu}, {"y", y}, {"sign", double(sign)}};
  return detail::run_verifier("hardy", params, tol, [&](std::vector<std::string>& diag) {
    auto g = [&](double x) { return bessel_k_real(nu, 4.0 * kPi * std::sqrt(x)) / std::sqrt(x); };
    RadialOptions ro;
    ro.tol = detail::radial_tolerance(tol);
    // g ~ x^{-(1 + |Re nu|)/2} at 0; the power map must make it bounded.
    ro.singular_power = std::clamp(static_cast<int>(std::ceil(2.0 / (1.0 - std::abs(nu.real())))) + 1, 4, 60);
    QuadResult lhs = regularized_fourier_radial(g, y, sign, detail::schedule_for(cfg, y, 0.0), ro);
    add_quad_diagnostics(diag, "regularized", lhs);
    const double s = sign;
    auto rhs_at = [&](cplx order) {
      cplx bracket = expi2pi(s * order / 8.0) * j_at(0.5 * order, kPi / y) -
                     expi2pi(-s * order / 8.0) * j_at(-0.5 * order, kPi / y);
      cplx v = -kPi / (2.0 * sin_pi(order)) * std::pow(2.0 * y, -0.5) * expi2pi(s * (0.5 / y + 0.125)) * bracket;
      return EvalResult{v, 0.0, Method::connection};
    };
    cplx rhs = distance_to_integer(nu) < kOrderOffsetThreshold ? order_offset_limit(nu, rhs_at).value : rhs_at(nu).value;
    return detail::Sides{lhs.value, rhs};
  });
}

VerificationReport verify_weber_second(cplx nu, cplx a, cplx p, const VerifyConfig& cfg) {
  detail::check_weber_second(nu, a, p);
  const double arg_p = std::arg(p);
  const bool boundary = std::abs(arg_p) >= 0.25 * kPi - 1e-12;
  const double tol = cfg.tol.value_or(boundary ? kTolRegularized : kTolAbsolute);
  ParamList params{{"nu", nu}, {"a", a}, {"p", p}};
  return detail::run_verifier("weber2", params, tol, [&](std::vector<std::string>& diag) {
    const cplx af = detail::fold_right(a);
    const double mod_a = std::abs(af), arg_a = std::arg(af);
    auto pair = [&](double x) {
      return bessel_pair_difference(nu, BranchedArgument::polar(mod_a * std::sqrt(x), arg_a)).value;
    };
    cplx p_sq = p * p;
    QuadResult lhs;
    if (boundary) {
      const double mod_sq = std::norm(p);
      p_sq = cplx(0.0, arg_p > 0.0 ? mod_sq : -mod_sq);
      const double c = mod_sq / (2.0 * kPi);
      const int sign = arg_p > 0.0 ? -1 : 1;  // e^{-p^2 x} = e(sign c x)
      const double stationary = std::pow(af.real() / (2.0 * kPi * c), 2);
      RadialOptions ro;
      ro.tol = detail::radial_tolerance(tol);
      ro.local_frequency = [&](double x) { return mod_a / std::sqrt(x); };
      lhs = regularized_fourier_radial(pair, c, sign, detail::schedule_for(cfg, c, stationary), ro);
      add_quad_diagnostics(diag, "regularized", lhs);
    } else {
      lhs = detail::damped_integral(pair, p_sq, 1.0, detail::radial_tolerance(tol));
      add_quad_diagnostics(diag, "direct", lhs);
    }
    BranchedArgument z(std::norm(a) / (2.0 * p_sq));
    cplx i_diff = bessel_i(-nu, z).value - bessel_i(nu, z).value;
    cplx rhs = std::exp(-(a * a + std::conj(a) * std::conj(a)) / (4.0 * p_sq)) * i_diff / p_sq;
    return detail::Sides{lhs.value, rhs};
  });
}

VerificationReport verify_first_lemma(cplx nu, cplx a, double c, int sign, const VerifyConfig& cfg) {
  detail::check_first_lemma(nu, a, c, sign);
  const double tol = cfg.tol.value_or(kTolRegularized);
  ParamList params{{"nu", nu}, {"a", a}, {"c", c}, {"sign", double(sign)}};
  return detail::run_verifier("lemma1", params, tol, [&](std::vector<std::string>& diag) {
    const cplx af = detail::fold_right(a);
    const double mod_a = std::abs(af), arg_a = std::arg(af);
    auto pair = [&](double x) {
      return bessel_pair_difference(nu, BranchedArgument::polar(4.0 * kPi * mod_a * std::sqrt(x), arg_a)).value;
    };
    RadialOptions ro;
    ro.tol = detail::radial_tolerance(tol);
    ro.local_frequency = [&](double x) { return 4.0 * kPi * mod_a / std::sqrt(x); };
    const double stationary = std::pow(2.0 * af.real() / c, 2);
    QuadResult lhs = regularized_fourier_radial(pair, c, sign, detail::schedule_for(cfg, c, stationary), ro);
    add_quad_diagnostics(diag, "regularized", lhs);
    const double s = sign;
    const double arg_j = 4.0 * kPi * std::norm(a) / c;
    cplx bracket = std::exp(-s * 0.5 * kPi * kI * nu) * j_at(-nu, arg_j) -
                   std::exp(s * 0.5 * kPi * kI * nu) * j_at(nu, arg_j);
    cplx rhs = -s / (2.0 * kPi * kI * c) * expi2pi(-s * (a * a + std::conj(a * a)) / c) * bracket;
    return detail::Sides{lhs.value, rhs};
  });
}

VerificationReport verify_emot(cplx nu, double a, cplx b, const VerifyConfig& cfg) {
  detail::check_emot(nu, a, b);
  const double tol = cfg.tol.value_or(kTolAbsolute);
  ParamList params{{"nu", nu}, {"a", a}, {"b", b}};
  return detail::run_verifier("emot", params, tol, [&](std::vector<std::string>& diag) {
    const double qtol = detail::radial_tolerance(tol);
    // (0, 1) with x = sin t.
    QuadResult inner{};
    if (b != cplx(0.0)) {
      int pieces = static_cast<int>(std::ceil(0.5 * (a + std::abs(b)))) + 1;
      std::vector<double> br;
      for (int k = 0; k <= pieces; ++k) br.push_back(0.5 * kPi * k / pieces);
      QuadOptions o;
      o.left_power = 3;
      o.throw_on_limit = false;
      o.abs_tol = 1e-3 * qtol;
      inner = adaptive_quad([&](double t) { return j_at(nu, a * std::sin(t)) * std::sin(b * std::cos(t)); }, br,
                            qtol, o);
    }
    // (1, inf) with x = cosh u, Hankel-split tail.
    const double start = tail_start(nu, a);
    auto slow = [&](int kind) {
      return [&, kind](cplx x) {
        cplx h = hankel_asymptotic_scaled(kind, nu, BranchedArgument(a * x)).value;
        cplx s = secant_root(x);
        return 0.5 * h * std::exp(-b * (s - x)) / s;
      };
    };
    std::vector<TailComponent> tail{{a + kI * b, slow(1)}, {-a + kI * b, slow(2)}};
    auto h = [&](double x) { return j_at(nu, a * x) * std::exp(-b * std::sqrt((x - 1.0) * (x + 1.0))); };
    QuadResult outer = secant_singular_integral(h, tail, start, a + std::abs(b), qtol);
    diag.push_back("lhs_method=direct");
    diag.push_back(describe("lhs_err_estimate", inner.err_estimate + outer.err_estimate));
    diag.push_back("evaluations=" + std::to_string(inner.evaluations + outer.evaluations));
    diag.push_back(describe("finite_part", inner.value));
    cplx root = std::sqrt(a * a + b * b);
    cplx rhs = 0.5 * kPi * bessel_j(0.5 * nu, BranchedArgument(0.5 * (root - b))).value *
               bessel_y(0.5 * nu, BranchedArgument(0.5 * (root + b))).value;
    return detail::Sides{inner.value - outer.value, rhs};
  });
}

VerificationReport verify_second_lemma(cplx nu, double a, double c, const VerifyConfig& cfg) {
  detail::check_second_lemma(nu, a, c);
  const double tol = cfg.tol.value_or(kTolAbsolute);
  ParamList params{{"nu", nu}, {"a", a}, {"c", c}};
  return detail::run_verifier("lemma2", params, tol, [&](std::vector<std::string>& diag) {
    auto slow = [&](int kind) {
      return [&, kind](cplx x) {
        BranchedArgument z(a * x);
        return 0.5 * (hankel_asymptotic_scaled(kind, -nu, z).value + hankel_asymptotic_scaled(kind, nu, z).value);
      };
    };
    SplitFunction g{[&](double x) { return j_at(-nu, a * x) + j_at(nu, a * x); },
                    {{a, slow(1)}, {-a, slow(2)}},
                    tail_start(nu, a)};
    QuadResult lhs = cosh_substituted_tail(g, c, a, detail::radial_tolerance(tol));
    add_quad_diagnostics(diag, "cosh_substitution", lhs);
    cplx w(0.5 * std::sqrt(std::max(0.0, a * a - c * c)), 0.5 * c);
    cplx cot = cos_pi(0.5 * nu) / sin_pi(0.5 * nu);
    cplx rhs = 0.5 * kPi * cot * bessel_pair_difference(0.5 * nu, BranchedArgument(w)).value;
    return detail::Sides{lhs.value, rhs};
  });
}

}  // namespace besselft
