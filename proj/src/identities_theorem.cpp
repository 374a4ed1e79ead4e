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

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// J_{-mu}(w) J_{-mu}(conj w) - J_mu(w) J_mu(conj w) from four direct evaluations.
// The products cancel by up to e^{2 |Im w|}, so moderate |w| is summed in binary128.
cplx direct_pair(cplx mu, double modulus, double arg) {
  if (modulus <= 40.0) {
    using detail::wcplx;
    const wcplx m(mu);
    auto j = [&](wcplx order, double a) { return detail::j_series(order, modulus, a, 400).value; };
    wcplx pair = j(-m, arg) * j(-m, -arg) - j(m, arg) * j(m, -arg);
    return pair.to_double();
  }
  BranchedArgument w = BranchedArgument::polar(modulus, arg), wc = w.conj();
  return bessel_j(-mu, w).value * bessel_j(-mu, wc).value - bessel_j(mu, w).value * bessel_j(mu, wc).value;
}

double reduce_angle(double theta) { return theta - kTwoPi * std::floor(theta / kTwoPi); }

// Theta moved into (-pi/2, pi/2]; a half turn flips the sign of the exponent.
void reduce_to_half_plane(double theta, int sign, double* reduced, int* reduced_sign) {
  double t = reduce_angle(theta);
  *reduced_sign = sign;
  if (t > 1.5 * kPi) {
    t -= kTwoPi;
  } else if (t > 0.5 * kPi) {
    t -= kPi;
    *reduced_sign = -sign;
  }
  *reduced = t;
}

SplitFunction bessel_sum_split(cplx nu, double a) {
  auto slow = [nu, a](int kind) {
    return [nu, a, kind](cplx x) {
      BranchedArgument z(a * x);
      return 0.5 * (hankel_asymptotic_scaled(kind, -nu, z).value + hankel_asymptotic_scaled(kind, nu, z).value);
    };
  };
  return SplitFunction{
      [nu, a](double x) { return bessel_j(-nu, BranchedArgument(a * x)).value + bessel_j(nu, BranchedArgument(a * x)).value; },
      {{a, slow(1)}, {-a, slow(2)}},
      std::max(2.0, (25.0 + std::norm(nu)) / a + 1.0)};
}

}  // namespace

cplx theorem_rhs(cplx mu, double y, double theta) {
  BranchedArgument z = BranchedArgument::polar(1.0 / (16.0 * y * y), -2.0 * theta);
  return expi2pi(std::cos(theta) / y) * spherical_j(0.5 * mu, z).value / (4.0 * y);
}

cplx reformulated_rhs(cplx mu, double y, double theta, int sign) {
  return cos_pi(mu) / (2.0 * y) * expi2pi(-double(sign) * std::cos(theta) / y) * direct_pair(mu, kPi / y, -theta);
}

VerificationReport verify_reformulation_consistency(cplx mu, double y, double theta, const VerifyConfig& cfg) {
  detail::check_reformulation_consistency(mu, y, theta);
  const double tol = cfg.tol.value_or(kTolAlgebraic);
  ParamList params{{"mu", mu}, {"y", y}, {"theta", theta}};
  return detail::run_verifier("consistency", params, tol, [&](std::vector<std::string>& diag) {
    cplx lhs = theorem_rhs(mu, y, theta);
    cplx rhs = 2.0 * kPi * kPi / sin_pi(2.0 * mu) * reformulated_rhs(mu, y, theta, -1);
    diag.push_back("lhs_method=spherical");
    diag.push_back("rhs_method=bessel_products");
    return detail::Sides{lhs, rhs};
  });
}

VerificationReport verify_proof_pipeline(cplx mu, double y, double theta, int sign, const VerifyConfig& cfg) {
  detail::check_proof_pipeline(mu, y, theta, sign);
  const double tol = cfg.tol.value_or(kTolAbsolute);
  ParamList params{{"mu", mu}, {"y", y}, {"theta", theta}, {"sign", double(sign)}};

  double theta_r;
  int sign_r;
  reduce_to_half_plane(theta, sign, &theta_r, &sign_r);
  const cplx nu = 2.0 * mu;
  const double a = kTwoPi / y, c = kTwoPi * std::sin(theta_r) / y;
  const double qtol = detail::radial_tolerance(tol);
  std::vector<VerificationReport> links;
  VerificationReport r = detail::run_verifier("pipeline", params, tol, [&](std::vector<std::string>& diag) {
    const SplitFunction split = bessel_sum_split(nu, a);
    const double end = split.valid_from;

    // (i) angular form on [0, arccos(1/end)] against the t-form on [1, end].
    const double phi_end = std::acos(1.0 / end);
    int pieces = static_cast<int>(std::ceil(phi_end * (a + std::abs(c)) * end * end / kPi)) + 1;
    std::vector<double> br;
    for (int k = 0; k <= pieces; ++k) br.push_back(phi_end * k / pieces);
    QuadOptions o;
    o.throw_on_limit = false;
    o.abs_tol = 1e-3 * qtol;
    QuadResult angular = adaptive_quad(
        [&](double phi) {
          double sec = 1.0 / std::cos(phi);
          return sec * std::cos(c * std::tan(phi)) * split.value(sec);
        },
        br, qtol, o);
    auto t_form = [&](double t) { return split.value(t) * std::cos(c * std::sqrt((t - 1.0) * (t + 1.0))); };
    QuadResult finite_t = secant_singular_integral(t_form, {}, end, a + std::abs(c), qtol);

    // (ii) full t-integral against the product form with w = pi e^{i theta} / y.
    QuadResult t_integral = cosh_substituted_tail(split, c, a, qtol);
    cplx lemma_rhs = 0.5 * kPi * cos_pi(mu) / sin_pi(mu) *
                     bessel_pair_difference(mu, BranchedArgument::polar(kPi / y, theta_r)).value;

    // (iii) prefactors against the closed form.
    cplx assembled = sin_pi(mu) / (kPi * y) * expi2pi(-double(sign_r) * std::cos(theta_r) / y) * t_integral.value;
    cplx closed = reformulated_rhs(mu, y, theta, sign);

    links.push_back(detail::make_report("", {}, angular.value, finite_t.value, tol, {}));
    links.push_back(detail::make_report("", {}, t_integral.value, lemma_rhs, tol, {}));
    links.push_back(detail::make_report("", {}, assembled, closed, tol, {}));
    diag.push_back(describe("link_change_of_variables_rel_err", links[0].rel_err));
    diag.push_back(describe("link_second_lemma_rel_err", links[1].rel_err));
    diag.push_back(describe("link_assembly_rel_err", links[2].rel_err));
    diag.push_back(describe("t_integral", t_integral.value));
    diag.push_back(describe("lhs_err_estimate", t_integral.err_estimate));
    diag.push_back("evaluations=" + std::to_string(angular.evaluations + finite_t.evaluations + t_integral.evaluations));
    return detail::Sides{assembled, closed};
  });
  if (links.size() == 3) {
    // The report carries the worst link; it passes only if every link does.
    r.abs_err = r.rel_err = 0.0;
    r.pass = true;
    for (const auto& link : links) {
      r.abs_err = std::max(r.abs_err, link.abs_err);
      r.rel_err = std::max(r.rel_err, link.rel_err);
      r.pass = r.pass && link.pass;
    }
  }
  return r;
}

QuadResult main_theorem_inner(cplx mu, double y, double theta, double phi, double tol) {
  const double cos_shift = std::cos(phi + theta);
  if (cos_shift == 0.0) throw DomainError("main_theorem_inner: singular angle");
  const double c = 2.0 * y * std::abs(cos_shift);
  const double omega = cos_shift > 0.0 ? -kTwoPi * c : kTwoPi * c;  // e(-2 x y cos(phi + theta)) = e^{i omega x}
  const cplx nu = 2.0 * mu;

  // Along the ray, 4 pi sqrt(x e^{i phi}) is taken modulo pi into the right half-plane.
  const double half = 0.5 * phi - kPi * std::round(0.5 * phi / kPi);
  const double rate = std::cos(half);  // g oscillates as e(+-4 rate sqrt x)
  const double stationary = std::pow(2.0 * rate / c, 2);
  const double X = std::max(10.0, 4.0 * stationary);

  auto g = [&](double x) { return spherical_j(mu, BranchedArgument::polar(x, phi)).value * std::polar(1.0, omega * x); };
  std::vector<double> br{0.0};
  while (br.back() < X) {
    double x = br.back();
    double step = 0.5 / (c + 2.0 * rate / std::sqrt(std::max(x, 1e-3)));
    if (x == 0.0) step = std::min(step, 1.0);
    br.push_back(std::min(X, x + std::max(step, 1e-3)));
  }
  QuadOptions o;
  o.left_power = 4;
  o.throw_on_limit = false;
  o.abs_tol = 1e-3 * tol;
  QuadResult body = adaptive_quad(g, br, tol, o);

  // Beyond X, spherical_j = i pi^2 (e^{i pi nu} H1 H1 - e^{-i pi nu} H2 H2) at 4 pi sqrt x e^{+-i half}.
  auto hankel_part = [nu, half](int kind) {
    return [nu, half, kind](cplx x) {
      cplx root = 4.0 * kPi * std::sqrt(x);
      BranchedArgument w = BranchedArgument::polar(std::abs(root), std::arg(root) + half);
      BranchedArgument wc = BranchedArgument::polar(std::abs(root), std::arg(root) - half);
      const cplx s = double(kind == 1 ? 1 : -1) * kI;
      cplx product = hankel_asymptotic_scaled(kind, nu, w).value * hankel_asymptotic_scaled(kind, nu, wc).value;
      return s * kPi * kPi * std::exp(s * (kPi * nu + 2.0 * root * std::cos(half))) * product;
    };
  };
  QuadResult tail = oscillatory_tail({{omega, hankel_part(1)}, {omega, hankel_part(2)}}, X, tol);
  return {body.value + tail.value, body.err_estimate + tail.err_estimate, body.evaluations + tail.evaluations};
}

namespace {

// Leading large-x behaviour g ~ x^{-1/2} cos(8 pi cos(phi/2) sqrt x) integrated in closed form
// (a Fresnel integral); it carries the whole |c|^{-1/2} singularity of the inner value.
cplx inner_leading_term(double y, double theta, double phi) {
  const double shift = std::cos(phi + theta);
  const double c = 2.0 * y * std::abs(shift);
  const double s = shift < 0.0 ? 1.0 : -1.0;
  return std::sqrt(0.5 / c) * std::exp(kI * s * (0.25 * kPi - 4.0 * kPi * (1.0 + std::cos(phi)) / c));
}

// Integral of the leading term over (p, p + d eta) with v = 1 / c as variable: an
// oscillatory tail in v with frequency -4 pi s (1 + cos p).
QuadResult leading_term_window(double y, double theta, double p, int d, double eta, double tol) {
  const double s = std::sin(p + theta) > 0.0 ? d : -d;
  auto slow = [=](cplx v) {
    cplx t = std::asin(1.0 / (2.0 * y * v));
    cplx phase = -s * 4.0 * kPi * v * (std::cos(p + double(d) * t) - std::cos(p));
    return std::exp(kI * (s * 0.25 * kPi + phase)) * std::sqrt(0.5 * v) /
           (2.0 * y * v * v * std::sqrt(1.0 - 1.0 / (4.0 * y * y * v * v)));
  };
  return oscillatory_tail({{-s * 4.0 * kPi * (1.0 + std::cos(p)), slow}}, 1.0 / (2.0 * y * std::sin(eta)), tol);
}

}  // namespace

VerificationReport verify_main_theorem(cplx mu, double y, double theta, const VerifyConfig& cfg) {
  detail::check_main_theorem(mu, y, theta);
  const double tol = cfg.tol.value_or(kTolDouble);
  ParamList params{{"mu", mu}, {"y", y}, {"theta", theta}};
  return detail::run_verifier("main", params, tol, [&](std::vector<std::string>& diag) {
    const double inner_tol = std::clamp(1e-3 * tol, 1e-9, 1e-5);
    auto inner = [&](double phi) { return main_theorem_inner(mu, y, theta, phi, inner_tol); };

    // Singular points where cos(phi + theta) = 0 sit at lo + pi/2 and lo + 3 pi/2. Where the
    // inner value chirps, a window is cut out and filled in from the leading term plus
    // the remainder at the window edge, which vanishes like sqrt|phi - p|.
    const double lo = -theta, hi = kTwoPi - theta;
    const double window = 0.1;
    IteratedOptions io;
    io.tol = 0.1 * tol;
    io.abs_tol = 1e-6;
    std::vector<double> chirping;
    for (double p : {lo + 0.5 * kPi, lo + 1.5 * kPi}) {
      bool smooth_phase = std::abs(std::cos(0.5 * p)) < 1e-9;  // phi = pi: no chirp, s^2 map
      io.singular_points.push_back(p);
      io.window_half_widths.push_back(smooth_phase ? 0.0 : window);
      if (!smooth_phase) chirping.push_back(p);
    }
    QuadResult lhs = iterated_double(inner, lo, hi, io);
    cplx filled = 0.0;
    double filled_err = 0.0;
    for (double p : chirping) {
      for (int d : {1, -1}) {
        const double edge = p + d * window;
        cplx remainder = inner(edge).value - inner_leading_term(y, theta, edge);
        QuadResult lead = leading_term_window(y, theta, p, d, window, inner_tol);
        filled += lead.value + (2.0 / 3.0) * window * remainder;
        filled_err += lead.err_estimate + window * std::abs(remainder) / 3.0;
      }
    }
    lhs.value += filled;
    lhs.err_estimate += filled_err;
    diag.push_back("lhs_method=iterated_contour_tail");
    diag.push_back(describe("lhs_err_estimate", lhs.err_estimate));
    diag.push_back("evaluations=" + std::to_string(lhs.evaluations));
    diag.push_back(describe("window_half_width", window));
    diag.push_back(describe("window_fill", filled));

    cplx rhs = theorem_rhs(mu, y, theta);
    if (distance_to_integer(2.0 * mu) >= 1e-3) {
      cplx minus = 2.0 * kPi * kPi / sin_pi(2.0 * mu) * reformulated_rhs(mu, y, theta, -1);
      cplx plus = reformulated_rhs(mu, y, theta, 1) * expi2pi(2.0 * std::cos(theta) / y) * 2.0 * kPi * kPi /
                  sin_pi(2.0 * mu);
      diag.push_back(describe("reformulated_minus_rel_err", std::abs(minus - rhs) / std::abs(rhs)));
      diag.push_back(describe("sign_coherence_rel_err", std::abs(plus - minus) / std::abs(minus)));
    }
    return detail::Sides{lhs.value, rhs};
  });
}

}  // namespace besselft
