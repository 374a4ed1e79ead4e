#include "besselft/quad.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace besselft {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI{0.0, 1.0};

// GK21 panel: index 0 is the centre, 2i-1 / 2i are centre +- x_i * half.
constexpr int kNodes = 21;
using NodeValues = std::array<cplx, kNodes>;
using NodePositions = std::array<double, kNodes>;

struct Rule {
  std::array<double, 11> x{}, wk{};
  std::array<double, 11> wg{};  // Gauss weight for kronrod index i (0 where not a Gauss node)

  Rule() {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    for (int i = 0; i < 11; ++i) {
      x[i] = Kronrod::abscissa()[i];
      wk[i] = Kronrod::weights()[i];
      wg[i] = (i % 2 == 1) ? Gauss::weights()[i / 2] : 0.0;
    }
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

NodePositions panel_nodes(double a, double b) {
  const Rule& r = rule();
  double centre = 0.5 * (a + b), half = 0.5 * (b - a);
  NodePositions t{};
  t[0] = centre;
  for (int i = 1; i < 11; ++i) {
    t[2 * i - 1] = centre + half * r.x[i];
    t[2 * i] = centre - half * r.x[i];
  }
  return t;
}

struct PanelEstimate {
  cplx value;
  double err = 0.0;
  double floor = 0.0;  // roundoff level
};

PanelEstimate gk21(const NodeValues& f, double half) {
  const Rule& r = rule();
  cplx resk = r.wk[0] * f[0], resg = 0.0;
  double resabs = r.wk[0] * std::abs(f[0]);
  for (int i = 1; i < 11; ++i) {
    cplx s = f[2 * i - 1] + f[2 * i];
    resk += r.wk[i] * s;
    resg += r.wg[i] * s;
    resabs += r.wk[i] * (std::abs(f[2 * i - 1]) + std::abs(f[2 * i]));
  }
  cplx mean = 0.5 * resk;
  double resasc = r.wk[0] * std::abs(f[0] - mean);
  for (int i = 1; i < 11; ++i)
    resasc += r.wk[i] * (std::abs(f[2 * i - 1] - mean) + std::abs(f[2 * i] - mean));
  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  double floor = 50.0 * kEps * resabs;
  err = std::max(err, floor);
  if (!std::isfinite(resk.real()) || !std::isfinite(resk.imag())) err = std::numeric_limits<double>::infinity();
  return {resk, err, floor};
}

// Coordinate map for a segment: x(u) and dx/du.
struct Mapping {
  double from = 0.0, to = 1.0;
  int power = 1;
  bool at_right = false;

  double x(double u) const {
    if (power == 1) return u;
    double len = to - from;
    return at_right ? to - len * std::pow(1.0 - u, power) : from + len * std::pow(u, power);
  }
  double jac(double u) const {
    if (power == 1) return 1.0;
    double len = to - from;
    return len * power * std::pow(at_right ? 1.0 - u : u, power - 1);
  }
};

struct Segment {
  double a, b;
  int map;
  int depth;
  PanelEstimate est;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.est.err < r.est.err; }
};

// Globally adaptive bisection over initial segments. eval(a, b, map) returns a
// panel estimate and must count its own evaluations.
template <class Eval>
QuadResult global_adaptive(const std::vector<Segment>& init, Eval&& eval, double tol,
                           const QuadOptions& opts) {
  std::priority_queue<Segment, std::vector<Segment>, ByError> active;
  std::vector<Segment> settled;
  cplx total = 0.0;
  double err = 0.0;
  auto place = [&](Segment s) {
    total += s.est.value;
    err += s.est.err;
    bool at_floor = s.est.err <= 1.0001 * s.est.floor;
    if (at_floor || s.depth >= opts.max_depth) settled.push_back(s);
    else active.push(s);
  };
  for (Segment s : init) {
    s.est = eval(s.a, s.b, s.map);
    place(s);
  }
  long count = static_cast<long>(init.size());
  bool limited = false;
  while (err > std::max(tol * std::abs(total), opts.abs_tol)) {
    if (active.empty()) {
      limited = std::any_of(settled.begin(), settled.end(), [&](const Segment& s) {
        return s.depth >= opts.max_depth && s.est.err > 1.0001 * s.est.floor;
      });
      break;
    }
    if (count >= opts.max_intervals) {
      limited = true;
      break;
    }
    Segment s = active.top();
    active.pop();
    total -= s.est.value;
    err -= s.est.err;
    double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      s.depth = opts.max_depth;
      place(s);
      continue;
    }
    Segment left{s.a, mid, s.map, s.depth + 1, eval(s.a, mid, s.map)};
    Segment right{mid, s.b, s.map, s.depth + 1, eval(mid, s.b, s.map)};
    place(left);
    place(right);
    ++count;
  }
  // Recompute sums from scratch to shed accumulated cancellation.
  QuadResult out;
  out.value = 0.0;
  out.err_estimate = 0.0;
  auto add = [&](const Segment& s) {
    out.value += s.est.value;
    out.err_estimate += s.est.err;
  };
  for (const auto& s : settled) add(s);
  while (!active.empty()) {
    add(active.top());
    active.pop();
  }
  if (limited && opts.throw_on_limit && out.err_estimate > std::max(tol * std::abs(out.value), opts.abs_tol))
    throw SubdivisionLimit("adaptive quadrature could not reach the requested tolerance");
  return out;
}

std::vector<Mapping> build_mappings(const std::vector<double>& bp, const QuadOptions& opts,
                                    std::vector<Segment>* segs) {
  std::vector<Mapping> maps{Mapping{}};
  std::size_t n = bp.size() - 1;
  for (std::size_t k = 0; k < n; ++k) {
    double a = bp[k], b = bp[k + 1];
    bool left = k == 0 && opts.left_power > 1;
    bool right = k == n - 1 && opts.right_power > 1;
    if (left || right) {
      // Both maps on a single interval: split it so each half gets one.
      if (left && right) {
        double mid = 0.5 * (a + b);
        maps.push_back(Mapping{a, mid, opts.left_power, false});
        segs->push_back({0.0, 1.0, static_cast<int>(maps.size() - 1), 0, {}});
        maps.push_back(Mapping{mid, b, opts.right_power, true});
        segs->push_back({0.0, 1.0, static_cast<int>(maps.size() - 1), 0, {}});
        continue;
      }
      maps.push_back(Mapping{a, b, left ? opts.left_power : opts.right_power, right});
      segs->push_back({0.0, 1.0, static_cast<int>(maps.size() - 1), 0, {}});
    } else {
      segs->push_back({a, b, 0, 0, {}});
    }
  }
  return maps;
}

}  // namespace

QuadResult adaptive_quad(const RealIntegrand& f, const std::vector<double>& breakpoints, double tol,
                         const QuadOptions& opts) {
  if (breakpoints.size() < 2) throw DomainError("adaptive_quad needs at least two breakpoints");
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    if (!(breakpoints[k] > breakpoints[k - 1]) || !std::isfinite(breakpoints[k]))
      throw DomainError("adaptive_quad breakpoints must be finite and increasing");
  std::vector<Segment> segs;
  std::vector<Mapping> maps = build_mappings(breakpoints, opts, &segs);
  long evaluations = 0;
  auto eval = [&](double a, double b, int map) {
    const Mapping& m = maps[map];
    NodePositions u = panel_nodes(a, b);
    NodeValues fv;
    for (int j = 0; j < kNodes; ++j) fv[j] = f(m.x(u[j])) * m.jac(u[j]);
    evaluations += kNodes;
    return gk21(fv, 0.5 * (b - a));
  };
  QuadResult r = global_adaptive(segs, eval, tol, opts);
  r.evaluations = evaluations;
  return r;
}

QuadResult adaptive_quad(const RealIntegrand& f, double a, double b, double tol, const QuadOptions& opts) {
  return adaptive_quad(f, std::vector<double>{a, b}, tol, opts);
}

// ---------------------------------------------------------------------------
// Regularized Fourier integrals

double RegularizationSchedule::truncation(double eps) const {
  return std::max(truncation_min, truncation_factor / eps);
}

int RegularizationSchedule::usable_steps() const {
  int steps = 0;
  double eps = eps_start;
  while (steps < eps_steps && eps * eps_ratio >= eps_floor) {
    eps *= eps_ratio;
    ++steps;
  }
  return steps;
}

namespace {

struct PanelKey {
  double a, b;
  int map;
  bool operator<(const PanelKey& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return map < o.map;
  }
};

struct CachedPanel {
  NodePositions x;
  NodeValues g;  // g(x) * dx/du
};

// Base panels on [lower, T_max]: lengths bounded by half a period of e(cx)
// and of g's own oscillation.
std::vector<double> radial_breaks(double lower, double t_max, double c, const RadialOptions& opts) {
  std::vector<double> br{lower};
  double half_period = 0.5 / c;
  double x = lower;
  while (x < t_max) {
    double len = half_period;
    if (opts.max_panel > 0.0) len = std::min(len, opts.max_panel);
    if (opts.local_frequency) {
      double w = opts.local_frequency(std::max(x, 1e-3));
      if (w > 0.0) len = std::min(len, kPi / w);
    }
    if (x == lower && lower == 0.0) len = std::min(len, 1.0);
    len = std::max(len, 1e-3);
    x += len;
    br.push_back(x);
  }
  return br;
}

}  // namespace

QuadResult regularized_fourier_radial(const RealIntegrand& g, double c, int sign,
                                      const RegularizationSchedule& sched, const RadialOptions& opts) {
  if (!(c > 0.0)) throw DomainError("regularized_fourier_radial requires c > 0");
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  if (!(sched.eps_ratio > 0.0 && sched.eps_ratio < 1.0) || !(sched.eps_start > 0.0))
    throw DomainError("invalid regularization schedule");

  const int steps = sched.usable_steps();
  const double eps_last = sched.eps_start * std::pow(sched.eps_ratio, steps);
  const std::vector<double> breaks = radial_breaks(opts.lower, sched.truncation(eps_last), c, opts);

  QuadOptions qopts;
  qopts.throw_on_limit = false;
  qopts.max_intervals = 400000;
  Mapping first_map{breaks[0], breaks[1], opts.lower == 0.0 ? opts.singular_power : 1, false};

  std::map<PanelKey, CachedPanel> cache;
  long evaluations = 0;
  auto panel = [&](double a, double b, int map) -> const CachedPanel& {
    PanelKey key{a, b, map};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    CachedPanel p;
    NodePositions u = panel_nodes(a, b);
    for (int j = 0; j < kNodes; ++j) {
      if (map == 1) {
        p.x[j] = first_map.x(u[j]);
        p.g[j] = g(p.x[j]) * first_map.jac(u[j]);
      } else {
        p.x[j] = u[j];
        p.g[j] = g(u[j]);
      }
    }
    evaluations += kNodes;
    return cache.emplace(key, p).first->second;
  };

  const cplx freq = cplx(0.0, 2.0 * kPi * sign * c);
  std::vector<cplx> tableau_prev, tableau;
  std::vector<double> quad_err;
  cplx best_prev = 0.0;
  double diff_prev = std::numeric_limits<double>::infinity();
  int growth = 0;
  QuadResult out;
  double eps = sched.eps_start;
  const int depth = std::max(1, sched.richardson_depth);

  for (int k = 0; k <= steps; ++k, eps *= sched.eps_ratio) {
    const double t_cut = sched.truncation(eps);
    std::vector<Segment> segs;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      if (j == 0 && first_map.power > 1) segs.push_back({0.0, 1.0, 1, 0, {}});
      else segs.push_back({breaks[j], breaks[j + 1], 0, 0, {}});
      if (breaks[j + 1] >= t_cut) break;
    }
    const double t_end = segs.back().map == 1 ? breaks[1] : segs.back().b;
    const cplx rate = -eps + freq;
    auto eval = [&](double a, double b, int map) {
      const CachedPanel& p = panel(a, b, map);
      NodeValues fv;
      for (int j = 0; j < kNodes; ++j) fv[j] = p.g[j] * std::exp(rate * p.x[j]);
      return gk21(fv, 0.5 * (b - a));
    };
    QuadResult q = global_adaptive(segs, eval, 0.02 * opts.tol, qopts);

    // Oscillatory tail beyond t_end, from the envelope on the last panel.
    const CachedPanel& last = panel(segs.back().a, segs.back().b, segs.back().map);
    double env = 0.0;
    for (const cplx& v : last.g) env = std::max(env, std::abs(v));
    double tail = 2.0 * env * std::exp(-eps * t_end) / std::abs(rate);
    quad_err.push_back(q.err_estimate + tail);

    // Neville tableau in eps with geometric nodes.
    tableau.assign(1, q.value);
    for (int j = 1; j <= std::min(k, depth); ++j) {
      double rj = std::pow(sched.eps_ratio, j);
      tableau.push_back((tableau[j - 1] - rj * tableau_prev[j - 1]) / (1.0 - rj));
    }
    cplx best = tableau.back();
    tableau_prev = tableau;

    if (!std::isfinite(best.real()) || !std::isfinite(best.imag()))
      throw ExtrapolationDivergence("regularized integral: damped values are not finite");
    if (k >= 1) {
      double diff = std::abs(best - best_prev);
      double propagated = 0.0;
      for (std::size_t j = quad_err.size() - std::min<std::size_t>(quad_err.size(), depth + 1);
           j < quad_err.size(); ++j)
        propagated += 3.0 * quad_err[j];
      out.value = best;
      out.err_estimate = diff + propagated;
      out.evaluations = evaluations;
      if (k >= 3 && diff <= std::max(opts.tol * std::abs(best), opts.abs_tol)) return out;
      growth = diff > diff_prev ? growth + 1 : 0;
      diff_prev = diff;
      if (growth >= 3) throw ExtrapolationDivergence("regularized integral: extrapolants diverge");
    }
    best_prev = best;
  }
  if (growth >= 2) throw ExtrapolationDivergence("regularized integral: extrapolants diverge");
  return out;
}

// ---------------------------------------------------------------------------
// Integration by parts tails

QuadResult ibp_tail(const IbpTailSpec& spec, cplx p_sq, double x0, double tol) {
  if (p_sq == cplx(0.0)) throw DomainError("ibp_tail requires p^2 != 0");
  if (p_sq.real() < -1e-15 * std::abs(p_sq)) throw DomainError("ibp_tail requires Re p^2 >= 0");
  if (!(x0 > 0.0)) throw DomainError("ibp_tail requires x0 > 0");
  const cplx beta = spec.beta;
  auto expo = [&](double x) { return std::exp(kI * beta * std::sqrt(x) - p_sq * x); };

  // Powers are tracked as twice the exponent: term c_k * I(k / 2).
  std::map<int, cplx> terms{{static_cast<int>(std::lround(2.0 * spec.sigma)), 1.0}};
  const int stop = static_cast<int>(std::lround(2.0 * spec.sigma)) + spec.depth;
  cplx boundary = 0.0;
  while (true) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) { return t.first < stop; });
    if (it == terms.end()) break;
    int twice_s = it->first;
    cplx coef = it->second;
    terms.erase(it);
    double s = 0.5 * twice_s;
    // I(s) = x0^-s E(x0) / p^2 - (s / p^2) I(s+1) + (i beta / (2 p^2)) I(s + 1/2)
    boundary += coef * std::pow(x0, -s) * expo(x0) / p_sq;
    if (s != 0.0) terms[twice_s + 2] += -coef * s / p_sq;
    if (beta != cplx(0.0)) terms[twice_s + 1] += coef * kI * beta / (2.0 * p_sq);
  }

  QuadResult out;
  out.value = boundary;
  const double omega = std::abs(p_sq.imag());
  const double decay = p_sq.real();
  for (const auto& [twice_s, coef] : terms) {
    if (coef == cplx(0.0)) continue;
    double s = 0.5 * twice_s;
    double budget = 0.1 * tol / (terms.size() * std::max(1.0, std::abs(coef)));
    // Truncation X: the one-step boundary correction leaves ~ s X^-(s+1) |E| / |q|^2.
    double X = std::max(2.0 * x0, 10.0);
    double stationary = omega > 0.0 ? std::pow(std::abs(beta) / (2.0 * omega), 2) : 0.0;
    X = std::max(X, 4.0 * stationary);
    auto q_of = [&](double x) { return p_sq - kI * beta / (2.0 * std::sqrt(x)); };
    while (s * std::pow(X, -s - 1.0) * std::abs(expo(X)) / std::norm(q_of(X)) > budget && X < 1e7) X *= 1.5;
    if (decay > 0.0) X = std::min(X, std::max(x0 + 60.0 / decay, 2.0 * x0));
    std::vector<double> br{x0};
    double piece = omega > 0.0 ? kPi / omega : X;
    if (std::abs(beta) > 0.0) piece = std::min(piece, std::max(0.25, 2.0 * kPi * std::sqrt(x0) / std::abs(beta)));
    for (double x = x0 + piece; x < X; x += piece) br.push_back(x);
    br.push_back(X);
    QuadOptions qopts;
    qopts.throw_on_limit = false;
    qopts.abs_tol = budget;
    QuadResult body = adaptive_quad([&](double x) { return std::pow(x, -s) * expo(x); }, br, 1e-13, qopts);
    cplx corr = std::pow(X, -s) * expo(X) / q_of(X);
    double corr_err = s * std::pow(X, -s - 1.0) * std::abs(expo(X)) / std::norm(q_of(X));
    out.value += coef * (body.value + corr);
    out.err_estimate += std::abs(coef) * (body.err_estimate + corr_err);
    out.evaluations += body.evaluations;
  }
  out.err_estimate += kEps * std::abs(boundary);
  return out;
}

// ---------------------------------------------------------------------------
// Oscillatory tails and the secant-type singular integral

QuadResult oscillatory_tail(const std::vector<TailComponent>& parts, double X, double tol) {
  QuadResult out;
  QuadOptions qopts;
  qopts.throw_on_limit = false;
  qopts.abs_tol = 1e-3 * tol / std::max<std::size_t>(1, parts.size());
  for (const auto& part : parts) {
    cplx omega = part.omega;
    QuadResult r;
    if (std::abs(omega) > 1e-14) {
      if (omega.imag() < -1e-14) throw DomainError("oscillatory_tail: growing exponential");
      cplx dir = kI / omega;
      cplx phase = std::exp(kI * omega * X);
      r = adaptive_quad([&](double t) { return part.slow(X + dir * t) * dir * phase * std::exp(-t); },
                        std::vector<double>{0.0, 2.0, 8.0, 25.0, 70.0}, 1e-3 * tol, qopts);
    } else {
      qopts.left_power = 1;
      r = adaptive_quad(
          [&](double u) {
            if (u == 0.0) return cplx(0.0);
            return part.slow(cplx(X / (u * u), 0.0)) * (2.0 * X / (u * u * u));
          },
          0.0, 1.0, 1e-3 * tol, qopts);
    }
    out.value += r.value;
    out.err_estimate += r.err_estimate;
    out.evaluations += r.evaluations;
  }
  return out;
}

QuadResult secant_singular_integral(const std::function<cplx(double)>& h_of_x,
                                    const std::vector<TailComponent>& tail, double X,
                                    double oscillation_rate, double tol) {
  if (!(X > 1.0)) throw DomainError("secant_singular_integral requires X > 1");
  double U = std::acosh(X);
  int pieces = static_cast<int>(std::ceil(U * std::max(1.0, oscillation_rate * X) / kPi)) + 1;
  std::vector<double> br;
  for (int k = 0; k <= pieces; ++k) br.push_back(U * k / pieces);
  QuadOptions qopts;
  qopts.throw_on_limit = false;
  qopts.abs_tol = 1e-3 * tol;
  QuadResult body = adaptive_quad([&](double u) { return h_of_x(std::cosh(u)); }, br, 1e-3 * tol, qopts);
  QuadResult rest = oscillatory_tail(tail, X, tol);
  return {body.value + rest.value, body.err_estimate + rest.err_estimate,
          body.evaluations + rest.evaluations};
}

QuadResult cosh_substituted_tail(const SplitFunction& g, double c, double a, double tol) {
  double X = std::max(2.0, g.valid_from);
  auto root = [](cplx x) { return x * std::sqrt(1.0 - 1.0 / (x * x)); };
  std::vector<TailComponent> tail;
  for (const auto& [freq, slow] : g.split) {
    if (c == 0.0) {
      tail.push_back({freq, [slow = slow, root](cplx x) { return slow(x) / root(x); }});
      continue;
    }
    for (int s : {1, -1}) {
      tail.push_back({freq + s * c, [slow = slow, root, c, s](cplx x) {
                        cplx r = root(x);
                        return slow(x) * std::exp(kI * double(s) * c * (r - x)) / (2.0 * r);
                      }});
    }
  }
  auto h = [&](double x) { return g.value(x) * std::cos(c * std::sqrt(x * x - 1.0)); };
  return secant_singular_integral(h, tail, X, std::abs(a) + std::abs(c), tol);
}

// ---------------------------------------------------------------------------
// Iterated double integrals

QuadResult iterated_double(const std::function<QuadResult(double)>& inner, double lo, double hi,
                           const IteratedOptions& opts) {
  struct Cut {
    double at;
    double window;
  };
  std::vector<Cut> cuts;
  for (std::size_t k = 0; k < opts.singular_points.size(); ++k) {
    double p = opts.singular_points[k];
    double w = k < opts.window_half_widths.size() ? opts.window_half_widths[k] : 0.0;
    if (p > lo && p < hi) cuts.push_back({p, w});
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& l, const Cut& r) { return l.at < r.at; });

  double max_inner_err = 0.0;
  long evaluations = 0;
  auto outer = [&](double phi) {
    QuadResult r;
    try {
      r = inner(phi);
    } catch (const InnerFailure&) {
      throw;
    } catch (const Error& e) {
      throw InnerFailure(phi, e.what());
    }
    max_inner_err = std::max(max_inner_err, r.err_estimate);
    evaluations += r.evaluations;
    return r.value;
  };

  // Pieces between consecutive cuts; unwindowed singular ends get a square-root map.
  struct Piece {
    double a, b;
    bool sing_a, sing_b;
  };
  std::vector<Piece> pieces;
  double start = lo;
  bool start_sing = false;
  for (const Cut& cut : cuts) {
    double end = cut.window > 0.0 ? cut.at - cut.window : cut.at;
    if (end > start) pieces.push_back({start, end, start_sing, cut.window == 0.0});
    start = cut.window > 0.0 ? cut.at + cut.window : cut.at;
    start_sing = cut.window == 0.0;
  }
  if (hi > start) pieces.push_back({start, hi, start_sing, false});

  QuadResult out;
  double measure = 0.0;
  for (const Piece& p : pieces) {
    QuadOptions qopts;
    qopts.throw_on_limit = false;
    qopts.abs_tol = opts.abs_tol / pieces.size();
    qopts.max_depth = 30;
    qopts.left_power = p.sing_a ? 2 : 1;
    qopts.right_power = p.sing_b ? 2 : 1;
    QuadResult r = adaptive_quad(outer, p.a, p.b, opts.tol, qopts);
    out.value += r.value;
    out.err_estimate += r.err_estimate;
    measure += p.b - p.a;
  }
  out.err_estimate += max_inner_err * measure;
  out.evaluations = evaluations;
  return out;
}

}  // namespace besselft
