#ifndef SPHERE_QMC_LEVELCURVE_HPP
#define SPHERE_QMC_LEVELCURVE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "points.hpp"

namespace sphere_qmc {

/*
 * Pre-image under the Lambert map of the boundary of the cap C(w, t), with
 * w = Phi(u, v). In parameter space it is the zero set of
 *
 *   F(alpha, tau) = |w - Phi(alpha, tau)|^2 - 2 (1 - t)
 *                 = 2 [1 - (1-2v)(1-2tau) - 4 sqrt(v(1-v) tau(1-tau)) cos 2pi(u - alpha)]
 *                   - 2 (1 - t).
 */
struct CapPreimageProblem {
  double u = 0.0;
  double v = 0.5;
  double t = 0.0;

  void validate() const {
    detail::require(u >= 0.0 && u < 1.0, ErrorKind::invalid_input, "u must lie in [0,1)");
    detail::require(v > 0.0 && v < 1.0, ErrorKind::invalid_input,
                    "v must lie in (0,1); polar centres are not supported");
    detail::require(t > -1.0 && t < 1.0, ErrorKind::invalid_input,
                    "t must lie in (-1,1); point caps and the full sphere have no boundary curve");
  }

  SpherePoint center() const { return lambert_map(SquarePoint{u, v}); }
};

namespace detail {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi2 = std::numbers::pi * std::numbers::pi;

inline void require_interior_tau(double tau, const char *who) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorKind::singular_domain,
                std::string(who) + ": tau = " + std::to_string(tau) +
                    " is on the boundary, where the tau-derivatives are singular");
  }
}

inline void require_open_unit(double v, const char *who) {
  require(v > 0.0 && v < 1.0, ErrorKind::invalid_input, std::string(who) + ": v must lie in (0,1)");
}

}  // namespace detail

inline double level_function(const CapPreimageProblem &prob, const SquarePoint &s) {
  const double vv = (1.0 - prob.v) * prob.v;
  const double tt = (1.0 - s.tau) * s.tau;
  const double r = std::sqrt(std::max(0.0, vv * tt));
  return 2.0 * (1.0 - (1.0 - 2.0 * prob.v) * (1.0 - 2.0 * s.tau) -
                4.0 * r * std::cos(detail::two_pi * (prob.u - s.alpha))) -
         2.0 * (1.0 - prob.t);
}

struct LevelGradient {
  double f_alpha = 0.0;
  double f_tau = 0.0;
};

/// First and second partial derivatives of F.
struct LevelDerivatives {
  double f_a = 0.0;
  double f_t = 0.0;
  double f_aa = 0.0;
  double f_at = 0.0;
  double f_tt = 0.0;
};

/// Partials of F at (alpha, tau); depend on the centre (u, v) only.
inline LevelDerivatives level_derivatives(double u, double v, const SquarePoint &s) {
  detail::require_open_unit(v, "level_derivatives");
  detail::require_interior_tau(s.tau, "level_derivatives");
  const double tau = s.tau;
  const double vv = (1.0 - v) * v;
  const double tt = (1.0 - tau) * tau;
  const double r = std::sqrt(vv * tt);
  const double b = std::sqrt(vv) / std::sqrt(tt);
  const double angle = detail::two_pi * (u - s.alpha);
  const double sn = std::sin(angle);
  const double cs = std::cos(angle);
  const double pi = std::numbers::pi;
  LevelDerivatives d;
  d.f_a = -16.0 * pi * r * sn;
  d.f_t = 4.0 * (1.0 - 2.0 * v - (1.0 - 2.0 * tau) * b * cs);
  d.f_aa = 32.0 * detail::pi2 * r * cs;
  d.f_at = -8.0 * pi * (1.0 - 2.0 * tau) * b * sn;
  d.f_tt = 2.0 / tt * b * cs;
  return d;
}

inline LevelGradient level_gradient(const CapPreimageProblem &prob, const SquarePoint &s) {
  const auto d = level_derivatives(prob.u, prob.v, s);
  return {d.f_a, d.f_t};
}

/*
 * Signed curvature of the level curve of F through (alpha, tau):
 *   kappa = (F_aa F_t^2 - 2 F_at F_a F_t + F_tt F_a^2) / (F_a^2 + F_t^2)^(3/2).
 * The gradient vanishes only at the centre (u, v) and at the antipodal
 * parameters (u + 1/2, 1 - v).
 */
inline double signed_curvature(double u, double v, const SquarePoint &s) {
  const auto d = level_derivatives(u, v, s);
  const double g2 = d.f_a * d.f_a + d.f_t * d.f_t;
  if (g2 <= 1e-24) {
    throw Error(ErrorKind::degenerate_cap,
                "signed_curvature: vanishing gradient at (" + std::to_string(s.alpha) + ", " +
                    std::to_string(s.tau) + "), the cap centre or its antipode");
  }
  const double num = d.f_aa * d.f_t * d.f_t - 2.0 * d.f_at * d.f_a * d.f_t + d.f_tt * d.f_a * d.f_a;
  return num / (g2 * std::sqrt(g2));
}

// ---------------------------------------------------------------------------
// Closed forms along special lines

/// kappa on the verticals alpha = u +- 1/4.
inline double curvature_on_quarter_lines(double v, double tau) {
  detail::require_open_unit(v, "curvature_on_quarter_lines");
  detail::require_interior_tau(tau, "curvature_on_quarter_lines");
  const double vv = (1.0 - v) * v;
  const double tt = (1.0 - tau) * tau;
  return -16.0 * detail::pi2 * vv * (1.0 - 2.0 * v) * (1.0 - 2.0 * tau) /
         std::pow(1.0 - 4.0 * vv * (1.0 - 4.0 * detail::pi2 * tt), 1.5);
}

/// kappa on the centre meridian alpha = u (away from the centre itself).
inline double curvature_on_center_meridian(double v, double tau) {
  detail::require_open_unit(v, "curvature_on_center_meridian");
  detail::require_interior_tau(tau, "curvature_on_center_meridian");
  const double vv = (1.0 - v) * v;
  const double tt = (1.0 - tau) * tau;
  const double den = std::abs((1.0 - 2.0 * v) * std::sqrt(tt) - (1.0 - 2.0 * tau) * std::sqrt(vv));
  detail::require(den > 0.0, ErrorKind::degenerate_cap, "curvature_on_center_meridian: tau = v");
  return 8.0 * detail::pi2 * std::sqrt(vv) * tt / den;
}

/// kappa on the antipodal meridian alpha = u + 1/2 (away from the antipode).
inline double curvature_on_antipodal_meridian(double v, double tau) {
  detail::require_open_unit(v, "curvature_on_antipodal_meridian");
  detail::require_interior_tau(tau, "curvature_on_antipodal_meridian");
  const double vv = (1.0 - v) * v;
  const double tt = (1.0 - tau) * tau;
  const double den = std::abs((1.0 - 2.0 * v) * std::sqrt(tt) + (1.0 - 2.0 * tau) * std::sqrt(vv));
  detail::require(den > 0.0, ErrorKind::degenerate_cap, "curvature_on_antipodal_meridian: tau = 1 - v");
  return -8.0 * detail::pi2 * std::sqrt(vv) * tt / den;
}

// ---------------------------------------------------------------------------
// The cubic Q(x) = x^3 + p x + q in x = cos 2pi(u - alpha)

struct CurvatureCubic {
  double p = 0.0;
  double q = 0.0;

  double operator()(double x) const { return (x * x + p) * x + q; }
  double discriminant() const { return -4.0 * p * p * p - 27.0 * q * q; }
};

/*
 * The curvature numerator at (alpha, tau) equals -A B^2 (1 + H^2) Q(x) with
 * A = 512 pi^2 sqrt(v(1-v) tau(1-tau)), B = sqrt(v(1-v)) / sqrt(tau(1-tau)),
 * H = 1 - 2tau, so the zeros of kappa at height tau are the roots of Q in [-1, 1].
 */
inline CurvatureCubic curvature_cubic(double v, double tau) {
  detail::require_open_unit(v, "curvature_cubic");
  detail::require_interior_tau(tau, "curvature_cubic");
  const double b = std::sqrt((1.0 - v) * v) / std::sqrt((1.0 - tau) * tau);
  const double h = 1.0 - 2.0 * tau;
  const double w = 1.0 - 2.0 * v;
  const double p = -(w * w + b * b * (1.0 + 2.0 * h * h)) / (b * b * (1.0 + h * h));
  const double q = 2.0 * w * h / (b * (1.0 + h * h));
  return {p, q};
}

/// The root of Q in (-1, 1), by the trigonometric formula for three real roots.
inline double cubic_root_in_unit_interval(const CurvatureCubic &c) {
  detail::require(c.p < 0.0 && c.discriminant() > 0.0, ErrorKind::invalid_input,
                  "cubic_root_in_unit_interval: Q must have three distinct real roots");
  const double arg = std::clamp(3.0 * c.q / (2.0 * c.p) * std::sqrt(-3.0 / c.p), -1.0, 1.0);
  const double x = 2.0 * std::sqrt(-c.p / 3.0) *
                   std::cos(std::acos(arg) / 3.0 - 2.0 * std::numbers::pi / 3.0);
  if (!(std::abs(x) < 1.0)) {
    throw Error(ErrorKind::internal,
                "cubic_root_in_unit_interval: root " + std::to_string(x) + " outside (-1,1)");
  }
  return x;
}

/// Sturm chain of Q evaluated at x: Q, Q', -(2p/3) x - q, discr / (4 p^2).
inline std::array<double, 4> sturm_chain(const CurvatureCubic &c, double x) {
  return {c(x), 3.0 * x * x + c.p, -(2.0 * c.p / 3.0) * x - c.q,
          c.discriminant() / (4.0 * c.p * c.p)};
}

/// Sign changes in the Sturm chain at x; zero entries are skipped.
inline int sturm_sign_changes(const CurvatureCubic &c, double x) {
  detail::require(c.p != 0.0, ErrorKind::invalid_input, "sturm_sign_changes: p must be nonzero");
  int changes = 0;
  int last = 0;
  for (double value : sturm_chain(c, x)) {
    const int sign = (value > 0.0) - (value < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

// ---------------------------------------------------------------------------
// The critical level t = 1 - 2v (cap boundary through the north pole)

/// Height at which the curvature along the critical level curve changes sign:
/// the smaller root of 2 tau^2 - (1 + 6 v(1-v)) tau + 2 v(1-v).
inline double critical_tau(double v) {
  detail::require_open_unit(v, "critical_tau");
  if (v == 0.5) {
    throw Error(ErrorKind::degenerate_cap,
                "critical_tau: for v = 1/2 the critical curves are the verticals alpha = u +- 1/4");
  }
  const double vv = (1.0 - v) * v;
  return (1.0 + 6.0 * vv - std::sqrt(1.0 - 4.0 * vv * (1.0 - 9.0 * vv))) / 4.0;
}

/// x(tau_v), the zero of Q at the critical height; |x(tau_v)| <= 1/sqrt(2).
inline double extremal_x(double v) {
  detail::require_open_unit(v, "extremal_x");
  const double vv = (1.0 - v) * v;
  const double w = 1.0 - 2.0 * v;
  return w / std::sqrt(1.0 + 2.0 * vv + std::sqrt(1.0 - vv * (9.0 * w * w - 5.0)));
}

/// kappa(tau) along the critical level curve t = 1 - 2v, tau in (0, 4v(1-v)].
inline double critical_curve_curvature(double v, double tau) {
  detail::require_open_unit(v, "critical_curve_curvature");
  const double vv = (1.0 - v) * v;
  if (!(tau > 0.0 && tau <= 4.0 * vv * (1.0 + 1e-12))) {
    throw Error(ErrorKind::domain, "critical_curve_curvature: tau outside (0, 4v(1-v)]");
  }
  const double w = 1.0 - 2.0 * v;
  const double num = -16.0 * detail::pi2 * w * (1.0 - tau) * (2.0 * vv - (1.0 + 6.0 * vv) * tau + 2.0 * tau * tau);
  const double den = w * w - 16.0 * detail::pi2 * (1.0 - tau) * (1.0 - tau) * tau * (tau - 4.0 * vv);
  return num / std::pow(den, 1.5);
}

/// lim_{tau -> 0} of critical_curve_curvature.
inline double critical_curve_curvature_at_pole(double v) {
  detail::require_open_unit(v, "critical_curve_curvature_at_pole");
  const double w = 1.0 - 2.0 * v;
  detail::require(w != 0.0, ErrorKind::degenerate_cap, "critical_curve_curvature_at_pole: v = 1/2");
  return -32.0 * detail::pi2 * w * (1.0 - v) * v / std::abs(w * w * w);
}

// ---------------------------------------------------------------------------
// Curvature as a function of tau along a level curve

namespace detail {

/// cos 2pi(u - alpha) on the level curve at height tau.
inline double level_cosine(const CapPreimageProblem &prob, double tau) {
  const double x = prob.t - (1.0 - 2.0 * prob.v) * (1.0 - 2.0 * tau);
  return x / (4.0 * std::sqrt((1.0 - prob.v) * prob.v * (1.0 - tau) * tau));
}

}  // namespace detail

/// Curvature numerator along the level curve, written in X = t - (1-2v)(1-2tau).
inline double curvature_numerator_along_level(const CapPreimageProblem &prob, double tau) {
  const double vv = (1.0 - prob.v) * prob.v;
  const double tc = 1.0 - tau;
  const double x = prob.t - (1.0 - 2.0 * prob.v) * (1.0 - 2.0 * tau);
  const double h = 1.0 - 2.0 * tau;
  return -16.0 * detail::pi2 *
         ((1.0 / (tc * tc) + 1.0 / (tau * tau)) * x * x * x -
          8.0 * (1.0 + 3.0 * vv / (tc * tau) * h * h) * x +
          64.0 * vv * (1.0 - 2.0 * prob.v) * h);
}

/// The same numerator as a polynomial of degree 4 in tau, with G = t - (1-2v).
inline double curvature_numerator_polynomial(const CapPreimageProblem &prob, double tau) {
  const double t = prob.t;
  const double g = t - (1.0 - 2.0 * prob.v);
  const double tc = 1.0 - tau;
  const double poly = g * g * g - 2.0 * g * (3.0 + g * g + 3.0 * g * t - 3.0 * t * t) * tau +
                      2.0 * (2.0 * t + 6.0 * g * g * t - 2.0 * t * t * t + 3.0 * g * (3.0 - t * t)) * tau * tau -
                      4.0 * (5.0 * t - 3.0 * t * t * t + 3.0 * g * (1.0 + t * t)) * tau * tau * tau +
                      16.0 * t * tau * tau * tau * tau;
  return -16.0 * detail::pi2 / (tc * tc * tau * tau) * poly;
}

/// (F_a^2 + F_t^2)^(3/2) along the level curve, in terms of tau only.
inline double curvature_denominator_along_level(const CapPreimageProblem &prob, double tau) {
  const double t = prob.t;
  const double g = t - (1.0 - 2.0 * prob.v);
  const double tc = 1.0 - tau;
  const double inner = (g - 2.0 * t * tau) * (g - 2.0 * t * tau) -
                       16.0 * detail::pi2 * tc * tc * tau * tau *
                           (g * g - 4.0 * g * t * tau - 4.0 * tau * (1.0 - t * t - tau));
  return std::pow(inner, 1.5) / (tc * tc * tc * tau * tau * tau);
}

/// kappa at height tau on the level curve F = 0 (either branch).
inline double curvature_along_level(const CapPreimageProblem &prob, double tau) {
  prob.validate();
  detail::require_interior_tau(tau, "curvature_along_level");
  const double c = detail::level_cosine(prob, tau);
  if (!(std::abs(c) <= 1.0 + 1e-12)) {
    throw Error(ErrorKind::domain, "curvature_along_level: the level curve does not reach tau = " +
                                       std::to_string(tau));
  }
  const double den = curvature_denominator_along_level(prob, tau);
  detail::require(den > 0.0, ErrorKind::degenerate_cap, "curvature_along_level: zero gradient");
  return curvature_numerator_along_level(prob, tau) / den;
}

// ---------------------------------------------------------------------------
// Tracing

enum class CurveTopology { closed_loop, wrap_around, pole_touching, vertical_lines };

inline std::string_view to_string(CurveTopology t) {
  switch (t) {
    case CurveTopology::closed_loop: return "closed-loop";
    case CurveTopology::wrap_around: return "wrap-around";
    case CurveTopology::pole_touching: return "pole-touching";
    case CurveTopology::vertical_lines: return "vertical-lines";
  }
  return "unknown";
}

/*
 * The boundary circle separates the poles iff exactly one of them lies in the
 * cap (heights 1-2v and -(1-2v) against t); then the pre-image wraps around
 * the cylinder. It passes through a pole iff |t| = |1-2v|.
 */
inline CurveTopology classify_topology(const CapPreimageProblem &prob, double tol = 1e-12) {
  const double w = std::abs(1.0 - 2.0 * prob.v);
  if (w <= tol && std::abs(prob.t) <= tol) return CurveTopology::vertical_lines;
  if (std::abs(std::abs(prob.t) - w) <= tol) return CurveTopology::pole_touching;
  return std::abs(prob.t) < w ? CurveTopology::wrap_around : CurveTopology::closed_loop;
}

struct TracePoint {
  double alpha = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
};

struct LevelTrace {
  CurveTopology topology = CurveTopology::closed_loop;
  std::vector<std::vector<TracePoint>> segments;  // polylines; alpha wrapped to [0,1)
  int transversal_pairs = 0;  // sign changes of kappa on one half of the curve
  int tangential_pairs = 0;   // zero runs of kappa without a sign change
  bool flat = false;          // kappa vanishes identically
  std::vector<double> zero_taus;  // heights of the transversal zeros
};

inline constexpr double kTraceMargin = 1e-4;

namespace detail {

/// alpha in [u, u + 1/2] with F(alpha, tau) = 0, by bisection (F increases in
/// alpha there). Requires |level_cosine| <= 1.
inline double solve_right_alpha(const CapPreimageProblem &prob, double tau) {
  double lo = prob.u;
  double hi = prob.u + 0.5;
  const auto f = [&](double a) { return level_function(prob, {a, tau}); };
  if (f(lo) >= 0.0) return lo;
  if (f(hi) <= 0.0) return hi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double wrap_unit(double a) {
  a = a - std::floor(a);
  return a >= 1.0 ? 0.0 : a;
}

/// Boundary of {tau : |c(tau)| <= 1} between an inside point and an outside point.
inline double refine_existence_edge(const CapPreimageProblem &prob, double inside, double outside) {
  for (int i = 0; i < 200 && std::abs(outside - inside) > 1e-15; ++i) {
    const double mid = 0.5 * (inside + outside);
    (std::abs(level_cosine(prob, mid)) <= 1.0 ? inside : outside) = mid;
  }
  return inside;
}

/// Curvature on the traced curve; 0 where the curve degenerates to a point.
inline double trace_curvature(const CapPreimageProblem &prob, double tau) {
  try {
    return curvature_along_level(prob, tau);
  } catch (const Error &) {
    return 0.0;
  }
}

}  // namespace detail

/*
 * Samples the pre-image of the cap boundary and counts curvature zeros.
 *
 * The curve consists of two mirror-image branches alpha = u +- a(tau) with
 * a(tau) in [0, 1/2]; each is a graph over tau. The tau-range where the curve
 * exists is found by a sign scan of |cos| - 1 at 2 x resolution, refined by
 * bisection. Within each range `resolution` heights are placed with
 * Chebyshev spacing (dense near the turning points) and alpha is solved by
 * bisection to 1e-13. Curvature comes from the along-level form, which
 * depends on tau only and is the same on both branches; it is evaluated for
 * tau in [1e-4, 1 - 1e-4].
 * Sign changes along the right branch give the transversal pairs; runs of
 * |kappa| below 1e-9 max|kappa| that do not change sign are tangential.
 */
inline LevelTrace trace_level_curve(const CapPreimageProblem &prob, std::size_t resolution) {
  prob.validate();
  detail::require(resolution >= 8, ErrorKind::invalid_input, "trace_level_curve: resolution must be >= 8");
  LevelTrace out;
  out.topology = classify_topology(prob);

  // Existence intervals in tau.
  const std::size_t scan = 2 * resolution;
  const double lo = kTraceMargin;
  const double hi = 1.0 - kTraceMargin;
  const auto exists = [&](double tau) { return std::abs(detail::level_cosine(prob, tau)) <= 1.0; };
  std::vector<std::pair<double, double>> ranges;
  {
    double prev = lo;
    bool prev_in = exists(lo);
    double start = lo;
    for (std::size_t k = 1; k <= scan; ++k) {
      const double tau = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(scan);
      const bool in = exists(tau);
      if (in && !prev_in) start = detail::refine_existence_edge(prob, tau, prev);
      if (!in && prev_in) ranges.emplace_back(start, detail::refine_existence_edge(prob, prev, tau));
      prev = tau;
      prev_in = in;
    }
    if (prev_in) ranges.emplace_back(start, hi);
  }

  // Right branch, one polyline per range.
  std::vector<std::vector<TracePoint>> right;
  for (const auto &[a, b] : ranges) {
    std::vector<TracePoint> seg(resolution);
    parallel_for(resolution, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(resolution - 1);
        const double tau = a + (b - a) * (1.0 - std::cos(std::numbers::pi * s)) / 2.0;
        seg[k] = {detail::solve_right_alpha(prob, tau), tau, detail::trace_curvature(prob, tau)};
      }
    });
    right.push_back(std::move(seg));
  }

  // Curvature zeros on the right branch.
  double kmax = 0.0;
  for (const auto &seg : right) {
    for (const auto &p : seg) kmax = std::max(kmax, std::abs(p.kappa));
  }
  out.flat = kmax <= 1e-9;
  if (!out.flat) {
    const double thr = 1e-9 * kmax;
    for (const auto &seg : right) {
      int last = 0;
      double last_tau = 0.0;
      bool in_zero_run = false;
      int sign_before_run = 0;
      for (const auto &p : seg) {
        const int sign = std::abs(p.kappa) <= thr ? 0 : (p.kappa > 0.0 ? 1 : -1);
        if (sign == 0) {
          if (!in_zero_run) sign_before_run = last;
          in_zero_run = true;
          continue;
        }
        if (in_zero_run) {
          if (sign_before_run != 0 && sign == sign_before_run) ++out.tangential_pairs;
          in_zero_run = false;
        }
        if (last != 0 && sign != last) {
          ++out.transversal_pairs;
          // Refine the zero in tau along the branch.
          double a = last_tau;
          double b = p.tau;
          const auto kappa_at = [&](double tau) { return detail::trace_curvature(prob, tau); };
          const bool a_positive = kappa_at(a) > 0.0;
          for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
            const double mid = 0.5 * (a + b);
            ((kappa_at(mid) > 0.0) == a_positive ? a : b) = mid;
          }
          out.zero_taus.push_back(0.5 * (a + b));
        }
        last = sign;
        last_tau = p.tau;
      }
    }
  }

  // Polylines: right branch, then its mirror image, split where alpha wraps.
  const auto emit = [&](const std::vector<TracePoint> &seg, bool mirror) {
    std::vector<TracePoint> cur;
    double prev_alpha = 0.0;
    for (const auto &p : seg) {
      const double raw = mirror ? 2.0 * prob.u - p.alpha : p.alpha;
      const double alpha = detail::wrap_unit(raw);
      if (!cur.empty() && std::abs(alpha - prev_alpha) > 0.5) {
        out.segments.push_back(std::move(cur));
        cur.clear();
      }
      cur.push_back({alpha, p.tau, p.kappa});
      prev_alpha = alpha;
    }
    if (!cur.empty()) out.segments.push_back(std::move(cur));
  };
  for (const auto &seg : right) emit(seg, false);
  for (const auto &seg : right) emit(seg, true);
  return out;
}

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_LEVELCURVE_HPP
