#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace sphere_qmc;

namespace {

constexpr double kPi = std::numbers::pi;

// Roots of Q in (-1, 1) by a sign scan plus bisection.
std::vector<double> bisection_roots(const CurvatureCubic &c) {
  std::vector<double> roots;
  const int n = 4000;
  double prev_x = -1.0;
  double prev = c(prev_x);
  for (int k = 1; k <= n; ++k) {
    const double x = -1.0 + 2.0 * k / n;
    const double y = c(x);
    if ((prev < 0.0) != (y < 0.0)) {
      double a = prev_x, b = x;
      for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        ((c(m) < 0.0) == (prev < 0.0) ? a : b) = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev = y;
  }
  return roots;
}

// Curvature of the level set by finite differences of F alone.
double fd_curvature(const CapPreimageProblem &prob, SquarePoint s, double h) {
  const auto f = [&](double a, double t) { return level_function(prob, {a, t}); };
  const double fa = (f(s.alpha + h, s.tau) - f(s.alpha - h, s.tau)) / (2 * h);
  const double ft = (f(s.alpha, s.tau + h) - f(s.alpha, s.tau - h)) / (2 * h);
  const double faa = (f(s.alpha + h, s.tau) - 2 * f(s.alpha, s.tau) + f(s.alpha - h, s.tau)) / (h * h);
  const double ftt = (f(s.alpha, s.tau + h) - 2 * f(s.alpha, s.tau) + f(s.alpha, s.tau - h)) / (h * h);
  const double fat = (f(s.alpha + h, s.tau + h) - f(s.alpha + h, s.tau - h) - f(s.alpha - h, s.tau + h) +
                      f(s.alpha - h, s.tau - h)) /
                     (4 * h * h);
  const double g2 = fa * fa + ft * ft;
  return (faa * ft * ft - 2 * fat * fa * ft + ftt * fa * fa) / std::pow(g2, 1.5);
}

}  // namespace

TEST(LevelFunction, Examples) {
  const CapPreimageProblem hemi{0.5, 0.5, 0.0};
  EXPECT_NEAR(level_function(hemi, {0.25, 0.5}), 0.0, 1e-14);
  for (double t : {-0.5, 0.0, 0.7}) {
    const CapPreimageProblem p{0.3, 0.2, t};
    EXPECT_NEAR(level_function(p, {0.3, 0.2}), -2.0 * (1.0 - t), 1e-14);
    EXPECT_NEAR(level_function(p, {0.8, 0.8}), 2.0 * (1.0 + t), 1e-14);
  }
}

// F is |w - Phi(s)|^2 - 2(1 - t), so its sign decides cap membership.
TEST(LevelFunction, SignMatchesCapMembership) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const CapPreimageProblem p{0.999 * u(rng), 0.01 + 0.98 * u(rng), -0.99 + 1.98 * u(rng)};
    const SquarePoint s{u(rng), u(rng)};
    const double f = level_function(p, s);
    if (std::abs(f) < 1e-9) continue;
    EXPECT_EQ(f < 0.0, cap_contains({p.center(), p.t}, lambert_map(s)));
  }
}

TEST(LevelGradient, Examples) {
  const CapPreimageProblem hemi{0.5, 0.5, 0.0};
  const auto g = level_gradient(hemi, {0.25, 0.5});
  EXPECT_NEAR(g.f_alpha, -4.0 * kPi, 1e-12);
  EXPECT_NEAR(g.f_tau, 0.0, 1e-12);
  EXPECT_EQ(level_gradient({0.3, 0.2, 0.1}, {0.3, 0.7}).f_alpha, 0.0);
  try {
    level_gradient(hemi, {0.2, 0.0});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular_domain);
  }
  EXPECT_THROW(level_gradient(hemi, {0.2, 1.0}), Error);
}

TEST(LevelGradient, MatchesCentralDifferences) {
  const double h = 1e-6;
  for (const CapPreimageProblem p : {CapPreimageProblem{0.5, 0.5, 0.0}, CapPreimageProblem{0.1, 0.3, 0.4}}) {
    for (int i = 1; i < 100; ++i) {
      for (int j = 1; j < 100; ++j) {
        const SquarePoint s{i / 100.0, j / 100.0};
        const auto g = level_gradient(p, s);
        const double fa = (level_function(p, {s.alpha + h, s.tau}) - level_function(p, {s.alpha - h, s.tau})) / (2 * h);
        const double ft = (level_function(p, {s.alpha, s.tau + h}) - level_function(p, {s.alpha, s.tau - h})) / (2 * h);
        ASSERT_NEAR(g.f_alpha, fa, 1e-5) << s.alpha << ' ' << s.tau;
        ASSERT_NEAR(g.f_tau, ft, 1e-5) << s.alpha << ' ' << s.tau;
      }
    }
  }
}

TEST(LevelDerivatives, SecondPartialsMatchDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const double h = 1e-5;
  for (int i = 0; i < 500; ++i) {
    const double cu = u(rng), cv = u(rng);
    const SquarePoint s{u(rng), u(rng)};
    const auto d = level_derivatives(cu, cv, s);
    const auto g = [&](double a, double t) { return level_derivatives(cu, cv, {a, t}); };
    EXPECT_NEAR(d.f_aa, (g(s.alpha + h, s.tau).f_a - g(s.alpha - h, s.tau).f_a) / (2 * h), 1e-4);
    EXPECT_NEAR(d.f_at, (g(s.alpha, s.tau + h).f_a - g(s.alpha, s.tau - h).f_a) / (2 * h), 1e-4);
    EXPECT_NEAR(d.f_at, (g(s.alpha + h, s.tau).f_t - g(s.alpha - h, s.tau).f_t) / (2 * h), 1e-4);
    EXPECT_NEAR(d.f_tt, (g(s.alpha, s.tau + h).f_t - g(s.alpha, s.tau - h).f_t) / (2 * h), 1e-4 * (1 + std::abs(d.f_tt)));
  }
}

TEST(SignedCurvature, VanishesOnQuarterLinesForEquatorialCentre) {
  for (double tau : {0.05, 0.3, 0.5, 0.81}) {
    EXPECT_NEAR(signed_curvature(0.4, 0.5, {0.65, tau}), 0.0, 1e-12);
    EXPECT_NEAR(signed_curvature(0.4, 0.5, {0.15, tau}), 0.0, 1e-12);
  }
}

TEST(SignedCurvature, VanishesAtEquatorOnQuarterLines) {
  for (double v : {0.1, 0.3, 0.77}) EXPECT_NEAR(signed_curvature(0.2, v, {0.45, 0.5}), 0.0, 1e-12);
}

TEST(SignedCurvature, ClosedFormsOnSpecialLines) {
  for (double v : {0.1, 0.25, 0.6}) {
    for (double tau : {0.1, 0.4, 0.7}) {
      EXPECT_NEAR(signed_curvature(0.3, v, {0.55, tau}), curvature_on_quarter_lines(v, tau), 1e-9);
      EXPECT_NEAR(signed_curvature(0.3, v, {0.05, tau}), curvature_on_quarter_lines(v, tau), 1e-9);
      if (std::abs(tau - v) > 1e-6) {
        EXPECT_NEAR(signed_curvature(0.3, v, {0.3, tau}), curvature_on_center_meridian(v, tau), 1e-9);
      }
      if (std::abs(tau - (1.0 - v)) > 1e-6) {
        EXPECT_NEAR(signed_curvature(0.3, v, {0.8, tau}), curvature_on_antipodal_meridian(v, tau), 1e-9);
      }
    }
  }
  // v = tau on the centre meridian is the centre itself.
  EXPECT_THROW(signed_curvature(0.5, 0.25, {0.5, 0.25}), Error);
  EXPECT_THROW(curvature_on_center_meridian(0.25, 0.25), Error);
  EXPECT_NEAR(signed_curvature(0.5, 0.25, {0.5, 0.4}), curvature_on_center_meridian(0.25, 0.4), 1e-9);
}

TEST(SignedCurvature, AgreesWithFiniteDifferencesOfF) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (int i = 0; i < 200; ++i) {
    const CapPreimageProblem p{u(rng), u(rng), 0.0};
    const SquarePoint s{u(rng), u(rng)};
    const auto g = level_gradient(p, s);
    if (g.f_alpha * g.f_alpha + g.f_tau * g.f_tau < 1e-2) continue;
    const double k = signed_curvature(p.u, p.v, s);
    EXPECT_NEAR(k, fd_curvature(p, s, 1e-4), 1e-4 * (1 + std::abs(k)));
  }
}

TEST(SignedCurvature, CentreAndAntipodeAreDegenerate) {
  try {
    signed_curvature(0.2, 0.3, {0.2, 0.3});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_cap);
  }
  EXPECT_THROW(signed_curvature(0.2, 0.3, {0.7, 0.7}), Error);
}

TEST(CurvatureCubic, Examples) {
  const auto c = curvature_cubic(0.5, 0.5);
  EXPECT_NEAR(c.p, -1.0, 1e-15);
  EXPECT_NEAR(c.q, 0.0, 1e-15);
  for (double tau : {0.1, 0.3, 0.9}) EXPECT_EQ(curvature_cubic(0.5, tau).q, 0.0);
  EXPECT_GT(curvature_cubic(0.25, 0.25).discriminant(), 0.0);
  EXPECT_THROW(curvature_cubic(0.25, 0.0), Error);
}

TEST(CurvatureCubic, DiscriminantPositiveOnGrid) {
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      const double v = 0.005 + 0.99 * i / 199.0;
      const double tau = 0.005 + 0.99 * j / 199.0;
      ASSERT_GT(curvature_cubic(v, tau).discriminant(), 0.0) << v << ' ' << tau;
    }
  }
}

TEST(CurvatureCubic, ReflectionSymmetry) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::uniform_real_distribution<double> x(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng), tau = u(rng), xx = x(rng);
    const auto a = curvature_cubic(v, tau);
    const auto b = curvature_cubic(v, 1.0 - tau);
    EXPECT_NEAR(a.p, b.p, 1e-12);
    EXPECT_NEAR(a.q, -b.q, 1e-12);
    EXPECT_NEAR(a(xx), -b(-xx), 1e-12);
  }
}

// The cubic is proportional to the curvature numerator at fixed height.
TEST(CurvatureCubic, ZerosAreCurvatureZeros) {
  for (double v : {0.2, 0.35, 0.8}) {
    for (double tau : {0.15, 0.6}) {
      const double x = cubic_root_in_unit_interval(curvature_cubic(v, tau));
      const double alpha = 0.5 + std::acos(x) / (2.0 * kPi);
      EXPECT_NEAR(signed_curvature(0.5, v, {alpha, tau}), 0.0, 1e-8);
    }
  }
}

TEST(CubicRoot, Examples) {
  EXPECT_NEAR(cubic_root_in_unit_interval(curvature_cubic(0.5, 0.2)), 0.0, 1e-15);
  const double r1 = cubic_root_in_unit_interval(curvature_cubic(0.25, 0.25));
  EXPECT_GT(r1, 0.0);
  EXPECT_LT(r1, 1.0);
  const double r2 = cubic_root_in_unit_interval(curvature_cubic(0.25, 0.75));
  EXPECT_LT(r2, 0.0);
  EXPECT_GT(r2, -1.0);
}

TEST(CubicRoot, MatchesBisectionAndQuadrantRule) {
  for (int i = 1; i < 40; ++i) {
    for (int j = 1; j < 40; ++j) {
      if (i == j || i + j == 40) continue;  // endpoint roots, see below
      const double v = i / 40.0, tau = j / 40.0;
      const auto c = curvature_cubic(v, tau);
      const auto roots = bisection_roots(c);
      ASSERT_EQ(roots.size(), 1u) << v << ' ' << tau;
      const double x = cubic_root_in_unit_interval(c);
      EXPECT_NEAR(x, roots[0], 1e-10);
      const double side = (0.5 - v) * (0.5 - tau);
      if (side > 0) {
        EXPECT_GT(x, 0.0);
      }
      if (side < 0) {
        EXPECT_LT(x, 0.0);
      }
    }
  }
}

TEST(Sturm, TableRows) {
  const auto row = [](double v, double tau) {
    const auto c = curvature_cubic(v, tau);
    return std::array<int, 3>{sturm_sign_changes(c, -1), sturm_sign_changes(c, 0), sturm_sign_changes(c, 1)};
  };
  for (double a : {0.1, 0.25, 0.4}) {
    for (double b : {0.05, 0.2, 0.45}) {
      EXPECT_EQ(row(a, b), (std::array<int, 3>{2, 2, 1})) << a << ' ' << b;
      EXPECT_EQ(row(a, 1 - b), (std::array<int, 3>{2, 1, 1})) << a << ' ' << b;
      EXPECT_EQ(row(1 - a, b), (std::array<int, 3>{2, 1, 1})) << a << ' ' << b;
      EXPECT_EQ(row(1 - a, 1 - b), (std::array<int, 3>{2, 2, 1})) << a << ' ' << b;
    }
  }
}

// tau = v puts the centre on the line x = 1 (and tau = 1 - v the antipode on
// x = -1), so there Q(+-1) vanishes and sigma(+-1) is decided by rounding.
TEST(Sturm, EndpointRootsOnCentreLocus) {
  for (double v : {0.1, 0.25, 0.7}) {
    EXPECT_NEAR(curvature_cubic(v, v)(1.0), 0.0, 1e-12);
    EXPECT_NEAR(curvature_cubic(v, 1.0 - v)(-1.0), 0.0, 1e-12);
  }
}

TEST(Sturm, CountsRootsInHalfIntervals) {
  for (int i = 1; i < 20; ++i) {
    for (int j = 1; j < 20; ++j) {
      const double v = i / 20.0, tau = j / 20.0 + 0.013;
      const auto c = curvature_cubic(v, tau);
      const auto roots = bisection_roots(c);
      int neg = 0, pos = 0;
      // For v = 1/2 the root is x = 0, which Sturm counts in (-1, 0].
      for (double r : roots) (r <= 1e-12 ? neg : pos)++;
      EXPECT_EQ(sturm_sign_changes(c, -1) - sturm_sign_changes(c, 0), neg);
      EXPECT_EQ(sturm_sign_changes(c, 0) - sturm_sign_changes(c, 1), pos);
    }
  }
}

TEST(CriticalTau, Examples) {
  EXPECT_NEAR(critical_tau(0.25), (2.125 - std::sqrt(1.515625)) / 4.0, 1e-15);
  EXPECT_LT(critical_tau(1e-8), 1e-7);
  try {
    critical_tau(0.5);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_cap);
  }
}

TEST(CriticalTau, IsTheSignChangeOfCriticalCurveCurvature) {
  for (double v : {0.05, 0.25, 0.4, 0.6, 0.9}) {
    const double tv = critical_tau(v);
    double a = 1e-6, b = 4.0 * v * (1.0 - v) - 1e-6;
    const bool a_neg = critical_curve_curvature(v, a) < 0.0;
    ASSERT_NE(a_neg, critical_curve_curvature(v, b) < 0.0);
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (a + b);
      ((critical_curve_curvature(v, m) < 0.0) == a_neg ? a : b) = m;
    }
    EXPECT_NEAR(0.5 * (a + b), tv, 1e-10) << v;
  }
}

TEST(ExtremalX, Examples) {
  EXPECT_EQ(extremal_x(0.5), 0.0);
  EXPECT_NEAR(extremal_x(1e-12), 1.0 / std::sqrt(2.0), 1e-9);
  const double tv = critical_tau(0.25);
  EXPECT_NEAR(extremal_x(0.25), cubic_root_in_unit_interval(curvature_cubic(0.25, tv)), 1e-12);
}

TEST(ExtremalX, BoundedAndDecreasing) {
  double prev = extremal_x(1e-6);
  for (int i = 1; i < 1000; ++i) {
    const double x = extremal_x(i / 1000.0);
    EXPECT_LE(std::abs(x), 1.0 / std::sqrt(2.0) + 1e-15);
    EXPECT_LT(x, prev);
    prev = x;
  }
}

TEST(CriticalCurve, PoleLimitAndZero) {
  for (double v : {0.1, 0.25, 0.7}) {
    EXPECT_NEAR(critical_curve_curvature(v, 1e-12), critical_curve_curvature_at_pole(v),
                1e-8 * std::abs(critical_curve_curvature_at_pole(v)));
    EXPECT_NEAR(critical_curve_curvature(v, critical_tau(v)), 0.0, 1e-12);
  }
  EXPECT_NEAR(critical_curve_curvature_at_pole(0.25), -32.0 * kPi * kPi * 0.5 * 0.1875 / 0.125, 1e-9);
  try {
    critical_curve_curvature(0.25, 0.8);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(CriticalCurve, MatchesGeneralAlongLevelCurvature) {
  for (double v : {0.1, 0.25, 0.4}) {
    const CapPreimageProblem p{0.5, v, 1.0 - 2.0 * v};
    for (double tau : {0.01, 0.1, 0.2, 0.3}) {
      if (tau >= 4 * v * (1 - v)) continue;
      EXPECT_NEAR(curvature_along_level(p, tau), critical_curve_curvature(v, tau),
                  1e-9 * (1 + std::abs(critical_curve_curvature(v, tau))));
    }
  }
}

TEST(AlongLevel, NumeratorFormsAgree) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int i = 0; i < 100; ++i) {
    const CapPreimageProblem p{u(rng), u(rng), -0.96 + 1.92 * u(rng)};
    const double tau = u(rng);
    const double a = curvature_numerator_along_level(p, tau);
    const double b = curvature_numerator_polynomial(p, tau);
    EXPECT_NEAR(a, b, 1e-9 * (1 + std::abs(a)));
  }
}

TEST(AlongLevel, MatchesPointwiseCurvature) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  int checked = 0;
  while (checked < 200) {
    const CapPreimageProblem p{u(rng), u(rng), -0.96 + 1.92 * u(rng)};
    const double tau = u(rng);
    const double c = p.t - (1 - 2 * p.v) * (1 - 2 * tau);
    const double x = c / (4.0 * std::sqrt(p.v * (1 - p.v) * tau * (1 - tau)));
    if (std::abs(x) >= 0.999) continue;
    for (double sgn : {1.0, -1.0}) {
      const double alpha = p.u + sgn * std::acos(x) / (2.0 * kPi);
      const SquarePoint s{alpha - std::floor(alpha), tau};
      ASSERT_NEAR(level_function(p, s), 0.0, 1e-12);
      const double k = signed_curvature(p.u, p.v, s);
      EXPECT_NEAR(curvature_along_level(p, tau), k, 1e-8 * (1 + std::abs(k)));
    }
    ++checked;
  }
}

TEST(AlongLevel, OutsideTheCurveIsADomainError) {
  const CapPreimageProblem p{0.5, 0.25, 0.9};
  try {
    curvature_along_level(p, 0.9);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(Topology, Classification) {
  EXPECT_EQ(classify_topology({0.5, 0.5, 0.0}), CurveTopology::vertical_lines);
  EXPECT_EQ(classify_topology({0.5, 0.25, 0.5}), CurveTopology::pole_touching);
  EXPECT_EQ(classify_topology({0.5, 0.25, -0.5}), CurveTopology::pole_touching);
  EXPECT_EQ(classify_topology({0.5, 0.25, 0.2}), CurveTopology::wrap_around);
  EXPECT_EQ(classify_topology({0.5, 0.25, 0.9}), CurveTopology::closed_loop);
  EXPECT_EQ(to_string(CurveTopology::wrap_around), "wrap-around");
}

TEST(Trace, EquatorialCentreGivesFlatVerticals) {
  const auto tr = trace_level_curve({0.5, 0.5, 0.0}, 64);
  EXPECT_EQ(tr.topology, CurveTopology::vertical_lines);
  EXPECT_TRUE(tr.flat);
  EXPECT_EQ(tr.transversal_pairs, 0);
  for (const auto &seg : tr.segments) {
    for (const auto &p : seg) {
      EXPECT_NEAR(std::min(std::abs(p.alpha - 0.25), std::abs(p.alpha - 0.75)), 0.0, 1e-12);
    }
  }
}

TEST(Trace, CriticalLevelHasOnePairAtCriticalHeight) {
  const auto tr = trace_level_curve({0.5, 0.25, 0.5}, 400);
  EXPECT_EQ(tr.topology, CurveTopology::pole_touching);
  EXPECT_EQ(tr.transversal_pairs, 1);
  ASSERT_EQ(tr.zero_taus.size(), 1u);
  EXPECT_NEAR(tr.zero_taus[0], critical_tau(0.25), 1e-6);
}

TEST(Trace, HighCapsNeverHaveExactlyOneTransversalPair) {
  for (double t : {0.55, 0.7, 0.9, 0.99}) {
    const auto tr = trace_level_curve({0.5, 0.25, t}, 400);
    EXPECT_EQ(tr.topology, CurveTopology::closed_loop);
    EXPECT_NE(tr.transversal_pairs, 1) << t;
    EXPECT_LE(tr.transversal_pairs, 2) << t;
  }
}

TEST(Trace, WrappingCurvesHaveOnePair) {
  for (double t : {-0.45, -0.2, 0.0, 0.3, 0.45}) {
    const auto tr = trace_level_curve({0.3, 0.25, t}, 400);
    EXPECT_EQ(tr.topology, CurveTopology::wrap_around);
    EXPECT_EQ(tr.transversal_pairs, 1) << t;
  }
}

TEST(Trace, PointsLieOnTheCurveAndAreMirrorSymmetric) {
  const CapPreimageProblem p{0.3, 0.35, 0.6};
  const auto tr = trace_level_curve(p, 200);
  ASSERT_EQ(tr.segments.size() % 2, 0u);
  std::vector<TracePoint> right, left;
  for (std::size_t i = 0; i < tr.segments.size(); ++i) {
    auto &dst = i < tr.segments.size() / 2 ? right : left;
    dst.insert(dst.end(), tr.segments[i].begin(), tr.segments[i].end());
  }
  ASSERT_EQ(right.size(), left.size());
  for (std::size_t i = 0; i < right.size(); ++i) {
    EXPECT_NEAR(level_function(p, {right[i].alpha, right[i].tau}), 0.0, 1e-10);
    double d = left[i].alpha - (2 * p.u - right[i].alpha);
    d -= std::round(d);
    EXPECT_NEAR(d, 0.0, 1e-10);
    EXPECT_EQ(left[i].tau, right[i].tau);
    EXPECT_NEAR(left[i].kappa, right[i].kappa, 1e-8 * (1 + std::abs(right[i].kappa)));
  }
}

TEST(Trace, RejectsBadInput) {
  EXPECT_THROW(trace_level_curve({0.5, 0.5, 1.0}, 64), Error);
  EXPECT_THROW(trace_level_curve({0.5, 0.0, 0.2}, 64), Error);
  EXPECT_THROW(trace_level_curve({0.5, 0.4, 0.2}, 4), Error);
}
