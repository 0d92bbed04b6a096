#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "support.hpp"

using namespace sphere_qmc;

namespace {

// lambda({x in [0,1]^2 : n.x > c}) by integrating the covered length of each
// vertical line; the integrand is piecewise linear in x, so integrating
// exactly between its breakpoints needs only the trapezoid rule.
double reference_halfplane_area(double nx, double ny, double c) {
  if (ny == 0.0) return nx > 0.0 ? std::clamp(1.0 - c / nx, 0.0, 1.0) : std::clamp(c / nx, 0.0, 1.0);
  const auto length = [&](double x) {
    const double r = c - nx * x;  // need ny * y > r
    const double y0 = r / ny;
    return ny > 0.0 ? std::clamp(1.0 - y0, 0.0, 1.0) : std::clamp(y0, 0.0, 1.0);
  };
  std::vector<double> xs{0.0, 1.0};
  if (nx != 0.0) {
    for (double y : {0.0, 1.0}) {
      const double x = (c - ny * y) / nx;
      if (x > 0.0 && x < 1.0) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  double area = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    area += (xs[i] - xs[i - 1]) * (length(xs[i - 1]) + length(xs[i])) / 2.0;
  }
  return area;
}

double direction_value(const std::vector<SquarePoint> &pts, double theta) {
  const double nx = std::cos(theta), ny = std::sin(theta);
  const double n = static_cast<double>(pts.size());
  double best = 0.0;
  for (const auto &p : pts) {
    const double c = nx * p.alpha + ny * p.tau;
    std::size_t open = 0, closed = 0;
    for (const auto &q : pts) {
      const double s = nx * q.alpha + ny * q.tau;
      open += s > c;
      closed += s >= c;
    }
    const double a = reference_halfplane_area(nx, ny, c);
    best = std::max({best, std::abs(static_cast<double>(open) / n - a), std::abs(static_cast<double>(closed) / n - a)});
  }
  return best;
}

// Grid of 10^4 directions, then golden-section refinement around the best
// local maxima of the grid.
double brute_halfplane(const std::vector<SquarePoint> &pts) {
  const int grid = 10000;
  const double step = std::numbers::pi / grid;
  std::vector<double> f(grid);
  for (int k = 0; k < grid; ++k) f[k] = direction_value(pts, k * step);
  std::vector<int> peaks;
  for (int k = 0; k < grid; ++k) {
    if (f[k] >= f[(k + grid - 1) % grid] && f[k] >= f[(k + 1) % grid]) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return f[a] > f[b]; });
  if (peaks.size() > 60) peaks.resize(60);
  double best = *std::max_element(f.begin(), f.end());
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k : peaks) {
    double a = (k - 1) * step, b = (k + 1) * step;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = direction_value(pts, x1), f2 = direction_value(pts, x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = direction_value(pts, x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = direction_value(pts, x2);
      }
      best = std::max({best, f1, f2});
    }
  }
  return best;
}

std::vector<SquarePoint> as_vector(const SquarePointSet &s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(HalfplaneArea, ClosedForms) {
  EXPECT_NEAR(halfplane_area({1, 0}, 0.3), 0.7, 1e-15);
  EXPECT_NEAR(halfplane_area({0, 1}, 0.9), 0.1, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(halfplane_area({r, r}, r), 0.5, 1e-15);
  EXPECT_NEAR(halfplane_area({r, r}, 1.5 * r), 0.125, 1e-15);
  EXPECT_EQ(halfplane_area({1, 0}, 2.0), 0.0);
  EXPECT_NEAR(halfplane_area({1, 0}, -1.0), 1.0, 1e-15);
}

TEST(HalfplaneArea, AgreesWithReferenceAndMonteCarlo) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double th = 2.0 * std::numbers::pi * u(rng);
    const Vec2 n{std::cos(th), std::sin(th)};
    const double c = -0.5 + 2.0 * u(rng);
    EXPECT_NEAR(halfplane_area(n, c), reference_halfplane_area(n.x, n.y, c), 1e-12);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const double th = 2.0 * std::numbers::pi * u(rng);
    const Vec2 n{std::cos(th), std::sin(th)};
    const double c = 0.5 * (n.x + n.y) + 0.3 * (u(rng) - 0.5);
    const int samples = 100000;
    int in = 0;
    for (int i = 0; i < samples; ++i) in += n.x * u(rng) + n.y * u(rng) > c;
    const double a = halfplane_area(n, c);
    const double sigma = std::sqrt(a * (1 - a) / samples);
    EXPECT_NEAR(static_cast<double>(in) / samples, a, 3.0 * sigma + 1e-12);
  }
}

TEST(Halfplane, Examples) {
  // Every line through the centre halves the square.
  EXPECT_NEAR(halfplane_discrepancy(std::vector<SquarePoint>{{0.5, 0.5}}), 0.5, 1e-12);
  // A corner point is cut off by halfplanes of vanishing area.
  EXPECT_NEAR(halfplane_discrepancy(std::vector<SquarePoint>{{0.0, 0.0}}), 1.0, 1e-12);
  EXPECT_NEAR(halfplane_discrepancy(std::vector<SquarePoint>{{0.5, 0.5}}),
              brute_halfplane(std::vector<SquarePoint>{{0.5, 0.5}}), 1e-9);
  EXPECT_NEAR(halfplane_discrepancy(std::vector<SquarePoint>{{0.25, 0.5}, {0.75, 0.5}}), 0.5, 1e-12);
  EXPECT_LE(halfplane_discrepancy(fibonacci_lattice(10).points()), iso_bound_fibonacci(10));
  EXPECT_THROW(halfplane_discrepancy(std::vector<SquarePoint>{}), Error);
}

TEST(Halfplane, WitnessReproducesValue) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto p = random_square_points(20, s);
    const auto r = halfplane_search(p.points());
    EXPECT_NEAR(halfplane_local_discrepancy(p.points(), r.normal, r.offset, r.closed), r.value, 1e-12);
  }
}

TEST(Halfplane, MatchesRefinedDirectionGrid) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto p = as_vector(random_square_points(4 + 8 * s, 300 + s));
    const double exact = halfplane_discrepancy(p);
    const double brute = brute_halfplane(p);
    EXPECT_LE(brute, exact + 1e-12) << "seed " << s;
    EXPECT_NEAR(exact, brute, 1e-9) << "seed " << s;
  }
  const auto fib = as_vector(fibonacci_lattice(8));
  EXPECT_NEAR(halfplane_discrepancy(fib), brute_halfplane(fib), 1e-9);
}

TEST(ConvexHull, ContainsAllPointsAndIsCounterClockwise) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 3 + trial; ++i) {
      const auto q = testing_support::uniform_square_point(rng);
      pts.push_back({q.alpha, q.tau});
    }
    const ConvexTestSet hull{convex_hull(pts), ConvexKind::hull_of_subset};
    EXPECT_GT(signed_area(hull.vertices), 0.0);
    for (Vec2 p : pts) EXPECT_TRUE(hull.contains(p));
  }
  EXPECT_EQ(convex_hull({{0, 0}, {0.5, 0.5}, {1, 1}}).size(), 2u);
  EXPECT_EQ(convex_hull({{0.2, 0.2}, {0.2, 0.2}}).size(), 1u);
}

TEST(HullBound, Examples) {
  const std::vector<SquarePoint> one{{0.3, 0.6}};
  EXPECT_EQ(hull_subset_lower_bound(one, 3, 10, 1), 1.0);
  EXPECT_EQ(hull_subset_lower_bound(fibonacci_lattice(8).points(), 5, 0, 1), 0.0);
}

// For the four corners the hull of all four is the square; its shrunk
// interior holds no point, so the deficiency side gives 1 - O(1e-9).
TEST(HullBound, FourCornersAgainstExhaustiveSubsets) {
  const std::vector<SquarePoint> corners{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<Vec2> pts;
  for (const auto &p : corners) pts.push_back(to_vec(p));
  double exhaustive = 0.0;
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<Vec2> subset;
    for (int i = 0; i < 4; ++i) {
      if (mask & (1 << i)) subset.push_back(pts[i]);
    }
    exhaustive = std::max(exhaustive, hull_local_discrepancy(pts, subset));
  }
  EXPECT_NEAR(exhaustive, 1.0, 1e-8);
  EXPECT_NEAR(hull_subset_lower_bound(corners, 4, 200, 3), exhaustive, 1e-15);
}

TEST(HullBound, DeterministicAndBelowUpperBound) {
  const auto p = fibonacci_lattice(10);
  const double a = hull_subset_lower_bound(p.points(), 6, 500, 42);
  const double b = hull_subset_lower_bound(p.points(), 6, 500, 42);
  EXPECT_EQ(a, b);
  EXPECT_LE(a, iso_bound_fibonacci(10));
}

TEST(IsotropicReport, NetAndLatticeSandwich) {
  const auto net = isotropic_report(digital_net(2, 8));
  EXPECT_EQ(net.kind, ReportKind::isotropic);
  EXPECT_LE(net.value, 4.0 * std::sqrt(2.0) / 16.0);
  EXPECT_NEAR(net.params.at("upper"), 0.35355, 1e-5);
  const auto fib = isotropic_report(fibonacci_lattice(11));
  EXPECT_LE(fib.value, 0.59938);
  EXPECT_NEAR(fib.params.at("upper"), 4.0 * std::sqrt(2.0 / 89.0), 1e-12);
  EXPECT_GE(fib.value, fib.params.at("halfplane"));
}

TEST(IsotropicReport, RandomSetsHaveMacroscopicDiscrepancy) {
  int above = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = isotropic_report(random_square_points(100, s), {6, 300, s});
    above += r.value >= 0.1 / std::sqrt(100.0);
  }
  EXPECT_GE(above, 19);
}
