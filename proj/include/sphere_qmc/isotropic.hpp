#ifndef SPHERE_QMC_ISOTROPIC_HPP
#define SPHERE_QMC_ISOTROPIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "discrepancy.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "parallel.hpp"
#include "points.hpp"
#include "rng.hpp"

namespace sphere_qmc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 to_vec(const SquarePoint &p) { return {p.alpha, p.tau}; }

/// Shoelace area of a simple polygon; positive for counter-clockwise rings.
inline double signed_area(std::span<const Vec2> ring) {
  if (ring.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    twice += cross(ring[i], ring[(i + 1) % ring.size()]);
  }
  return twice / 2.0;
}

/// Sutherland-Hodgman clip of a convex ring against {x : n.x >= c}.
inline std::vector<Vec2> clip_halfplane(std::span<const Vec2> ring, Vec2 n, double c) {
  std::vector<Vec2> out;
  if (ring.empty()) return out;
  out.reserve(ring.size() + 1);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % ring.size()];
    const double da = dot(n, a) - c;
    const double db = dot(n, b) - c;
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) {
      const double s = da / (da - db);
      out.push_back(a + s * (b - a));
    }
  }
  return out;
}

inline const std::vector<Vec2> &unit_square_ring() {
  static const std::vector<Vec2> ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return ring;
}

/// lambda({x in [0,1]^2 : n.x > c}).
inline double halfplane_area(Vec2 n, double c) {
  return std::abs(signed_area(clip_halfplane(unit_square_ring(), n, c)));
}

enum class ConvexKind { halfplane, hull_of_subset, custom };

/// A convex polygon inside the unit square, vertices counter-clockwise.
struct ConvexTestSet {
  std::vector<Vec2> vertices;
  ConvexKind kind = ConvexKind::custom;

  double area() const { return std::abs(signed_area(vertices)); }

  /// Closed containment with tolerance tol; degenerate rings (point or
  /// segment) contain exactly the points of that point or segment.
  bool contains(Vec2 p, double tol = 1e-12) const {
    const std::size_t k = vertices.size();
    if (k == 0) return false;
    if (k == 1) return std::hypot(p.x - vertices[0].x, p.y - vertices[0].y) <= tol;
    if (k == 2) {
      const Vec2 a = vertices[0];
      const Vec2 d = vertices[1] - a;
      const double len = std::hypot(d.x, d.y);
      if (std::abs(cross(d, p - a)) > tol * len) return false;
      const double s = dot(d, p - a);
      return s >= -tol * len && s <= len * len + tol * len;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2 a = vertices[i];
      const Vec2 e = vertices[(i + 1) % k] - a;
      if (cross(e, p - a) < -tol * std::hypot(e.x, e.y)) return false;
    }
    return true;
  }

  /// Strict interior test: every edge must have p at distance > tol inside.
  bool contains_strictly(Vec2 p, double tol = 1e-12) const {
    const std::size_t k = vertices.size();
    if (k < 3) return false;
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2 a = vertices[i];
      const Vec2 e = vertices[(i + 1) % k] - a;
      if (cross(e, p - a) <= tol * std::hypot(e.x, e.y)) return false;
    }
    return true;
  }
};

/// Andrew's monotone chain; collinear points are dropped, result is CCW.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
  return hull;
}

// ---------------------------------------------------------------------------
// Halfplanes

struct HalfplaneResult {
  double value = 0.0;
  Vec2 normal;         // halfplane is {x : normal.x > offset} (or >= when closed)
  double offset = 0.0;
  bool closed = false;
};

namespace detail {

inline constexpr double kProjectionTieTolerance = 1e-12;

/// Best halfplane with the given unit normal. Offsets at the projections of
/// the points, open and closed; projections within 1e-12 form one group.
inline HalfplaneResult sweep_direction(std::span<const Vec2> pts, Vec2 n, std::vector<double> &s) {
  const std::size_t count = pts.size();
  const double nn = static_cast<double>(count);
  s.resize(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = dot(n, pts[i]);
  std::sort(s.begin(), s.end(), std::greater<>());
  HalfplaneResult best{-1.0, n, 0.0, false};
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i + 1;
    while (j < count && s[j - 1] - s[j] <= kProjectionTieTolerance) ++j;
    const double c = s[i];
    const double area = halfplane_area(n, c);
    const double vo = std::abs(static_cast<double>(i) / nn - area);
    const double vc = std::abs(static_cast<double>(j) / nn - area);
    if (vo > best.value) best = {vo, n, c, false};
    if (vc > best.value) best = {vc, n, c, true};
    i = j;
  }
  return best;
}

inline Vec2 unit_normal_of(Vec2 d) {
  // Normal of direction d, folded into the half-turn [0, pi) of angles.
  Vec2 n{-d.y, d.x};
  const double len = std::hypot(n.x, n.y);
  n = (1.0 / len) * n;
  if (n.y < 0.0 || (n.y == 0.0 && n.x < 0.0)) n = {-n.x, -n.y};
  return n;
}

/*
 * Line directions through p along which the area of the halfplane bounded by
 * the line through p is stationary: p is then the midpoint of the chord, so
 * both chord ends q and 2p - q lie on the square boundary. Also the
 * directions towards the corners.
 */
inline void critical_directions(Vec2 p, std::vector<Vec2> &dirs) {
  const auto in_square = [](Vec2 q) {
    constexpr double e = 1e-12;
    return q.x >= -e && q.x <= 1.0 + e && q.y >= -e && q.y <= 1.0 + e;
  };
  const double ys[2] = {2.0 * p.y - 1.0, 2.0 * p.y};
  const double xs[2] = {2.0 * p.x - 1.0, 2.0 * p.x};
  std::vector<Vec2> ends;
  for (double e : {0.0, 1.0}) {
    for (double y : ys) ends.push_back({e, y});
    for (double x : xs) ends.push_back({x, e});
  }
  for (Vec2 q : ends) {
    const Vec2 d = q - p;
    if (in_square(q) && in_square(2.0 * p - q) && std::hypot(d.x, d.y) > 1e-14) dirs.push_back(d);
  }
  for (Vec2 c : unit_square_ring()) {
    const Vec2 d = c - p;
    if (std::hypot(d.x, d.y) > 1e-14) dirs.push_back(d);
  }
}

}  // namespace detail

/*
 * sup over halfplanes H of |#(P in H)/N - lambda(H cap [0,1]^2)|. Between
 * consecutive candidate directions the order of the projections is fixed and
 * the area through each point is a C^1 function of the angle, so the
 * supremum is attained at a direction normal to a pair of points, an axis
 * direction, or a direction where some point bisects its chord.
 * O(N^3 log N). A lower bound for the isotropic discrepancy.
 */
inline HalfplaneResult halfplane_search(std::span<const SquarePoint> points) {
  detail::require(!points.empty(), ErrorKind::invalid_input, "halfplane_discrepancy: empty set");
  std::vector<Vec2> pts;
  pts.reserve(points.size());
  for (const auto &p : points) pts.push_back(to_vec(p));

  std::vector<Vec2> dirs{{1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec2 d = pts[j] - pts[i];
      if (std::hypot(d.x, d.y) > 1e-14) dirs.push_back(d);
    }
    detail::critical_directions(pts[i], dirs);
  }
  std::vector<Vec2> normals;
  normals.reserve(dirs.size());
  for (Vec2 d : dirs) normals.push_back(detail::unit_normal_of(d));

  std::vector<HalfplaneResult> per_dir(normals.size());
  parallel_for(normals.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch;
    for (std::size_t k = begin; k < end; ++k) {
      per_dir[k] = detail::sweep_direction(pts, normals[k], scratch);
    }
  });
  HalfplaneResult best = per_dir.front();
  for (const auto &r : per_dir) {
    if (r.value > best.value) best = r;
  }
  return best;
}

inline double halfplane_discrepancy(std::span<const SquarePoint> points) {
  return halfplane_search(points).value;
}

/// Local discrepancy of the halfplane with unit normal n at offset c.
inline double halfplane_local_discrepancy(std::span<const SquarePoint> points, Vec2 n, double c,
                                          bool closed) {
  std::size_t count = 0;
  for (const auto &p : points) {
    const double s = dot(n, to_vec(p));
    if (closed ? s >= c - detail::kProjectionTieTolerance : s > c + detail::kProjectionTieTolerance) {
      ++count;
    }
  }
  return std::abs(static_cast<double>(count) / static_cast<double>(points.size()) -
                  halfplane_area(n, c));
}

// ---------------------------------------------------------------------------
// Hulls of point subsets

inline constexpr double kHullShrink = 1e-9;

/*
 * Local discrepancy of the hull of one subset, both sides:
 *   surplus:    #(P in closed hull)/N - area(hull),
 *   deficiency: area(H') - #(P in interior of H')/N, with H' the hull
 *               shrunk towards its vertex centroid by kHullShrink.
 */
inline double hull_local_discrepancy(std::span<const Vec2> pts, const std::vector<Vec2> &subset) {
  const double nn = static_cast<double>(pts.size());
  ConvexTestSet hull{convex_hull(subset), ConvexKind::hull_of_subset};
  std::size_t closed = 0;
  for (Vec2 p : pts) {
    if (hull.contains(p)) ++closed;
  }
  double best = static_cast<double>(closed) / nn - hull.area();
  if (hull.vertices.size() >= 3) {
    Vec2 c{0.0, 0.0};
    for (Vec2 v : hull.vertices) c = c + v;
    c = (1.0 / static_cast<double>(hull.vertices.size())) * c;
    double reach = 0.0;
    for (Vec2 v : hull.vertices) reach = std::max(reach, std::hypot(v.x - c.x, v.y - c.y));
    const double factor = 1.0 - kHullShrink / reach;
    ConvexTestSet inner{{}, ConvexKind::hull_of_subset};
    for (Vec2 v : hull.vertices) inner.vertices.push_back(c + factor * (v - c));
    std::size_t inside = 0;
    for (Vec2 p : pts) {
      if (inner.contains_strictly(p)) ++inside;
    }
    best = std::max(best, inner.area() - static_cast<double>(inside) / nn);
  }
  return std::max(best, 0.0);
}

/// max over `trials` random subsets of size 1..k_max of the hull local
/// discrepancy. Trial r draws from SplitMix64::derive(seed, r).
inline double hull_subset_lower_bound(std::span<const SquarePoint> points, std::size_t k_max,
                                      std::size_t trials, std::uint64_t seed) {
  if (trials == 0 || points.empty() || k_max == 0) return 0.0;
  std::vector<Vec2> pts;
  pts.reserve(points.size());
  for (const auto &p : points) pts.push_back(to_vec(p));
  const std::size_t cap = std::min(k_max, pts.size());
  std::vector<double> per_trial(trials, 0.0);
  parallel_for(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> idx(pts.size());
    std::vector<Vec2> subset;
    for (std::size_t r = begin; r < end; ++r) {
      SplitMix64 rng(SplitMix64::derive(seed, r));
      const std::size_t k = 1 + static_cast<std::size_t>(rng.below(cap));
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      subset.clear();
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
        std::swap(idx[i], idx[j]);
        subset.push_back(pts[idx[i]]);
      }
      per_trial[r] = hull_local_discrepancy(pts, subset);
    }
  });
  return *std::max_element(per_trial.begin(), per_trial.end());
}

// ---------------------------------------------------------------------------
// Report

struct IsotropicOptions {
  std::size_t hull_k_max = 8;
  std::size_t hull_trials = 2000;
  std::uint64_t seed = 1;
};

/// Proven upper bound for the isotropic discrepancy of a generated set;
/// the trivial bound 1 when the generator carries no guarantee.
inline double isotropic_upper_bound(const Provenance &prov) {
  switch (prov.kind) {
    case GeneratorKind::digital_net:
      if (prov.base && prov.level) return iso_bound_net(*prov.base, *prov.level);
      break;
    case GeneratorKind::digital_sequence_prefix:
      if (prov.base && prov.count) return iso_bound_sequence(*prov.base, *prov.count);
      break;
    case GeneratorKind::fibonacci:
      if (prov.level) return iso_bound_fibonacci(*prov.level);
      break;
    default:
      break;
  }
  return 1.0;
}

/// Lower bounds from halfplanes and sampled hulls, plus the upper bound.
/// A lower bound above the upper bound is reported as an internal error.
inline DiscrepancyReport isotropic_report(const SquarePointSet &p, const IsotropicOptions &opt = {}) {
  const double halfplane = halfplane_discrepancy(p.points());
  const double hull = hull_subset_lower_bound(p.points(), opt.hull_k_max, opt.hull_trials, opt.seed);
  const double upper = std::min(1.0, isotropic_upper_bound(p.provenance()));
  const double lower = std::max(halfplane, hull);
  if (lower > upper + 1e-12) {
    throw Error(ErrorKind::internal, "isotropic_report: lower bound " + std::to_string(lower) +
                                         " exceeds upper bound " + std::to_string(upper));
  }
  DiscrepancyReport r;
  r.kind = ReportKind::isotropic;
  r.value = lower;
  r.n = p.size();
  r.provenance = p.provenance();
  r.params["halfplane"] = halfplane;
  r.params["hull"] = hull;
  r.params["upper"] = upper;
  return r;
}

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_ISOTROPIC_HPP
