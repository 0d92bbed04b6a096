#ifndef SPHERE_QMC_POINTS_HPP
#define SPHERE_QMC_POINTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace sphere_qmc {

/// Parameter point (alpha, tau) of the unit square. alpha is the longitude
/// parameter, tau the height parameter (tau = 0 is the north pole).
struct SquarePoint {
  double alpha = 0.0;
  double tau = 0.0;

  friend bool operator==(const SquarePoint &, const SquarePoint &) = default;
};

struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const SpherePoint &, const SpherePoint &) = default;
};

inline double dot(const SpherePoint &a, const SpherePoint &b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const SpherePoint &a) { return std::sqrt(dot(a, a)); }

inline double distance(const SpherePoint &a, const SpherePoint &b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline SpherePoint normalized(const SpherePoint &a) {
  const double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

inline SpherePoint operator-(const SpherePoint &a) { return {-a.x, -a.y, -a.z}; }

inline bool is_unit(const SpherePoint &a, double tol = 1e-9) {
  return std::abs(norm(a) - 1.0) <= tol;
}

/// Open spherical cap {y : center . y > height}.
struct SphericalCap {
  SpherePoint center;
  double height = 0.0;
};

enum class GeneratorKind { digital_net, digital_sequence_prefix, fibonacci, random, custom };

inline std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::digital_net: return "digital-net";
    case GeneratorKind::digital_sequence_prefix: return "digital-sequence-prefix";
    case GeneratorKind::fibonacci: return "fibonacci";
    case GeneratorKind::random: return "random";
    case GeneratorKind::custom: return "custom";
  }
  return "custom";
}

inline std::optional<GeneratorKind> generator_kind_from_string(std::string_view s) {
  for (auto k : {GeneratorKind::digital_net, GeneratorKind::digital_sequence_prefix,
                 GeneratorKind::fibonacci, GeneratorKind::random, GeneratorKind::custom}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// Where a point set came from. Unused fields stay empty.
struct Provenance {
  GeneratorKind kind = GeneratorKind::custom;
  std::optional<int> base;
  std::optional<int> level;
  std::optional<std::uint64_t> count;
  std::optional<std::uint64_t> seed;
  bool on_sphere = false;

  friend bool operator==(const Provenance &, const Provenance &) = default;
};

/// Nonempty ordered collection of points plus provenance.
template <class Point>
class PointSet {
 public:
  using point_type = Point;

  PointSet(std::vector<Point> points, Provenance provenance)
      : points_(std::move(points)), provenance_(std::move(provenance)) {
    detail::require(!points_.empty(), ErrorKind::invalid_input, "point set must be nonempty");
  }

  std::span<const Point> points() const { return points_; }
  const Provenance &provenance() const { return provenance_; }
  std::size_t size() const { return points_.size(); }
  const Point &operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::vector<Point> points_;
  Provenance provenance_;
};

using SquarePointSet = PointSet<SquarePoint>;
using SpherePointSet = PointSet<SpherePoint>;

// ---------------------------------------------------------------------------
// Lambert cylindrical equal-area map

inline bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

/// Phi(alpha, tau) = (2 sqrt(tau - tau^2) cos 2 pi alpha,
///                    2 sqrt(tau - tau^2) sin 2 pi alpha, 1 - 2 tau).
inline SpherePoint lambert_map(const SquarePoint &p) {
  if (!in_unit_interval(p.alpha) || !in_unit_interval(p.tau)) {
    throw Error(ErrorKind::invalid_input,
                "lambert_map: (" + std::to_string(p.alpha) + ", " + std::to_string(p.tau) +
                    ") outside [0,1]^2");
  }
  const double r = 2.0 * std::sqrt(p.tau - p.tau * p.tau);
  const double angle = 2.0 * std::numbers::pi * p.alpha;
  return {r * std::cos(angle), r * std::sin(angle), 1.0 - 2.0 * p.tau};
}

struct LambertInverse {
  SquarePoint point;
  bool at_pole = false;  // alpha is arbitrary there; reported as 0
};

inline LambertInverse lambert_inverse(const SpherePoint &z) {
  detail::require(is_unit(z), ErrorKind::invalid_input, "lambert_inverse: point is not unit-norm");
  const double tau = std::clamp((1.0 - z.z) / 2.0, 0.0, 1.0);
  if (z.x == 0.0 && z.y == 0.0) return {{0.0, tau}, true};
  double alpha = std::atan2(z.y, z.x) / (2.0 * std::numbers::pi);
  if (alpha < 0.0) alpha += 1.0;
  if (alpha >= 1.0) alpha = 0.0;
  return {{alpha, tau}, false};
}

/// Normalised area of C(w, t): (1 - t) / 2, independent of the centre.
inline double cap_area_fraction(double t) {
  detail::require(t >= -1.0 && t <= 1.0, ErrorKind::invalid_input,
                  "cap height " + std::to_string(t) + " outside [-1,1]");
  return (1.0 - t) / 2.0;
}

inline bool cap_contains(const SphericalCap &cap, const SpherePoint &z) {
  return dot(cap.center, z) > cap.height;
}

/// n i.i.d. uniform points of [0,1)^2 from SplitMix64 (point i uses stream
/// positions 2i and 2i+1).
inline SquarePointSet random_square_points(std::size_t n, std::uint64_t seed) {
  detail::require(n >= 1, ErrorKind::invalid_input, "random_square_points: n must be >= 1");
  std::vector<SquarePoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].alpha = SplitMix64::to_unit(SplitMix64::at(seed, 2 * i));
    pts[i].tau = SplitMix64::to_unit(SplitMix64::at(seed, 2 * i + 1));
  }
  Provenance prov;
  prov.kind = GeneratorKind::random;
  prov.count = n;
  prov.seed = seed;
  return {std::move(pts), prov};
}

inline std::vector<SpherePoint> lambert_map(std::span<const SquarePoint> pts) {
  std::vector<SpherePoint> out;
  out.reserve(pts.size());
  for (const auto &p : pts) out.push_back(lambert_map(p));
  return out;
}

inline SpherePointSet to_sphere(const SquarePointSet &set) {
  Provenance prov = set.provenance();
  prov.on_sphere = true;
  return {lambert_map(set.points()), prov};
}

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_POINTS_HPP
