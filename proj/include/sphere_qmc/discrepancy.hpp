#ifndef SPHERE_QMC_DISCREPANCY_HPP
#define SPHERE_QMC_DISCREPANCY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "generators.hpp"
#include "parallel.hpp"
#include "points.hpp"
#include "rng.hpp"

namespace sphere_qmc {

enum class ReportKind {
  l2_cap,
  empirical_cap,
  exact_cap,
  iso_bound_net,
  iso_bound_seq,
  iso_bound_fib,
  cap_bound,
  isotropic,
};

inline std::string_view to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::l2_cap: return "L2-cap";
    case ReportKind::empirical_cap: return "empirical-cap";
    case ReportKind::exact_cap: return "exact-cap";
    case ReportKind::iso_bound_net: return "iso-bound-net";
    case ReportKind::iso_bound_seq: return "iso-bound-seq";
    case ReportKind::iso_bound_fib: return "iso-bound-fib";
    case ReportKind::cap_bound: return "cap-bound";
    case ReportKind::isotropic: return "isotropic";
  }
  return "unknown";
}

/// A cap attaining a reported value. `closed` means the value is the limit
/// from the closed side, i.e. the count includes points on the boundary.
struct CapWitness {
  SphericalCap cap;
  bool closed = false;
};

struct DiscrepancyReport {
  ReportKind kind = ReportKind::empirical_cap;
  double value = 0.0;
  std::size_t n = 0;
  Provenance provenance;
  std::map<std::string, double> params;
  std::optional<CapWitness> witness;
  bool degenerate = false;  // exact oracle only: general position was violated
};

/// Dot product clamped to [-1, 1]; all cap counts go through this so that
/// sweeps and witness re-evaluation see identical heights.
inline double cap_dot(const SpherePoint &w, const SpherePoint &z) {
  return std::clamp(dot(w, z), -1.0, 1.0);
}

namespace detail {

inline void require_unit_points(std::span<const SpherePoint> z, const char *who) {
  require(!z.empty(), ErrorKind::invalid_input, std::string(who) + ": empty point set");
  for (const auto &p : z) {
    require(is_unit(p), ErrorKind::invalid_input, std::string(who) + ": point is not unit-norm");
  }
}

}  // namespace detail

/// |#(Z in cap)/N - (1 - t)/2|. Open caps count w.z > t + tol, closed caps
/// count w.z >= t - tol.
inline double local_discrepancy(std::span<const SpherePoint> z, const CapWitness &c,
                                double tol = 0.0) {
  std::size_t count = 0;
  for (const auto &p : z) {
    const double d = cap_dot(c.cap.center, p);
    if (c.closed ? d >= c.cap.height - tol : d > c.cap.height + tol) ++count;
  }
  return std::abs(static_cast<double>(count) / static_cast<double>(z.size()) -
                  cap_area_fraction(c.cap.height));
}

// ---------------------------------------------------------------------------
// L2 discrepancy

/// (1/N^2) sum_j sum_k |z_j - z_k|. Rows are summed with compensation and
/// reduced pairwise, so the result does not depend on the worker count.
inline double sum_of_distances(std::span<const SpherePoint> z) {
  detail::require_unit_points(z, "sum_of_distances");
  const std::size_t n = z.size();
  std::vector<double> rows(n, 0.0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      CompensatedSum acc;
      for (std::size_t k = 0; k < n; ++k) acc.add(distance(z[j], z[k]));
      rows[j] = acc.value();
    }
  });
  const double nn = static_cast<double>(n);
  return pairwise_sum(rows) / (nn * nn);
}

inline double l2_cap_discrepancy(std::span<const SpherePoint> z) {
  const double radicand = (4.0 / 3.0 - sum_of_distances(z)) / 4.0;
  if (radicand < -1e-9) {
    throw Error(ErrorKind::numerical_inconsistency,
                "l2_cap_discrepancy: negative radicand " + std::to_string(radicand));
  }
  return radicand < 0.0 ? 0.0 : std::sqrt(radicand);
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/*
 * Independent estimate of D_L2^2 = int_{-1}^{1} int_S2 local(w, t)^2 dsigma(w) dt
 * with w uniform on the sphere (Lambert image of a uniform square point) and
 * t uniform on [-1, 1]. Each sample contributes 2 local^2.
 */
inline MonteCarloEstimate monte_carlo_l2_squared(std::span<const SpherePoint> z,
                                                 std::size_t samples, std::uint64_t seed) {
  detail::require_unit_points(z, "monte_carlo_l2_squared");
  detail::require(samples >= 2, ErrorKind::invalid_input, "monte_carlo_l2_squared: need >= 2 samples");
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const SquarePoint q{SplitMix64::to_unit(SplitMix64::at(seed, 3 * s)),
                          SplitMix64::to_unit(SplitMix64::at(seed, 3 * s + 1))};
      const double t = 2.0 * SplitMix64::to_unit(SplitMix64::at(seed, 3 * s + 2)) - 1.0;
      const double local = local_discrepancy(z, {{lambert_map(q), t}, false});
      values[s] = 2.0 * local * local;
    }
  });
  const double mean = pairwise_sum(values) / static_cast<double>(samples);
  CompensatedSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  const double var = sq.value() / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

// ---------------------------------------------------------------------------
// Empirical (point-centred) cap discrepancy

/*
 * Which one-sided limits the sweep evaluates at each distinct dot-product
 * height h. `both_limits` takes the open cap (count of w.z > h) and the limit
 * from below (count of w.z >= h). `open_caps` takes only open caps, i.e. the
 * maximum over caps that exist as open sets with height at a data point.
 */
enum class HeightSweep { both_limits, open_caps };

inline std::string_view to_string(HeightSweep s) {
  return s == HeightSweep::both_limits ? "both" : "open";
}

inline std::optional<HeightSweep> height_sweep_from_string(std::string_view s) {
  if (s == "both") return HeightSweep::both_limits;
  if (s == "open") return HeightSweep::open_caps;
  return std::nullopt;
}

namespace detail {

struct SweepResult {
  double value = -1.0;
  CapWitness witness;
};

inline SweepResult sweep_center(std::span<const SpherePoint> z, const SpherePoint &w,
                                HeightSweep mode, std::vector<double> &d) {
  const std::size_t n = z.size();
  const double nn = static_cast<double>(n);
  d.resize(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = cap_dot(w, z[i]);
  std::sort(d.begin(), d.end(), std::greater<>());

  SweepResult best;
  const auto consider = [&](double value, double h, bool closed) {
    if (value > best.value) best = {value, {{w, h}, closed}};
  };
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && d[j] == d[i]) ++j;
    const double h = d[i];
    const double area = (1.0 - h) / 2.0;
    consider(std::abs(static_cast<double>(i) / nn - area), h, false);
    if (mode == HeightSweep::both_limits) {
      consider(std::abs(static_cast<double>(j) / nn - area), h, true);
    }
    i = j;
  }
  // Whole sphere minus the antipode of w, if present.
  const auto above = static_cast<std::size_t>(
      std::count_if(d.begin(), d.end(), [](double x) { return x > -1.0; }));
  consider(std::abs(static_cast<double>(above) / nn - 1.0), -1.0, false);
  return best;
}

}  // namespace detail

/*
 * max over centres w and heights t of |#(Z in C(w,t))/N - (1-t)/2|, where for
 * each centre the heights are the distinct values of w.z_n (exact ties are
 * grouped) plus t = -1. O(M N log N) for M centres.
 */
inline DiscrepancyReport empirical_cap_discrepancy(std::span<const SpherePoint> z,
                                                   std::span<const SpherePoint> centers,
                                                   HeightSweep mode = HeightSweep::both_limits) {
  detail::require_unit_points(z, "empirical_cap_discrepancy");
  detail::require_unit_points(centers, "empirical_cap_discrepancy (centers)");
  std::vector<detail::SweepResult> per_center(centers.size());
  parallel_for(centers.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch;
    for (std::size_t c = begin; c < end; ++c) {
      per_center[c] = detail::sweep_center(z, centers[c], mode, scratch);
    }
  });
  std::size_t arg = 0;
  for (std::size_t c = 1; c < per_center.size(); ++c) {
    if (per_center[c].value > per_center[arg].value) arg = c;
  }
  DiscrepancyReport r;
  r.kind = ReportKind::empirical_cap;
  r.value = per_center[arg].value;
  r.n = z.size();
  r.params["centers"] = static_cast<double>(centers.size());
  r.params["open_only"] = mode == HeightSweep::open_caps ? 1.0 : 0.0;
  r.witness = per_center[arg].witness;
  return r;
}

inline DiscrepancyReport empirical_cap_discrepancy(const SpherePointSet &z,
                                                   HeightSweep mode = HeightSweep::both_limits) {
  auto r = empirical_cap_discrepancy(z.points(), z.points(), mode);
  r.provenance = z.provenance();
  return r;
}

// ---------------------------------------------------------------------------
// Exact cap discrepancy for small N

inline constexpr std::size_t kExactCapDefaultLimit = 200;
inline constexpr double kExactCapTolerance = 1e-12;

/*
 * Supremum of the local discrepancy over all caps, by enumeration of the caps
 * at which it can be attained:
 *   - the plane through every three points,
 *   - for every two points, the smallest cap with both on its boundary
 *     (centre at the normalised midpoint),
 *   - caps centred at z_i with z_j on the boundary,
 *   - the degenerate heights t = 1 (point caps) and t = -1.
 * Each candidate is evaluated open and closed. A cap and its complement
 * C(-w,-t) have the same local discrepancy with open and closed swapped, so
 * one orientation per candidate suffices. If four or more points lie on a
 * candidate boundary (within 1e-12) the result may miss a limit configuration
 * and `degenerate` is set. O(N^4).
 */
inline DiscrepancyReport exact_cap_discrepancy(std::span<const SpherePoint> z,
                                               std::size_t limit = kExactCapDefaultLimit) {
  detail::require_unit_points(z, "exact_cap_discrepancy");
  const std::size_t n = z.size();
  if (n > limit) {
    throw Error(ErrorKind::size_limit, "exact_cap_discrepancy: N = " + std::to_string(n) +
                                           " exceeds the limit " + std::to_string(limit));
  }
  const double nn = static_cast<double>(n);
  constexpr double tol = kExactCapTolerance;

  struct Best {
    double value = -1.0;
    CapWitness witness;
    bool degenerate = false;
  };

  const auto evaluate = [&](Best &best, const SpherePoint &w, double t) {
    t = std::clamp(t, -1.0, 1.0);
    std::size_t open = 0;
    std::size_t closed = 0;
    std::size_t on_boundary = 0;
    for (const auto &p : z) {
      const double d = cap_dot(w, p);
      if (d > t + tol) ++open;
      if (d >= t - tol) ++closed;
      if (std::abs(d - t) <= tol) ++on_boundary;
    }
    if (on_boundary >= 4) best.degenerate = true;
    const double area = (1.0 - t) / 2.0;
    const double vo = std::abs(static_cast<double>(open) / nn - area);
    const double vc = std::abs(static_cast<double>(closed) / nn - area);
    if (vo > best.value) best = {vo, {{w, t}, false}, best.degenerate};
    if (vc > best.value) best = {vc, {{w, t}, true}, best.degenerate};
  };

  std::vector<Best> per_i(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Best &best = per_i[i];
      const SpherePoint &a = z[i];
      evaluate(best, a, 1.0);
      evaluate(best, a, -1.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) evaluate(best, a, cap_dot(a, z[j]));
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        const SpherePoint &b = z[j];
        const SpherePoint mid{a.x + b.x, a.y + b.y, a.z + b.z};
        if (norm(mid) > 1e-9) {
          const SpherePoint w = normalized(mid);
          evaluate(best, w, dot(w, a));
        }
        const SpherePoint ab{b.x - a.x, b.y - a.y, b.z - a.z};
        for (std::size_t k = j + 1; k < n; ++k) {
          const SpherePoint &c = z[k];
          const SpherePoint ac{c.x - a.x, c.y - a.y, c.z - a.z};
          const SpherePoint normal{ab.y * ac.z - ab.z * ac.y, ab.z * ac.x - ab.x * ac.z,
                                   ab.x * ac.y - ab.y * ac.x};
          if (norm(normal) <= 1e-14) continue;  // coincident points
          const SpherePoint w = normalized(normal);
          evaluate(best, w, (dot(w, a) + dot(w, b) + dot(w, c)) / 3.0);
        }
      }
    }
  });

  Best best;
  bool degenerate = false;
  for (const auto &b : per_i) {
    degenerate = degenerate || b.degenerate;
    if (b.value > best.value) best = b;
  }
  DiscrepancyReport r;
  r.kind = ReportKind::exact_cap;
  r.value = best.value;
  r.n = n;
  r.witness = best.witness;
  r.degenerate = degenerate;
  r.params["tolerance"] = tol;
  return r;
}

inline DiscrepancyReport exact_cap_discrepancy(const SpherePointSet &z,
                                               std::size_t limit = kExactCapDefaultLimit) {
  auto r = exact_cap_discrepancy(z.points(), limit);
  r.provenance = z.provenance();
  return r;
}

// ---------------------------------------------------------------------------
// Bounds

/// Isotropic discrepancy bound for a (0,m,2)-net in base b: 4 sqrt(2) b^-floor(m/2).
inline double iso_bound_net(int b, int m) {
  detail::require(b >= 2 && m >= 0, ErrorKind::invalid_input, "iso_bound_net: need b >= 2, m >= 0");
  return 4.0 * std::numbers::sqrt2 * std::pow(static_cast<double>(b), -(m / 2));
}

/// Bound for the first n points of a (0,2)-sequence: 4 sqrt(2) (b^2 + b^1.5) / sqrt(n).
inline double iso_bound_sequence(int b, std::uint64_t n) {
  detail::require(b >= 2 && n >= 1, ErrorKind::invalid_input,
                  "iso_bound_sequence: need b >= 2, n >= 1");
  const double bd = static_cast<double>(b);
  return 4.0 * std::numbers::sqrt2 * (bd * bd + std::pow(bd, 1.5)) /
         std::sqrt(static_cast<double>(n));
}

/// Bound for the Fibonacci lattice F_m: 4 sqrt(2/F_m) (m odd), 4 sqrt(8/F_m) (m even).
inline double iso_bound_fibonacci(int m) {
  detail::require(m >= 1, ErrorKind::invalid_input, "iso_bound_fibonacci: m must be >= 1");
  const double f = static_cast<double>(fibonacci_number(m));
  return 4.0 * std::sqrt((m % 2 == 1 ? 2.0 : 8.0) / f);
}

/// One row of the worst-case covering count: a cap pre-image split into p
/// convex parts, q of which enter with a complement.
struct CoveringCase {
  char label;
  int parts;
  int complements;
};

inline constexpr std::array<CoveringCase, 5> kCoveringCases{{
    {'A', 4, 2},
    {'B', 5, 3},
    {'C', 7, 3},
    {'D', 6, 3},
    {'E', 6, 4},
}};

/// max over the covering cases of 2p - q.
inline constexpr int covering_constant() {
  int best = 0;
  for (const auto &c : kCoveringCases) best = std::max(best, 2 * c.parts - c.complements);
  return best;
}

/// Cap discrepancy bound implied by an isotropic discrepancy bound j.
inline double cap_bound_from_iso(double j) {
  detail::require(j >= 0.0, ErrorKind::invalid_input, "cap_bound_from_iso: j must be >= 0");
  return covering_constant() * j;
}

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_DISCREPANCY_HPP
