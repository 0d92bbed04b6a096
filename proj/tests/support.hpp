// Shared helpers for the test suites: seeded generators for property tests
// and small independent reference implementations.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sphere_qmc/sphere_qmc.hpp"

namespace testing_support {

using sphere_qmc::SpherePoint;
using sphere_qmc::SquarePoint;

/// Uniform point on the sphere from normalised Gaussians; independent of
/// the Lambert map.
inline SpherePoint gaussian_sphere_point(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  while (true) {
    const double x = g(rng);
    const double y = g(rng);
    const double z = g(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1e-6) return {x / n, y / n, z / n};
  }
}

inline std::vector<SpherePoint> gaussian_sphere_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SpherePoint> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(gaussian_sphere_point(rng));
  return out;
}

inline SquarePoint uniform_square_point(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(rng), u(rng)};
}

/// Rotation matrix from a unit quaternion built out of four Gaussians.
struct Rotation {
  double m[3][3];

  SpherePoint operator()(const SpherePoint &p) const {
    return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z, m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
  }
};

inline Rotation random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
  const double n = std::sqrt(a * a + b * b + c * c + d * d);
  a /= n;
  b /= n;
  c /= n;
  d /= n;
  return {{{a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)},
           {2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)},
           {2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d}}};
}

/// Exact binomial coefficient reduced mod b (Lucas-free, small arguments).
inline int binomial_mod(int n, int k, int b) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<int>> c(n + 1, std::vector<int>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1 % b;
    for (int j = 1; j <= i; ++j) c[i][j] = (c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0)) % b;
  }
  return c[n][k];
}

}  // namespace testing_support
