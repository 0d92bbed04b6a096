#ifndef SPHERE_QMC_GENERATORS_HPP
#define SPHERE_QMC_GENERATORS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"
#include "points.hpp"

namespace sphere_qmc {

// ---------------------------------------------------------------------------
// Digital nets and sequences

using DigitMatrix = std::vector<std::vector<int>>;

inline bool is_prime(int b) {
  if (b < 2) return false;
  for (int d = 2; d * d <= b; ++d) {
    if (b % d == 0) return false;
  }
  return true;
}

/// Number of base-b digits kept per coordinate: the largest K with b^K <= 2^48.
/// Coordinates are stored as X / b^K with an exact integer X, so they can be
/// recovered exactly from their double value.
inline int precision_digits(int b) {
  detail::require(b >= 2, ErrorKind::invalid_input, "base must be >= 2");
  int k = 0;
  std::uint64_t p = 1;
  while (p <= (std::uint64_t{1} << 48) / static_cast<std::uint64_t>(b)) {
    p *= static_cast<std::uint64_t>(b);
    ++k;
  }
  return k;
}

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    detail::require(r <= std::numeric_limits<std::uint64_t>::max() / b, ErrorKind::invalid_input,
                    "integer power overflows 64 bits");
    r *= b;
  }
  return r;
}

/// Upper-triangular Pascal matrix mod b: entry (i, j) = binom(j, i) mod b.
inline DigitMatrix pascal_matrix(int b, int size) {
  DigitMatrix c(size, std::vector<int>(size, 0));
  // Row j of Pascal's triangle, reduced mod b, becomes column j.
  std::vector<int> row(size, 0);
  for (int j = 0; j < size; ++j) {
    for (int i = j; i > 0; --i) row[i] = (row[i] + row[i - 1]) % b;
    row[0] = 1;
    for (int i = 0; i <= j; ++i) c[i][j] = row[i];
  }
  return c;
}

inline DigitMatrix identity_matrix(int size) {
  DigitMatrix c(size, std::vector<int>(size, 0));
  for (int i = 0; i < size; ++i) c[i][i] = 1;
  return c;
}

/*
 * A digital (0,m,2)-net in base b. Empty matrices select the built-in
 * construction (C1 = identity, C2 = Pascal matrix mod b, i.e. Faure's
 * construction; for b = 2 this is the two-dimensional Sobol' net), which
 * requires b prime. Custom matrices must be m x m with entries in [0, b).
 */
struct DigitalNetSpec {
  int base = 2;
  int level = 0;
  DigitMatrix c1;
  DigitMatrix c2;
};

namespace detail {

inline void validate_matrix(const DigitMatrix &c, int b, int m, const char *name) {
  require(static_cast<int>(c.size()) == m, ErrorKind::invalid_input,
          std::string(name) + " must have m rows");
  for (const auto &row : c) {
    require(static_cast<int>(row.size()) == m, ErrorKind::invalid_input,
            std::string(name) + " must have m columns");
    for (int e : row) {
      require(e >= 0 && e < b, ErrorKind::invalid_input,
              std::string(name) + " entries must lie in [0, b)");
    }
  }
}

/*
 * First `count` points of the digital sequence with generator matrices
 * (identity, c2) truncated to `digits` rows and columns. Digits of n are
 * little-endian; output digit i has weight b^(-i-1). The digit vector of the
 * second coordinate is updated incrementally: incrementing n adds column j of
 * c2 for every digit position j touched by the carry chain (a wrap from b-1 to
 * 0 subtracts (b-1) times the column, which is the same mod b).
 */
inline std::vector<SquarePoint> faure_points(int b, std::uint64_t count, int digits,
                                             const DigitMatrix &c2) {
  const int k = precision_digits(b);
  require(digits <= k, ErrorKind::invalid_input,
          "index needs more base-b digits than double precision can hold exactly");
  const double scale = static_cast<double>(ipow(b, k));
  std::vector<std::uint64_t> weight(digits);
  for (int i = 0; i < digits; ++i) weight[i] = ipow(b, k - 1 - i);

  std::vector<SquarePoint> out;
  out.reserve(count);
  std::vector<int> n_digits(digits + 1, 0);
  std::vector<int> y(digits, 0);
  for (std::uint64_t n = 0; n < count; ++n) {
    if (n > 0) {
      int j = 0;
      while (true) {
        require(j < digits, ErrorKind::internal, "digit overflow in faure_points");
        for (int i = 0; i < digits; ++i) y[i] = (y[i] + c2[i][j]) % b;
        if (++n_digits[j] < b) break;
        n_digits[j] = 0;
        ++j;
      }
    }
    std::uint64_t x1 = 0;
    std::uint64_t x2 = 0;
    for (int i = 0; i < digits; ++i) {
      x1 += static_cast<std::uint64_t>(n_digits[i]) * weight[i];
      x2 += static_cast<std::uint64_t>(y[i]) * weight[i];
    }
    out.push_back({static_cast<double>(x1) / scale, static_cast<double>(x2) / scale});
  }
  return out;
}

inline std::vector<SquarePoint> general_digital_points(int b, int m, const DigitMatrix &c1,
                                                       const DigitMatrix &c2) {
  const int k = precision_digits(b);
  require(m <= k, ErrorKind::invalid_input, "level exceeds representable digits");
  const std::uint64_t count = ipow(b, m);
  const double scale = static_cast<double>(ipow(b, k));
  std::vector<std::uint64_t> weight(m);
  for (int i = 0; i < m; ++i) weight[i] = ipow(b, k - 1 - i);
  std::vector<SquarePoint> out;
  out.reserve(count);
  std::vector<int> d(m);
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t r = n;
    for (int i = 0; i < m; ++i) {
      d[i] = static_cast<int>(r % b);
      r /= b;
    }
    std::uint64_t x1 = 0;
    std::uint64_t x2 = 0;
    for (int i = 0; i < m; ++i) {
      int y1 = 0;
      int y2 = 0;
      for (int j = 0; j < m; ++j) {
        y1 = (y1 + c1[i][j] * d[j]) % b;
        y2 = (y2 + c2[i][j] * d[j]) % b;
      }
      x1 += static_cast<std::uint64_t>(y1) * weight[i];
      x2 += static_cast<std::uint64_t>(y2) * weight[i];
    }
    out.push_back({static_cast<double>(x1) / scale, static_cast<double>(x2) / scale});
  }
  return out;
}

}  // namespace detail

inline SquarePointSet digital_net(const DigitalNetSpec &spec) {
  const int b = spec.base;
  const int m = spec.level;
  detail::require(b >= 2, ErrorKind::invalid_input, "digital_net: base must be >= 2");
  detail::require(m >= 0, ErrorKind::invalid_input, "digital_net: level must be >= 0");
  detail::require(m <= precision_digits(b), ErrorKind::invalid_input,
                  "digital_net: b^m exceeds the supported index range");
  Provenance prov;
  prov.kind = GeneratorKind::digital_net;
  prov.base = b;
  prov.level = m;
  prov.count = ipow(b, m);

  const bool builtin = spec.c1.empty() && spec.c2.empty();
  if (builtin) {
    if (!is_prime(b)) {
      throw Error(ErrorKind::unsupported,
                  "digital_net: built-in matrices need a prime base, got " + std::to_string(b));
    }
    return {detail::faure_points(b, ipow(b, m), m, pascal_matrix(b, m)), prov};
  }
  detail::validate_matrix(spec.c1, b, m, "C1");
  detail::validate_matrix(spec.c2, b, m, "C2");
  return {detail::general_digital_points(b, m, spec.c1, spec.c2), prov};
}

inline SquarePointSet digital_net(int b, int m) { return digital_net(DigitalNetSpec{b, m, {}, {}}); }

/// First n points of the (0,2)-sequence built from the same matrices,
/// extended to as many digit rows as the largest index needs.
inline SquarePointSet digital_sequence_prefix(int b, std::uint64_t n) {
  detail::require(b >= 2, ErrorKind::invalid_input, "digital_sequence_prefix: base must be >= 2");
  detail::require(n >= 1, ErrorKind::invalid_input, "digital_sequence_prefix: n must be >= 1");
  if (!is_prime(b)) {
    throw Error(ErrorKind::unsupported, "digital_sequence_prefix: base must be prime");
  }
  int digits = 0;
  for (std::uint64_t r = n - 1; r > 0; r /= static_cast<std::uint64_t>(b)) ++digits;
  digits = std::max(digits, 1);
  Provenance prov;
  prov.kind = GeneratorKind::digital_sequence_prefix;
  prov.base = b;
  prov.count = n;
  return {detail::faure_points(b, n, digits, pascal_matrix(b, digits)), prov};
}

/*
 * Exact net test. Each coordinate is rounded to the grid b^-K (K from
 * precision_digits), so points produced by the generators above are
 * classified by their exact digit prefixes; cell membership is then pure
 * integer division.
 */
inline bool is_net(std::span<const SquarePoint> points, int b, int m) {
  detail::require(b >= 2 && m >= 0, ErrorKind::invalid_input, "is_net: need b >= 2, m >= 0");
  const int k = precision_digits(b);
  detail::require(m <= k, ErrorKind::invalid_input, "is_net: level exceeds representable digits");
  const std::uint64_t n = ipow(b, m);
  detail::require(points.size() == n, ErrorKind::invalid_input,
                  "is_net: expected b^m = " + std::to_string(n) + " points, got " +
                      std::to_string(points.size()));
  const std::uint64_t full = ipow(b, k);
  const double scale = static_cast<double>(full);
  std::vector<std::uint64_t> x1(n);
  std::vector<std::uint64_t> x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &p = points[i];
    detail::require(p.alpha >= 0.0 && p.alpha < 1.0 && p.tau >= 0.0 && p.tau < 1.0,
                    ErrorKind::invalid_input, "is_net: points must lie in [0,1)^2");
    x1[i] = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::llround(p.alpha * scale)), full - 1);
    x2[i] = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::llround(p.tau * scale)), full - 1);
  }
  std::vector<char> ok(m + 1, 1);
  parallel_for(static_cast<std::size_t>(m + 1), [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> cell(n);
    for (std::size_t d1 = begin; d1 < end; ++d1) {
      const int d2 = m - static_cast<int>(d1);
      const std::uint64_t div1 = ipow(b, k - static_cast<int>(d1));
      const std::uint64_t div2 = ipow(b, k - d2);
      const std::uint64_t stride = ipow(b, d2);
      std::fill(cell.begin(), cell.end(), 0u);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t idx = (x1[i] / div1) * stride + x2[i] / div2;
        if (++cell[idx] > 1) {
          ok[d1] = 0;
          break;
        }
      }
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

// ---------------------------------------------------------------------------
// Fibonacci lattices

inline constexpr int kMaxFibonacciIndex = 85;

/// F_1 = F_2 = 1, F_m = F_{m-1} + F_{m-2}; F_0 = 0.
inline std::int64_t fibonacci_number(int m) {
  detail::require(m >= 0 && m <= kMaxFibonacciIndex, ErrorKind::invalid_input,
                  "fibonacci index must lie in [0, 85]");
  std::int64_t a = 0;
  std::int64_t b = 1;
  for (int i = 0; i < m; ++i) {
    const std::int64_t next = a + b;
    a = b;
    b = next;
  }
  return a;
}

struct FibonacciSpec {
  int index = 1;
  std::int64_t count = 1;     // F_m
  std::int64_t previous = 0;  // F_{m-1}

  static FibonacciSpec make(int m) {
    detail::require(m >= 1, ErrorKind::invalid_input, "fibonacci index must be >= 1");
    return {m, fibonacci_number(m), fibonacci_number(m - 1)};
  }
};

/// (n / F_m, {n F_{m-1} / F_m}) for n = 0 .. F_m - 1, reduced in integers first.
inline SquarePointSet fibonacci_lattice(int m) {
  const auto spec = FibonacciSpec::make(m);
  const auto f = spec.count;
  std::vector<SquarePoint> pts;
  pts.reserve(static_cast<std::size_t>(f));
  for (std::int64_t n = 0; n < f; ++n) {
    const auto r = static_cast<std::int64_t>(
        (static_cast<__int128>(n) * spec.previous) % static_cast<__int128>(f));
    pts.push_back({static_cast<double>(n) / static_cast<double>(f),
                   static_cast<double>(r) / static_cast<double>(f)});
  }
  Provenance prov;
  prov.kind = GeneratorKind::fibonacci;
  prov.level = m;
  prov.count = static_cast<std::uint64_t>(f);
  return {std::move(pts), prov};
}

/// Lattice vector with exact rational coordinates (x, y) / den.
struct LatticeVector {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t den = 1;

  double xd() const { return static_cast<double>(x) / static_cast<double>(den); }
  double yd() const { return static_cast<double>(y) / static_cast<double>(den); }
  double length() const { return std::hypot(xd(), yd()); }
};

struct GeneratingVectors {
  LatticeVector a;
  LatticeVector b;
};

/*
 * Reduced basis of the Fibonacci lattice F_m. For odd m = 2k+1:
 *   a = (F_k, (-1)^(k-1) F_{k+1}) / F_m,  b = (F_{k+1}, (-1)^k F_k) / F_m,
 * and for even m = 2k:
 *   a = (F_k, (-1)^(k-1) F_k) / F_m,      b = (F_{k+1}, (-1)^k F_{k-1}) / F_m.
 */
inline GeneratingVectors fibonacci_generating_vectors(int m) {
  if (m < 3) {
    throw Error(ErrorKind::unsupported, "fibonacci_generating_vectors: m must be >= 3");
  }
  const std::int64_t fm = fibonacci_number(m);
  const int k = m / 2;
  const auto sign = [](int e) { return (e % 2 == 0) ? std::int64_t{1} : std::int64_t{-1}; };
  if (m % 2 == 1) {
    const auto fk = fibonacci_number(k);
    const auto fk1 = fibonacci_number(k + 1);
    return {{fk, sign(k - 1) * fk1, fm}, {fk1, sign(k) * fk, fm}};
  }
  const auto fk = fibonacci_number(k);
  const auto fk1 = fibonacci_number(k + 1);
  const auto fkm1 = fibonacci_number(k - 1);
  return {{fk, sign(k - 1) * fk, fm}, {fk1, sign(k) * fkm1, fm}};
}

/// Minimum pairwise Euclidean distance, exhaustive O(N^2) scan.
inline double min_distance(std::span<const SquarePoint> pts) {
  detail::require(pts.size() >= 2, ErrorKind::invalid_input, "min_distance needs >= 2 points");
  const std::size_t n = pts.size();
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = pts[i].alpha - pts[j].alpha;
        const double dy = pts[i].tau - pts[j].tau;
        best = std::min(best, dx * dx + dy * dy);
      }
      row_min[i] = best;
    }
  });
  return std::sqrt(*std::min_element(row_min.begin(), row_min.end()));
}

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_GENERATORS_HPP
