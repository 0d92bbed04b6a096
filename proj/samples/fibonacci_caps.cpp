// Cap discrepancy of spherical Fibonacci lattices next to the proven bound.
//
//   fibonacci_caps [m_max]

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "sphere_qmc/sphere_qmc.hpp"

int main(int argc, char **argv) {
  using namespace sphere_qmc;
  const int m_max = argc > 1 ? std::atoi(argv[1]) : 16;
  std::printf("%4s %8s %12s %12s %12s\n", "m", "N", "D~", "D_L2", "bound");
  for (int m = 6; m <= m_max; ++m) {
    const auto z = to_sphere(fibonacci_lattice(m));
    const double d = empirical_cap_discrepancy(z).value;
    const double l2 = l2_cap_discrepancy(z.points());
    const double bound = cap_bound_from_iso(iso_bound_fibonacci(m));
    std::printf("%4d %8zu %12.6f %12.6f %12.4f\n", m, z.size(), d, l2, bound);
  }
}
