// Where the boundary of a cap, pulled back to the square, changes convexity.
//
//   level_curve v t

#include <cstdio>
#include <cstdlib>

#include "sphere_qmc/sphere_qmc.hpp"

int main(int argc, char **argv) {
  using namespace sphere_qmc;
  const double v = argc > 1 ? std::atof(argv[1]) : 0.25;
  const double t = argc > 2 ? std::atof(argv[2]) : 0.5;
  try {
    const auto tr = trace_level_curve({0.5, v, t}, 400);
    std::printf("topology %s, %d transversal pair(s), %d tangential\n", std::string(to_string(tr.topology)).c_str(),
                tr.transversal_pairs, tr.tangential_pairs);
    for (double tau : tr.zero_taus) std::printf("  curvature zero at tau = %.10f\n", tau);
    if (v != 0.5 && t == 1.0 - 2.0 * v) std::printf("  critical height tau_v = %.10f\n", critical_tau(v));
  } catch (const Error &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
