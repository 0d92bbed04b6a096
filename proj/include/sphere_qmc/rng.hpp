#ifndef SPHERE_QMC_RNG_HPP
#define SPHERE_QMC_RNG_HPP

#include <cstdint>

namespace sphere_qmc {

/*
 * SplitMix64 (Steele, Lea, Flood 2014). The output for counter i depends only
 * on (seed, i), so streams can be split across workers and reproduced on any
 * platform. Doubles use the top 53 bits, giving values in [0, 1).
 */
class SplitMix64 {
 public:
  static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Value at position `counter` of the stream started from `seed`.
  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed + (counter + 1) * golden_gamma);
  }

  /// Seed for an independent sub-stream (e.g. one per trial).
  static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(mix(seed ^ 0x5851f42d4c957f2dULL) + stream * golden_gamma);
  }

  static constexpr double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  std::uint64_t next() {
    state_ += golden_gamma;
    return mix(state_);
  }

  double uniform() { return to_unit(next()); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift; the slight bias is irrelevant for sampling subsets.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // UniformRandomBitGenerator interface, for std::shuffle and friends.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t state_;
};

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_RNG_HPP
