#pragma once

#include <cmath>
#include <cstdint>

namespace qecgrow {

/// Small counter-friendly RNG (splitmix64 core). Shot-level reproducibility
/// comes from deriving one independent stream per shot via Rng::for_shot, so
/// partitioning shots across workers never changes the sampled values.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // Decorrelate trivially related seeds.
    next();
    next();
  }

  static Rng for_shot(std::uint64_t seed, std::uint64_t shot) {
    return Rng(mix(seed ^ mix(shot + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  bool bit() { return next() >> 63; }

  /// Uniform in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free threshold method is overkill here; modulo bias is
    // negligible for n <= 15 but reject anyway to keep draws exact.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  /// Number of positions to skip until the next success of a Bernoulli(p)
  /// process (geometric, support {0,1,2,...}). p must be in (0,1).
  std::uint64_t geometric_skip(double p) {
    double u = uniform();
    if (u <= 0) u = 0x1.0p-53;
    return static_cast<std::uint64_t>(std::log1p(-u) / std::log1p(-p));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
  }

  std::uint64_t state_;
};

}  // namespace qecgrow
