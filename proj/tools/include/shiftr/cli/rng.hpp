#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace shiftr::cli {

/// SplitMix64 finalizer; used to turn (seed, stream) pairs into engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seedable generator whose output is identical on every platform:
/// std::mt19937_64 is fully specified by the standard, and the variates
/// below are computed by hand instead of through std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Stream `index` of master seed `seed`: the engine is seeded from
  /// splitmix64(splitmix64(seed) ⊕ index). Mixing the seed first keeps
  /// seeds that differ only in low bits from sharing a set of streams.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ index);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box–Muller).
  double normal();
  /// Uniform integer in {0, …, n−1}.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace shiftr::cli
