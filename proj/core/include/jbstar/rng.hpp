#pragma once

#include <cstdint>
#include <random>

namespace jbstar {

/// Seeded random source. The generator is std::mt19937_64; substreams are
/// derived from (seed, index) with a splitmix64 mix, so a suite can hand
/// check #k its own independent stream and stay deterministic regardless of
/// how many draws earlier checks consumed. No global state.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}

  /// Independent stream for check/sample index `idx` under the same seed.
  Rng substream(std::uint64_t idx) const {
    return Rng(splitmix(seed_ ^ splitmix(idx + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  std::uint64_t integer(std::uint64_t n) {  // uniform in [0, n)
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace jbstar
