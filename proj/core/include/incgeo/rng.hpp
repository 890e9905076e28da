#pragma once

#include <cmath>
#include <cstdint>

namespace incgeo {

// Counter-based generator: output i is a pure function of (seed, i), so a
// seed fully determines every stream and substreams can be split by hashing
// a shard index into the seed. std::* distributions are avoided on purpose;
// their output is implementation-defined, which would break byte-identical
// reproduction across toolchains.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed), ctr_(0) {}

  // Derive an independent substream, e.g. one per sample index.
  CounterRng split(std::uint64_t shard) const {
    return CounterRng(mix(seed_ ^ mix(shard + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t next_u64() { return mix(seed_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1): 53 high bits of the counter hash.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; one value per call, pairs drawn fresh.
  double normal() {
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t ctr_;
};

}  // namespace incgeo
