#pragma once

#include <cstdint>

namespace kwise {

// Counter-based generator: every output is a stateless mix of
// (seed, stream, counter), so identical seeds give identical streams on
// every platform, and parallel callers can derive disjoint streams
// without shared state. The mix is SplitMix64's finalizer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), counter_(0) {}

  // Independent stream for a sub-task (trial index, restart index, ...).
  Rng derive(std::uint64_t substream) const {
    return Rng(seed_, mix(stream_ ^ 0x9e3779b97f4a7c15ull, substream));
  }

  std::uint64_t next_u64() { return mix(seed_ ^ stream_, counter_++); }

  // Uniform in [0,1) with 53 bits of mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform in {0,...,bound-1} by 128-bit multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace kwise
