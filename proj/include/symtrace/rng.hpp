#pragma once

#include <cstdint>

namespace symtrace {

// splitmix64: tiny, well-mixed, and identical on every platform. Simulated
// families are reproducible fixtures, so the generator is pinned here rather
// than delegated to implementation-defined <random> distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, bound); bias is irrelevant for fixture data.
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

  long long in_range(long long lo, long long hi) {  // inclusive bounds
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace symtrace
