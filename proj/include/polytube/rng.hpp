// Counter-based pseudo-random generator (SplitMix64 in counter mode).
//
// Every randomized suite derives its stream from a single 64-bit seed; the
// generator is pure integer arithmetic, so identical seeds reproduce identical
// streams on every platform.
#pragma once

#include <cstdint>

namespace polytube {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed ^ (0x94D049BB133111EBULL * stream)) {}

  // i-th word of the stream; advancing state is just a counter increment.
  std::uint64_t word(std::uint64_t counter) const {
    std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() { return word(counter_++); }

  // Uniform in [0, 1) with 53 significant bits.
  double unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  bool coin(double p = 0.5) { return unit() < p; }

  // Derive an independent child stream, e.g. one per test case.
  CounterRng fork(std::uint64_t stream) const { return CounterRng(seed_, stream + 1); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace polytube
