#pragma once

#include <cstdint>

namespace ldt {

// SplitMix64 (Steele/Lea/Flood). Every randomized command takes an explicit
// 64-bit seed and derives per-task streams with `stream`, so results are
// reproducible byte-for-byte regardless of worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), rejection sampled
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = (~0ULL) - (~0ULL) % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= lim);
    return v % n;
  }

  // uniform in [0, 1), 53-bit mantissa
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // derived independent stream: stream id folded through one SplitMix64 step
  static Rng stream(std::uint64_t seed, std::uint64_t id) {
    Rng r(seed ^ (0xA5A5A5A55A5A5A5AULL * (id + 1)));
    return Rng(r.next());
  }

 private:
  std::uint64_t s_;
};

}  // namespace ldt
