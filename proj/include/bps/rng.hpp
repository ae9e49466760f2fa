#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace bps {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Folds several seed components (master seed, horizon, instance index, ...)
// into one stream seed. Experiment determinism relies on seeds being a pure
// function of these components, never of scheduling order.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t acc = 0x8f5e3c2d1a0b4968ull;
  for (std::uint64_t p : parts) acc = splitmix64(acc ^ p);
  return acc;
}

// mt19937_64 with hand-rolled bounded draws. std::uniform_int_distribution is
// implementation-defined, which would break bit-for-bit reproducibility of
// seeded runs across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  std::uint64_t next() { return eng_(); }

  // Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bps
