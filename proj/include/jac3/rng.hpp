#pragma once
#include <cstdint>
#include <string_view>

namespace jac3 {

// splitmix64; small, seedable, statistically fine for randomized algebra.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n > 0; rejection keeps it unbiased
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t lim = ~0ull - (~0ull % n);
    for (;;) {
      std::uint64_t v = next();
      if (v < lim) return v % n;
    }
  }
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

// independent deterministic stream for a named purpose
inline Rng rng_stream(std::uint64_t seed, std::string_view label) {
  Rng r(seed ^ fnv1a64(label));
  r.next();
  r.next();
  return r;
}

}  // namespace jac3
