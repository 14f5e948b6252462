#pragma once

#include <cstdint>
#include <vector>

namespace lexichoice {

/// Deterministic splitmix64 generator. The standard engines are portable but
/// the standard distributions are not; every draw here is fully specified so
/// that reports are byte-stable across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [0, n). n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  /// True with probability num/den.
  bool chance(int num, int den) { return below(den) < num; }

  std::uint32_t mask_bits(int n_bits) {
    if (n_bits <= 0) return 0;
    return static_cast<std::uint32_t>(next() & ((1ull << n_bits) - 1));
  }

  /// Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(i + 1)]);
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace lexichoice
