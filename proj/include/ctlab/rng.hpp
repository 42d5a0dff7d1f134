// Counter-based deterministic randomness. Every random decision in the
// project is a pure function of (seed, counters), so runs replay exactly
// and parallel loops produce order-independent results.
#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace ctlab {

// splitmix64 finalizer; full-avalanche 64-bit mix.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Value depends only on (seed, a, b).
inline uint64_t counter_hash(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
  h = mix64(h ^ (a + 0x452821e638d01377ULL));
  h = mix64(h ^ (b + 0x13198a2e03707344ULL));
  return h;
}

inline uint64_t fnv64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t subseed(uint64_t master, uint64_t tag) {
  return mix64(master ^ mix64(tag ^ 0x9216d5d98979fb1bULL));
}

inline uint64_t subseed(uint64_t master, std::string_view tag) {
  return subseed(master, fnv64(tag));
}

// Small sequential stream for shuffles and index draws.
class SplitMix {
 public:
  explicit SplitMix(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n) via rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  double unit() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Partial Fisher-Yates: first k entries of a seeded shuffle of [0, n).
inline std::vector<int> sample_indices(uint64_t seed, int n, int k) {
  SplitMix rng(seed);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (k > n) k = n;
  std::vector<int> out;
  out.reserve(size_t(k));
  for (int i = 0; i < k; ++i) {
    int j = i + int(rng.below(uint64_t(n - i)));
    std::swap(idx[size_t(i)], idx[size_t(j)]);
    out.push_back(idx[size_t(i)]);
  }
  return out;
}

}  // namespace ctlab
