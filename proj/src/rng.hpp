#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace errate {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-seeded xoshiro256++. A stream is fully determined by
// (seed, stream index), so parallel workers draw identical sequences
// for a given frame or trial regardless of scheduling.
class Xoshiro256pp {
 public:
  Xoshiro256pp(uint64_t seed, uint64_t stream) {
    uint64_t x = seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL);
    for (auto& word : s_) word = splitmix64(x);
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound).
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (-bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Uniformly random w-subset of [0, n) via a partial Fisher-Yates pass,
// returned sorted. `scratch` is reused across calls.
inline std::vector<int32_t> uniform_weight_pattern(int n, int w, Xoshiro256pp& rng,
                                                   std::vector<int32_t>& scratch) {
  scratch.resize(static_cast<size_t>(n));
  std::iota(scratch.begin(), scratch.end(), 0);
  for (int t = 0; t < w; ++t) {
    auto j = static_cast<size_t>(t) + static_cast<size_t>(rng.below(static_cast<uint64_t>(n - t)));
    std::swap(scratch[static_cast<size_t>(t)], scratch[j]);
  }
  std::vector<int32_t> out(scratch.begin(), scratch.begin() + w);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace errate
