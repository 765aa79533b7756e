#include "combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace errate {

uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial: C(n,k) exceeds 64 bits");
  }
  return static_cast<uint64_t>(r);
}

bool binomial_fits(int n, int k) {
  try {
    binomial(n, k);
    return true;
  } catch (const std::overflow_error&) {
    return false;
  }
}

double log_binomial(double a, double b) {
  if (b < 0 || b > a) return -INFINITY;
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

uint64_t colex_rank(std::span<const int32_t> sorted_subset) {
  uint64_t r = 0;
  for (size_t t = 0; t < sorted_subset.size(); ++t)
    r += binomial(sorted_subset[t], static_cast<int>(t) + 1);
  return r;
}

std::vector<int32_t> colex_unrank(int n, int w, uint64_t rank) {
  if (w < 0 || w > n) throw std::invalid_argument("colex_unrank: bad weight");
  if (rank >= binomial(n, w)) throw std::out_of_range("colex_unrank: rank out of range");
  std::vector<int32_t> s(static_cast<size_t>(w));
  int v = n - 1;
  for (int t = w; t >= 1; --t) {
    while (binomial(v, t) > rank) --v;
    s[static_cast<size_t>(t) - 1] = v;
    rank -= binomial(v, t);
    --v;
  }
  return s;
}

void colex_next(std::vector<int32_t>& s) {
  const size_t w = s.size();
  for (size_t t = 0; t < w; ++t) {
    const bool can_grow = (t + 1 < w) ? (s[t] + 1 < s[t + 1]) : true;
    if (can_grow) {
      ++s[t];
      for (size_t i = 0; i < t; ++i) s[i] = static_cast<int32_t>(i);
      return;
    }
  }
}

}  // namespace errate
