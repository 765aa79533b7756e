#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace errate {

// Exact n-choose-k in 64 bits. Throws std::overflow_error if the value
// does not fit in a uint64_t.
uint64_t binomial(int n, int k);

// True iff C(n, k) fits in 64 bits.
bool binomial_fits(int n, int k);

// log C(a, b) via lgamma, valid for large arguments where the exact
// value overflows.
double log_binomial(double a, double b);

// Subsets of {0, ..., n-1} of fixed weight w, ordered colexicographically:
// rank(S) = sum_t C(s_t, t+1) for S = {s_0 < s_1 < ... < s_{w-1}}.
// Rank 0 is {0, 1, ..., w-1}; the last rank is {n-w, ..., n-1}.
uint64_t colex_rank(std::span<const int32_t> sorted_subset);

// Inverse of colex_rank. Requires rank < C(n, w).
std::vector<int32_t> colex_unrank(int n, int w, uint64_t rank);

// In-place colexicographic successor. The caller must not advance past
// the last subset of {0, ..., n-1}.
void colex_next(std::vector<int32_t>& sorted_subset);

}  // namespace errate
