#pragma once

#include <cstdint>
#include <vector>

#include "tanner_graph.hpp"

namespace errate::testing {

// Configuration-model bipartite graph on the given degree sequences
// (sums must match). Duplicate edges are repaired by edge swaps; with
// remove_4cycles, pairs of checks sharing two variables are broken up
// the same way. Deterministic in the seed. Throws std::runtime_error if
// the repair loop cannot reach a simple (or 4-cycle-free) graph.
TannerGraph random_bipartite_graph(const std::vector<int>& var_degrees, const std::vector<int>& chk_degrees,
                                   uint64_t seed, bool remove_4cycles);

// (dv, dc)-regular graph with n variables and n*dv/dc checks.
TannerGraph random_regular_graph(int n, int dv, int dc, uint64_t seed, bool remove_4cycles);

// Small irregular graph with degrees drawn from {2, 3, 4}; handy for
// randomized property tests.
TannerGraph random_irregular_graph(int n, uint64_t seed, bool remove_4cycles = false);

// Irregular graph with variable degrees in {3, 4, 5}. Minimum degree 3
// keeps the trapping-set bound ceil(d/2)+omega-1 at 1 or more, so random
// small sets satisfy the structural condition often enough for
// randomized certification sweeps.
TannerGraph random_graph_min_degree3(int n, uint64_t seed, bool remove_4cycles = false);

}  // namespace errate::testing
