#include "random_graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace errate::testing {

namespace {

struct EdgeList {
  // edge i connects var_of[i] -- chk_of[i]
  std::vector<int32_t> var_of, chk_of;

  bool has_edge(int32_t v, int32_t c) const {
    for (size_t i = 0; i < var_of.size(); ++i)
      if (var_of[i] == v && chk_of[i] == c) return true;
    return false;
  }
};

// Count of shared checks between the variables of edges a and b if the
// swap (va-cb, vb-ca) were applied; used to repair without re-checking
// the whole graph.
bool swap_ok(const EdgeList& e, size_t a, size_t b) {
  int32_t va = e.var_of[a], ca = e.chk_of[a];
  int32_t vb = e.var_of[b], cb = e.chk_of[b];
  if (va == vb || ca == cb) return false;
  return !e.has_edge(va, cb) && !e.has_edge(vb, ca);
}

std::vector<std::vector<int32_t>> to_adjacency(const EdgeList& e, int n) {
  std::vector<std::vector<int32_t>> adj(static_cast<size_t>(n));
  for (size_t i = 0; i < e.var_of.size(); ++i)
    adj[static_cast<size_t>(e.var_of[i])].push_back(e.chk_of[i]);
  return adj;
}

// Finds an edge participating in a 4-cycle (two variables sharing two
// checks), or -1. For each unordered check pair seen at a variable,
// remember one incident edge; a second hit is a 4-cycle.
long find_4cycle_edge(const EdgeList& e, int n) {
  std::vector<std::vector<std::pair<int32_t, size_t>>> per_var(static_cast<size_t>(n));
  for (size_t i = 0; i < e.var_of.size(); ++i)
    per_var[static_cast<size_t>(e.var_of[i])].emplace_back(e.chk_of[i], i);
  std::set<int64_t> seen;
  for (int v = 0; v < n; ++v) {
    auto& row = per_var[static_cast<size_t>(v)];
    std::sort(row.begin(), row.end());
    for (size_t a = 0; a < row.size(); ++a)
      for (size_t b = a + 1; b < row.size(); ++b) {
        int64_t key = static_cast<int64_t>(row[a].first) * (1 << 20) + row[b].first;
        if (!seen.insert(key).second) return static_cast<long>(row[a].second);
      }
  }
  return -1;
}

}  // namespace

TannerGraph random_bipartite_graph(const std::vector<int>& var_degrees, const std::vector<int>& chk_degrees,
                                   uint64_t seed, bool remove_4cycles) {
  const int n = static_cast<int>(var_degrees.size());
  const int m = static_cast<int>(chk_degrees.size());
  int64_t ev = std::accumulate(var_degrees.begin(), var_degrees.end(), int64_t{0});
  int64_t ec = std::accumulate(chk_degrees.begin(), chk_degrees.end(), int64_t{0});
  if (ev != ec) throw std::invalid_argument("random graph: degree sums differ");

  Xoshiro256pp rng(seed, 0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    EdgeList e;
    for (int v = 0; v < n; ++v)
      for (int d = 0; d < var_degrees[static_cast<size_t>(v)]; ++d) e.var_of.push_back(v);
    for (int c = 0; c < m; ++c)
      for (int d = 0; d < chk_degrees[static_cast<size_t>(c)]; ++d) e.chk_of.push_back(c);
    // Fisher-Yates on the check stubs pairs them with variable stubs.
    for (size_t i = e.chk_of.size(); i > 1; --i)
      std::swap(e.chk_of[i - 1], e.chk_of[rng.below(i)]);

    // Repair duplicate edges by swapping with random partners.
    bool ok = true;
    for (int round = 0; round < 20000 && ok; ++round) {
      long dup = -1;
      std::set<std::pair<int32_t, int32_t>> seen;
      for (size_t i = 0; i < e.var_of.size(); ++i)
        if (!seen.insert({e.var_of[i], e.chk_of[i]}).second) {
          dup = static_cast<long>(i);
          break;
        }
      if (dup < 0) break;
      bool swapped = false;
      for (int tries = 0; tries < 200; ++tries) {
        size_t other = static_cast<size_t>(rng.below(e.var_of.size()));
        if (other == static_cast<size_t>(dup)) continue;
        if (swap_ok(e, static_cast<size_t>(dup), other)) {
          std::swap(e.chk_of[static_cast<size_t>(dup)], e.chk_of[other]);
          swapped = true;
          break;
        }
      }
      if (!swapped) ok = false;
      if (round == 19999) ok = false;
    }
    if (!ok) continue;

    if (remove_4cycles) {
      bool clean = false;
      for (int round = 0; round < 20000; ++round) {
        long a = find_4cycle_edge(e, n);
        if (a < 0) {
          clean = true;
          break;
        }
        bool swapped = false;
        for (int tries = 0; tries < 200; ++tries) {
          size_t other = static_cast<size_t>(rng.below(e.var_of.size()));
          if (other == static_cast<size_t>(a)) continue;
          if (swap_ok(e, static_cast<size_t>(a), other)) {
            std::swap(e.chk_of[static_cast<size_t>(a)], e.chk_of[other]);
            swapped = true;
            break;
          }
        }
        if (!swapped) break;
      }
      if (!clean) continue;
    }

    TannerGraph g(n, m, to_adjacency(e, n));
    if (remove_4cycles && g.has_4cycles()) continue;
    return g;
  }
  throw std::runtime_error("random graph: could not build a simple graph for this degree profile");
}

TannerGraph random_regular_graph(int n, int dv, int dc, uint64_t seed, bool remove_4cycles) {
  if ((static_cast<int64_t>(n) * dv) % dc != 0)
    throw std::invalid_argument("random graph: n*dv must be divisible by dc");
  const int m = static_cast<int>(static_cast<int64_t>(n) * dv / dc);
  return random_bipartite_graph(std::vector<int>(static_cast<size_t>(n), dv),
                                std::vector<int>(static_cast<size_t>(m), dc), seed, remove_4cycles);
}

namespace {

TannerGraph random_profile_graph(int n, uint64_t seed, bool remove_4cycles, int min_var_degree,
                                 int var_degree_span, int min_chk_degree, int chk_degree_span) {
  Xoshiro256pp rng(seed, 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<int> var_deg(static_cast<size_t>(n));
    int64_t total = 0;
    for (auto& d : var_deg) {
      d = min_var_degree + static_cast<int>(rng.below(static_cast<uint64_t>(var_degree_span)));
      total += d;
    }
    std::vector<int> chk_deg;
    int64_t left = total;
    while (left > 0) {
      int d = std::min<int64_t>(
          left, min_chk_degree + static_cast<int>(rng.below(static_cast<uint64_t>(chk_degree_span))));
      chk_deg.push_back(d);
      left -= d;
    }
    if (chk_deg.size() < 2 || chk_deg.back() < 1) continue;
    try {
      return random_bipartite_graph(var_deg, chk_deg, seed + static_cast<uint64_t>(attempt) * 1000003ULL,
                                    remove_4cycles);
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  throw std::runtime_error("random graph: profile failed");
}

}  // namespace

TannerGraph random_irregular_graph(int n, uint64_t seed, bool remove_4cycles) {
  return random_profile_graph(n, seed, remove_4cycles, 2, 3, 4, 3);
}

TannerGraph random_graph_min_degree3(int n, uint64_t seed, bool remove_4cycles) {
  return random_profile_graph(n, seed, remove_4cycles, 3, 3, 5, 3);
}

}  // namespace errate::testing
