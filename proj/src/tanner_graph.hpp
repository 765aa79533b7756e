#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace errate {

// Parse/validation failure with the 1-based line of the offending input.
class AlistError : public std::runtime_error {
 public:
  AlistError(int line, const std::string& what)
      : std::runtime_error("alist line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Bipartite variable/check adjacency of an LDPC code. Immutable once
// built; safe to share across threads.
class TannerGraph {
 public:
  // Takes per-variable check lists; the check-side adjacency is derived.
  // Throws std::invalid_argument on duplicate edges, out-of-range
  // indices, or isolated nodes.
  TannerGraph(int n, int m, std::vector<std::vector<int32_t>> var_adj);

  int variable_count() const { return n_; }
  int check_count() const { return m_; }
  int64_t edge_count() const { return edges_; }

  const std::vector<int32_t>& var_neighbors(int v) const { return var_adj_[static_cast<size_t>(v)]; }
  const std::vector<int32_t>& chk_neighbors(int c) const { return chk_adj_[static_cast<size_t>(c)]; }
  int var_degree(int v) const { return static_cast<int>(var_adj_[static_cast<size_t>(v)].size()); }
  int chk_degree(int c) const { return static_cast<int>(chk_adj_[static_cast<size_t>(c)].size()); }
  int max_var_degree() const { return max_var_degree_; }
  int max_chk_degree() const { return max_chk_degree_; }

  // True iff two distinct variable nodes share two or more checks.
  bool has_4cycles() const { return has_4cycles_; }

 private:
  int n_;
  int m_;
  int64_t edges_ = 0;
  int max_var_degree_ = 0;
  int max_chk_degree_ = 0;
  bool has_4cycles_ = false;
  std::vector<std::vector<int32_t>> var_adj_;
  std::vector<std::vector<int32_t>> chk_adj_;
};

// Edge-perspective degree distributions: lambda_coeffs[d] is the fraction
// of edges incident to degree-d variable nodes, rho_coeffs[d] the same on
// the check side. Each side sums to 1.
struct DegreeDistribution {
  std::map<int, double> lambda_coeffs;
  std::map<int, double> rho_coeffs;
};

DegreeDistribution degree_distributions(const TannerGraph& g);

// Alist layout: "n m", "max_dv max_dc", n variable degrees, m check
// degrees, n rows of 1-based check indices, m rows of 1-based variable
// indices. Zero padding after the declared degree is accepted.
TannerGraph load_alist(std::string_view text);
TannerGraph load_alist_file(const std::string& path);

// Emits without padding; load_alist(emit_alist(g)) reproduces g.
std::string emit_alist(const TannerGraph& g);

// FNV-1a digest of the canonical alist emission, as 16 hex characters.
// Used to bind derived artifacts to the code they came from.
std::string code_hash(const TannerGraph& g);

}  // namespace errate
