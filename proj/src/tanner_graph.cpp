#include "tanner_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace errate {

TannerGraph::TannerGraph(int n, int m, std::vector<std::vector<int32_t>> var_adj)
    : n_(n), m_(m), var_adj_(std::move(var_adj)) {
  if (n_ <= 0 || m_ <= 0) throw std::invalid_argument("graph: n and m must be positive");
  if (var_adj_.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("graph: adjacency size mismatch");

  chk_adj_.assign(static_cast<size_t>(m_), {});
  for (int v = 0; v < n_; ++v) {
    auto& row = var_adj_[static_cast<size_t>(v)];
    std::sort(row.begin(), row.end());
    if (row.empty()) throw std::invalid_argument("graph: variable node " + std::to_string(v) + " has degree 0");
    for (size_t i = 0; i < row.size(); ++i) {
      int32_t c = row[i];
      if (c < 0 || c >= m_)
        throw std::invalid_argument("graph: check index out of range at variable " + std::to_string(v));
      if (i > 0 && row[i - 1] == c)
        throw std::invalid_argument("graph: duplicate edge at variable " + std::to_string(v));
      chk_adj_[static_cast<size_t>(c)].push_back(static_cast<int32_t>(v));
    }
    edges_ += static_cast<int64_t>(row.size());
    max_var_degree_ = std::max(max_var_degree_, static_cast<int>(row.size()));
  }
  for (int c = 0; c < m_; ++c) {
    if (chk_adj_[static_cast<size_t>(c)].empty())
      throw std::invalid_argument("graph: check node " + std::to_string(c) + " has degree 0");
    max_chk_degree_ = std::max(max_chk_degree_, static_cast<int>(chk_adj_[static_cast<size_t>(c)].size()));
  }

  // 4-cycle scan: a repeated (check, check) pair across the variable side
  // means two variables share two checks.
  std::unordered_set<uint64_t> seen;
  for (int v = 0; v < n_ && !has_4cycles_; ++v) {
    const auto& row = var_adj_[static_cast<size_t>(v)];
    for (size_t a = 0; a < row.size() && !has_4cycles_; ++a)
      for (size_t b = a + 1; b < row.size(); ++b) {
        uint64_t key = static_cast<uint64_t>(row[a]) * static_cast<uint64_t>(m_) +
                       static_cast<uint64_t>(row[b]);
        if (!seen.insert(key).second) {
          has_4cycles_ = true;
          break;
        }
      }
  }
}

DegreeDistribution degree_distributions(const TannerGraph& g) {
  DegreeDistribution d;
  const double edges = static_cast<double>(g.edge_count());
  std::map<int, int64_t> var_edges, chk_edges;
  for (int v = 0; v < g.variable_count(); ++v) var_edges[g.var_degree(v)] += g.var_degree(v);
  for (int c = 0; c < g.check_count(); ++c) chk_edges[g.chk_degree(c)] += g.chk_degree(c);
  for (auto [deg, e] : var_edges) d.lambda_coeffs[deg] = static_cast<double>(e) / edges;
  for (auto [deg, e] : chk_edges) d.rho_coeffs[deg] = static_cast<double>(e) / edges;
  return d;
}

namespace {

struct TokenReader {
  std::string_view text;
  size_t pos = 0;
  int line = 1;

  // Returns false at end of input. Tracks line numbers across CRLF/LF.
  bool next(int64_t& out, int& out_line) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' || text[pos] == '\n')) {
      if (text[pos] == '\n') ++line;
      ++pos;
    }
    if (pos >= text.size()) return false;
    out_line = line;
    size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r' && text[pos] != '\n') ++pos;
    auto tok = text.substr(start, pos - start);
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw AlistError(out_line, "expected an integer, got '" + std::string(tok) + "'");
    return true;
  }

  int64_t require(const char* what) {
    int64_t v;
    int l;
    if (!next(v, l)) throw AlistError(line, std::string("unexpected end of input, expected ") + what);
    return v;
  }

  // Reads one adjacency row: `degree` 1-based indices in [1, limit],
  // then optional zero padding up to max_degree entries total.
  std::vector<int32_t> adjacency_row(int degree, int max_degree, int64_t limit, const char* side,
                                     int* first_line = nullptr) {
    std::vector<int32_t> row;
    row.reserve(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) {
      int64_t v;
      int l;
      if (!next(v, l)) throw AlistError(line, std::string("truncated ") + side + " adjacency row");
      if (i == 0 && first_line) *first_line = l;
      if (v == 0) throw AlistError(l, std::string(side) + " row lists fewer entries than its declared degree");
      if (v < 1 || v > limit) throw AlistError(l, std::string(side) + " index " + std::to_string(v) + " out of range");
      row.push_back(static_cast<int32_t>(v - 1));
    }
    // Padding zeros are accepted and ignored beyond the declared degree.
    for (int i = degree; i < max_degree; ++i) {
      size_t save_pos = pos;
      int save_line = line;
      int64_t v;
      int l;
      if (!next(v, l)) break;
      if (v != 0) {
        // Not padding: give it back, it belongs to the next row.
        pos = save_pos;
        line = save_line;
        break;
      }
    }
    return row;
  }
};

}  // namespace

TannerGraph load_alist(std::string_view text) {
  TokenReader r{text};
  int64_t n = r.require("n"), m = r.require("m");
  if (n <= 0 || m <= 0) throw AlistError(1, "n and m must be positive");
  int64_t max_dv = r.require("max variable degree"), max_dc = r.require("max check degree");
  if (max_dv <= 0 || max_dc <= 0) throw AlistError(r.line, "maximum degrees must be positive");

  std::vector<int> var_deg(static_cast<size_t>(n)), chk_deg(static_cast<size_t>(m));
  for (int64_t v = 0; v < n; ++v) {
    int64_t d = r.require("variable degree");
    if (d < 1 || d > max_dv) throw AlistError(r.line, "variable degree " + std::to_string(d) + " outside [1, max]");
    var_deg[static_cast<size_t>(v)] = static_cast<int>(d);
  }
  for (int64_t c = 0; c < m; ++c) {
    int64_t d = r.require("check degree");
    if (d < 1 || d > max_dc) throw AlistError(r.line, "check degree " + std::to_string(d) + " outside [1, max]");
    chk_deg[static_cast<size_t>(c)] = static_cast<int>(d);
  }

  std::vector<std::vector<int32_t>> var_adj(static_cast<size_t>(n));
  for (int64_t v = 0; v < n; ++v) {
    int at_line = r.line;
    auto row = r.adjacency_row(var_deg[static_cast<size_t>(v)], static_cast<int>(max_dv), m, "variable", &at_line);
    std::sort(row.begin(), row.end());
    for (size_t i = 1; i < row.size(); ++i)
      if (row[i] == row[i - 1]) throw AlistError(at_line, "duplicate edge in variable row " + std::to_string(v + 1));
    var_adj[static_cast<size_t>(v)] = std::move(row);
  }

  // Check-side rows: parsed and verified against the variable-side lists.
  std::vector<std::vector<int32_t>> chk_adj(static_cast<size_t>(m));
  std::vector<int> chk_row_line(static_cast<size_t>(m));
  for (int64_t c = 0; c < m; ++c) {
    int at_line = r.line;
    auto row = r.adjacency_row(chk_deg[static_cast<size_t>(c)], static_cast<int>(max_dc), n, "check", &at_line);
    chk_row_line[static_cast<size_t>(c)] = at_line;
    std::sort(row.begin(), row.end());
    for (size_t i = 1; i < row.size(); ++i)
      if (row[i] == row[i - 1]) throw AlistError(at_line, "duplicate edge in check row " + std::to_string(c + 1));
    chk_adj[static_cast<size_t>(c)] = std::move(row);
  }

  TannerGraph g(static_cast<int>(n), static_cast<int>(m), std::move(var_adj));
  for (int64_t c = 0; c < m; ++c) {
    if (g.chk_neighbors(static_cast<int>(c)) != chk_adj[static_cast<size_t>(c)])
      throw AlistError(chk_row_line[static_cast<size_t>(c)],
                       "check row " + std::to_string(c + 1) + " disagrees with the variable-side adjacency");
  }

  int64_t trailing;
  int l;
  if (r.next(trailing, l)) {
    if (trailing != 0) throw AlistError(l, "unexpected trailing token");
    // Allow trailing padding zeros only.
    while (r.next(trailing, l))
      if (trailing != 0) throw AlistError(l, "unexpected trailing token");
  }
  return g;
}

TannerGraph load_alist_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open alist file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_alist(ss.str());
}

std::string emit_alist(const TannerGraph& g) {
  std::ostringstream out;
  out << g.variable_count() << ' ' << g.check_count() << '\n';
  out << g.max_var_degree() << ' ' << g.max_chk_degree() << '\n';
  for (int v = 0; v < g.variable_count(); ++v) out << g.var_degree(v) << (v + 1 < g.variable_count() ? ' ' : '\n');
  for (int c = 0; c < g.check_count(); ++c) out << g.chk_degree(c) << (c + 1 < g.check_count() ? ' ' : '\n');
  for (int v = 0; v < g.variable_count(); ++v) {
    const auto& row = g.var_neighbors(v);
    for (size_t i = 0; i < row.size(); ++i) out << row[i] + 1 << (i + 1 < row.size() ? ' ' : '\n');
  }
  for (int c = 0; c < g.check_count(); ++c) {
    const auto& row = g.chk_neighbors(c);
    for (size_t i = 0; i < row.size(); ++i) out << row[i] + 1 << (i + 1 < row.size() ? ' ' : '\n');
  }
  return out.str();
}

std::string code_hash(const TannerGraph& g) {
  const std::string text = emit_alist(g);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace errate
