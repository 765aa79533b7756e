#include "failure_analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace errate {

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::fixed: return "fixed";
    case FailureKind::oscillatory: return "oscillatory";
    case FailureKind::random_like: return "random_like";
  }
  return "?";
}

FailureClass classify(const DecodeTrace& trace) {
  if (trace.success) throw std::invalid_argument("classify: trace did not fail");

  const auto& e = trace.error_sets;
  const int h = static_cast<int>(e.size());

  FailureClass out;
  out.initial_error_weight = static_cast<int>(trace.initial.size());
  out.final_error_weight = trace.final_error_weight;

  for (int p = 1; p < h; ++p) {
    int t = 0;
    for (int l = 0; l + p < h; ++l)
      if (e[static_cast<size_t>(l)] != e[static_cast<size_t>(l + p)]) t = l + 1;
    if (t + 2 * p > h) continue;  // tail too short to witness the period twice
    out.kind = (p == 1) ? FailureKind::fixed : FailureKind::oscillatory;
    out.period = p;
    out.transition_length = t;
    std::set<int32_t> support;
    for (int l = t; l < t + p; ++l)
      support.insert(e[static_cast<size_t>(l)].begin(), e[static_cast<size_t>(l)].end());
    out.steady_state_support.assign(support.begin(), support.end());
    return out;
  }

  out.kind = FailureKind::random_like;
  out.period = 0;
  out.transition_length = h;
  return out;
}

TrappingSetReport check_trapping_condition(const TannerGraph& g, const DecoderConfig& cfg, std::span<const int32_t> s) {
  validate_config(g, cfg);
  validate_pattern(g, s);

  TrappingSetReport report;
  report.set.assign(s.begin(), s.end());

  // C_o(S): checks with an odd number of neighbors inside S.
  std::vector<int32_t> induced(static_cast<size_t>(g.check_count()), 0);
  for (int32_t v : s)
    for (int32_t c : g.var_neighbors(v)) ++induced[static_cast<size_t>(c)];
  std::vector<uint8_t> odd(static_cast<size_t>(g.check_count()), 0);
  for (int c = 0; c < g.check_count(); ++c)
    if (induced[static_cast<size_t>(c)] % 2 == 1) {
      odd[static_cast<size_t>(c)] = 1;
      report.odd_checks.push_back(c);
    }

  // Every variable node, inside or outside S, is held to its bound.
  report.condition_holds = true;
  int worst_excess = 0;
  for (int v = 0; v < g.variable_count(); ++v) {
    int count = 0;
    for (int32_t c : g.var_neighbors(v)) count += odd[static_cast<size_t>(c)];
    int bound = flip_threshold(g.var_degree(v), cfg.orders[static_cast<size_t>(v)]) - 1;
    if (count > bound) {
      report.condition_holds = false;
      if (count - bound > worst_excess) {
        worst_excess = count - bound;
        report.max_violating_node = v;
      }
    }
  }
  return report;
}

bool certify_trapping_set(const TannerGraph& g, const DecoderConfig& cfg, std::span<const int32_t> s) {
  auto report = check_trapping_condition(g, cfg, s);
  if (!report.condition_holds)
    throw std::invalid_argument("certify_trapping_set: structural condition does not hold");

  Decoder decoder(g, cfg);
  DecodeTrace trace = decoder.decode(s);
  if (s.empty()) return trace.success;  // vacuous: nothing to trap
  return std::all_of(trace.error_sets.begin(), trace.error_sets.end(),
                     [&](const ErrorPattern& e) { return std::equal(e.begin(), e.end(), s.begin(), s.end()); });
}

}  // namespace errate
