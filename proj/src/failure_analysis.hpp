#pragma once

#include <optional>
#include <string>

#include "decoder.hpp"

namespace errate {

enum class FailureKind { fixed, oscillatory, random_like };

std::string to_string(FailureKind k);

struct FailureClass {
  FailureKind kind = FailureKind::random_like;
  int period = 0;             // 1 for fixed, >= 2 for oscillatory, 0 otherwise
  int transition_length = 0;  // iterations before the steady state
  ErrorPattern steady_state_support;
  int initial_error_weight = 0;
  int final_error_weight = 0;
};

// Classifies a failed trace by locating the smallest period p >= 1 and
// smallest onset t with error_sets[l] == error_sets[l+p] for all l >= t;
// the horizon must show at least two full periods (t + 2p <= length) so
// a truncated tail is never mistaken for a steady state. Throws
// std::invalid_argument on a successful trace.
FailureClass classify(const DecodeTrace& trace);

struct TrappingSetReport {
  ErrorPattern set;
  std::vector<int32_t> odd_checks;  // C_o(S): odd degree in the induced subgraph
  bool condition_holds = false;
  std::optional<int32_t> max_violating_node;
};

// Structural trapping-set condition: S traps the decoder when every
// variable node of the graph has at most ceil(d_j/2) + omega_j - 1
// neighbors in C_o(S).
TrappingSetReport check_trapping_condition(const TannerGraph& g, const DecoderConfig& cfg, std::span<const int32_t> s);

// Decodes with initial = s and reports whether the error set stays
// exactly s at every iteration. Requires check_trapping_condition to hold;
// a false return indicates a decoder bug.
bool certify_trapping_set(const TannerGraph& g, const DecoderConfig& cfg, std::span<const int32_t> s);

}  // namespace errate
