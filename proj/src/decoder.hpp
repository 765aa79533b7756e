#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tanner_graph.hpp"

namespace errate {

// Largest admissible order for a variable node of the given degree,
// d - 1 - ceil(d/2). Degrees 1 and 2 leave no slack; order 0 is used.
int max_order(int degree);

// Flip threshold: a node flips when at least ceil(d/2) + omega of the
// relevant incoming messages disagree with its channel value.
inline int flip_threshold(int degree, int order) { return (degree + 1) / 2 + order; }

struct DecoderConfig {
  enum class Algorithm { gallager_a, majority_based };

  Algorithm algorithm = Algorithm::gallager_a;
  std::vector<int> orders;  // omega_j per variable node
  int max_iterations = 100;
  bool early_stop = true;  // stop once every check is satisfied
};

// GA runs every node at its maximum admissible order.
DecoderConfig make_ga_config(const TannerGraph& g, int max_iterations = 100, bool early_stop = true);
DecoderConfig make_mb_config(const TannerGraph& g, int order, int max_iterations = 100, bool early_stop = true);
DecoderConfig make_mb_config(const TannerGraph& g, std::vector<int> orders, int max_iterations = 100,
                             bool early_stop = true);

// Throws std::invalid_argument if orders are out of range or sized wrong.
void validate_config(const TannerGraph& g, const DecoderConfig& cfg);

// Error positions relative to the transmitted codeword, sorted ascending.
using ErrorPattern = std::vector<int32_t>;

// Throws if positions are out of [0, n), unsorted, or duplicated.
void validate_pattern(const TannerGraph& g, std::span<const int32_t> pattern);

// True iff every check node has an even number of neighbors in `errors`.
bool check_syndrome(const TannerGraph& g, std::span<const int32_t> errors);

struct DecodeOutcome {
  bool success = false;
  int iterations_run = 0;
  int final_error_weight = 0;
};

struct DecodeTrace {
  bool success = false;
  int iterations_run = 0;
  std::vector<ErrorPattern> error_sets;  // one per executed iteration
  int final_error_weight = 0;
  ErrorPattern initial;
};

// Hard-decision iterative decoder over the +-1 message alphabet with a
// flooding schedule. All-one transmission is assumed, so the channel
// value of node j is -1 exactly when j is in the initial pattern.
//
// Iteration 0 passes channel values with checks inactive. In iteration
// l >= 1 a check sends the product of its extrinsic inputs from l-1, and
// variable j sends -m0 when at least ceil(d_j/2) + omega_j extrinsic
// inputs equal -m0. The per-iteration decision applies the same
// threshold over all d_j incoming messages.
//
// Holds per-run scratch; one instance per worker thread.
class Decoder {
 public:
  Decoder(const TannerGraph& g, DecoderConfig cfg);

  const DecoderConfig& config() const { return cfg_; }

  // Full trajectory of output error sets, for failure analysis.
  DecodeTrace decode(std::span<const int32_t> initial);

  // Counts only; used on enumeration and simulation hot paths.
  DecodeOutcome decode_outcome(std::span<const int32_t> initial);

 private:
  template <bool Record>
  void run(std::span<const int32_t> initial, DecodeOutcome& out, DecodeTrace* trace);

  const TannerGraph& graph_;
  DecoderConfig cfg_;
  std::vector<int> thresholds_;

  // Flat adjacency. Edges are numbered variable-major; the check side
  // stores edge ids plus the owning variable of each edge.
  std::vector<int32_t> var_off_;     // var -> [off, off+deg) edge ids
  std::vector<int32_t> edge_check_;  // edge -> check
  std::vector<int32_t> chk_off_, chk_edge_, chk_var_;

  // Scratch (value bit per directed edge; bit 1 encodes the value -1).
  std::vector<uint8_t> v2c_, c2v_, channel_, decision_;
};

}  // namespace errate
