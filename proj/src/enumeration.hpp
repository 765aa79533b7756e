#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decoder.hpp"
#include "failure_analysis.hpp"

namespace errate {

// Resumable scan position: every pattern of lower weights and every
// rank below next_rank at `weight` has been decoded and folded into the
// partial counters.
struct EnumerationCheckpoint {
  std::string code_hash;
  std::string decoder_json;  // serialized config, compared on resume
  int max_weight = 0;
  int weight = 1;
  uint64_t next_rank = 0;
  std::map<int, uint64_t> tested_per_weight;
  std::map<FailureKind, uint64_t> failures_by_class;
  std::vector<ErrorPattern> failing_patterns;
  bool failing_patterns_truncated = false;
  double elapsed_seconds = 0.0;
};

struct EnumerationOptions {
  int max_weight = 4;
  int workers = 1;
  uint64_t store_cap = 1'000'000;  // failing patterns kept, not counted
  std::string checkpoint_path;     // empty disables checkpointing
  uint64_t checkpoint_interval = 10'000'000;
  uint64_t pattern_budget = 0;  // 0 = unlimited; a clean stop otherwise
  std::function<void(int weight, uint64_t done, uint64_t total)> progress;
};

struct EnumerationResult {
  enum class Status { found, no_failure, interrupted };

  Status status = Status::no_failure;
  std::optional<int> j_min;
  uint64_t e_j_count = 0;
  std::map<int, uint64_t> tested_per_weight;
  std::map<FailureKind, uint64_t> failures_by_class;
  std::vector<ErrorPattern> failing_patterns;
  bool failing_patterns_truncated = false;
  double wall_seconds = 0.0;
};

// Convenience aliases for the colex machinery used to chunk the scan.
ErrorPattern pattern_from_rank(int n, int weight, uint64_t rank);
uint64_t rank_of_pattern(std::span<const int32_t> pattern);

// Enumerates error patterns by increasing weight until the first weight
// with failures, finishing that weight completely so |E_J| is exact.
// Results are independent of the worker count; a checkpoint produced by
// any run resumes to identical results.
EnumerationResult find_j(const TannerGraph& g, const DecoderConfig& cfg, const EnumerationOptions& opts,
                         const EnumerationCheckpoint* resume = nullptr);

}  // namespace errate
