#include "enumeration.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "combinatorics.hpp"
#include "serialization.hpp"

namespace errate {

namespace {

constexpr uint64_t kSlab = 1 << 20;  // patterns dispatched per parallel round

size_t kind_index(FailureKind k) { return static_cast<size_t>(k); }

struct ChunkOut {
  uint64_t failures = 0;
  std::array<uint64_t, 3> by_class{};
  std::vector<std::pair<uint64_t, ErrorPattern>> failing;
};

// Decodes ranks [begin, end) of the weight-w colex sequence. Failures are
// re-decoded with a full trace so the taxonomy tally stays exact even
// when the stored pattern list is capped.
void scan_chunk(Decoder& dec, int n, int w, uint64_t begin, uint64_t end, uint64_t cap, ChunkOut& out) {
  if (begin >= end) return;
  ErrorPattern pat = colex_unrank(n, w, begin);
  for (uint64_t r = begin; r < end; ++r) {
    DecodeOutcome oc = dec.decode_outcome(pat);
    if (!oc.success) {
      ++out.failures;
      FailureClass fc = classify(dec.decode(pat));
      ++out.by_class[kind_index(fc.kind)];
      if (out.failing.size() < cap) out.failing.emplace_back(r, pat);
    }
    if (r + 1 < end) colex_next(pat);
  }
}

}  // namespace

ErrorPattern pattern_from_rank(int n, int weight, uint64_t rank) { return colex_unrank(n, weight, rank); }

uint64_t rank_of_pattern(std::span<const int32_t> pattern) { return colex_rank(pattern); }

EnumerationResult find_j(const TannerGraph& g, const DecoderConfig& cfg, const EnumerationOptions& opts,
                         const EnumerationCheckpoint* resume) {
  validate_config(g, cfg);
  const int n = g.variable_count();
  if (opts.max_weight < 1 || opts.max_weight > n)
    throw std::invalid_argument("enumeration: max_weight must lie in [1, n]");
  for (int w = 1; w <= opts.max_weight; ++w)
    if (!binomial_fits(n, w))
      throw std::invalid_argument("enumeration: C(n, " + std::to_string(w) + ") exceeds the rank space");
  const int workers = std::max(1, opts.workers);
  const std::string hash = code_hash(g);
  const std::string cfg_json = decoder_config_to_json(cfg).dump();

  int start_weight = 1;
  uint64_t start_rank = 0;
  double elapsed_before = 0.0;
  EnumerationResult result;
  std::vector<std::pair<uint64_t, ErrorPattern>> failing;  // current weight, rank-sorted

  if (resume) {
    if (resume->code_hash != hash) throw std::invalid_argument("enumeration: checkpoint is for a different code");
    if (resume->decoder_json != cfg_json)
      throw std::invalid_argument("enumeration: checkpoint is for a different decoder configuration");
    if (resume->max_weight != opts.max_weight)
      throw std::invalid_argument("enumeration: checkpoint max_weight differs");
    start_weight = resume->weight;
    start_rank = resume->next_rank;
    elapsed_before = resume->elapsed_seconds;
    result.tested_per_weight = resume->tested_per_weight;
    result.failures_by_class = resume->failures_by_class;
    result.failing_patterns_truncated = resume->failing_patterns_truncated;
    failing.reserve(resume->failing_patterns.size());
    for (const auto& p : resume->failing_patterns) failing.emplace_back(colex_rank(p), p);
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return elapsed_before + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  std::vector<Decoder> decoders;
  decoders.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) decoders.emplace_back(g, cfg);

  uint64_t budget_left = opts.pattern_budget;
  uint64_t since_checkpoint = 0;

  auto write_checkpoint = [&](int weight, uint64_t next_rank) {
    if (opts.checkpoint_path.empty()) return;
    EnumerationCheckpoint ck;
    ck.code_hash = hash;
    ck.decoder_json = cfg_json;
    ck.max_weight = opts.max_weight;
    ck.weight = weight;
    ck.next_rank = next_rank;
    ck.tested_per_weight = result.tested_per_weight;
    ck.failures_by_class = result.failures_by_class;
    ck.failing_patterns.reserve(failing.size());
    for (const auto& [r, p] : failing) ck.failing_patterns.push_back(p);
    ck.failing_patterns_truncated = result.failing_patterns_truncated;
    ck.elapsed_seconds = elapsed();
    save_checkpoint_file(opts.checkpoint_path, ck);
    since_checkpoint = 0;
  };

  auto finish = [&](EnumerationResult::Status status, std::optional<int> j) {
    result.status = status;
    result.j_min = j;
    result.e_j_count = 0;
    for (const auto& [kind, count] : result.failures_by_class) result.e_j_count += count;
    result.failing_patterns.reserve(failing.size());
    for (auto& [r, p] : failing) result.failing_patterns.push_back(std::move(p));
    result.wall_seconds = elapsed();
    return result;
  };

  for (int w = start_weight; w <= opts.max_weight; ++w) {
    const uint64_t total = binomial(n, w);
    uint64_t rank = (w == start_weight) ? start_rank : 0;

    while (rank < total) {
      uint64_t slab_end = std::min(total, rank + kSlab);
      if (opts.pattern_budget > 0) {
        if (budget_left == 0) {
          write_checkpoint(w, rank);
          return finish(EnumerationResult::Status::interrupted, std::nullopt);
        }
        slab_end = std::min(slab_end, rank + budget_left);
      }

      const uint64_t span = slab_end - rank;
      const uint64_t chunk = (span + static_cast<uint64_t>(workers) - 1) / static_cast<uint64_t>(workers);
      std::vector<ChunkOut> outs(static_cast<size_t>(workers));
      std::vector<std::thread> threads;
      for (int i = 0; i < workers; ++i) {
        uint64_t begin = rank + chunk * static_cast<uint64_t>(i);
        uint64_t end = std::min(slab_end, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back(scan_chunk, std::ref(decoders[static_cast<size_t>(i)]), n, w, begin, end,
                             opts.store_cap, std::ref(outs[static_cast<size_t>(i)]));
      }
      for (auto& t : threads) t.join();

      for (auto& out : outs) {
        if (out.failures == 0) continue;
        result.failures_by_class[FailureKind::fixed] += out.by_class[0];
        result.failures_by_class[FailureKind::oscillatory] += out.by_class[1];
        result.failures_by_class[FailureKind::random_like] += out.by_class[2];
        for (auto& entry : out.failing) {
          if (failing.size() < opts.store_cap)
            failing.push_back(std::move(entry));
          else
            result.failing_patterns_truncated = true;
        }
        if (out.failures > static_cast<uint64_t>(out.failing.size())) result.failing_patterns_truncated = true;
      }

      rank = slab_end;
      result.tested_per_weight[w] = rank;
      since_checkpoint += span;
      if (budget_left > 0) budget_left -= span;
      if (opts.progress) opts.progress(w, rank, total);
      if (since_checkpoint >= opts.checkpoint_interval) write_checkpoint(w, rank);
    }

    result.tested_per_weight[w] = total;
    uint64_t failures_here = 0;
    for (const auto& [kind, count] : result.failures_by_class) failures_here += count;
    if (failures_here > 0) {
      std::sort(failing.begin(), failing.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      write_checkpoint(w, total);
      return finish(EnumerationResult::Status::found, w);
    }
    if (w < opts.max_weight) write_checkpoint(w + 1, 0);
  }

  return finish(EnumerationResult::Status::no_failure, std::nullopt);
}

}  // namespace errate
