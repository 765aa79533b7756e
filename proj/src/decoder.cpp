#include "decoder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace errate {

int max_order(int degree) { return std::max(0, degree - 1 - (degree + 1) / 2); }

DecoderConfig make_ga_config(const TannerGraph& g, int max_iterations, bool early_stop) {
  DecoderConfig cfg;
  cfg.algorithm = DecoderConfig::Algorithm::gallager_a;
  cfg.orders.resize(static_cast<size_t>(g.variable_count()));
  for (int v = 0; v < g.variable_count(); ++v) cfg.orders[static_cast<size_t>(v)] = max_order(g.var_degree(v));
  cfg.max_iterations = max_iterations;
  cfg.early_stop = early_stop;
  validate_config(g, cfg);
  return cfg;
}

DecoderConfig make_mb_config(const TannerGraph& g, int order, int max_iterations, bool early_stop) {
  return make_mb_config(g, std::vector<int>(static_cast<size_t>(g.variable_count()), order), max_iterations,
                        early_stop);
}

DecoderConfig make_mb_config(const TannerGraph& g, std::vector<int> orders, int max_iterations, bool early_stop) {
  DecoderConfig cfg;
  cfg.algorithm = DecoderConfig::Algorithm::majority_based;
  cfg.orders = std::move(orders);
  cfg.max_iterations = max_iterations;
  cfg.early_stop = early_stop;
  validate_config(g, cfg);
  return cfg;
}

void validate_config(const TannerGraph& g, const DecoderConfig& cfg) {
  if (cfg.max_iterations < 1) throw std::invalid_argument("decoder: max_iterations must be positive");
  if (cfg.orders.size() != static_cast<size_t>(g.variable_count()))
    throw std::invalid_argument("decoder: orders must have one entry per variable node");
  for (int v = 0; v < g.variable_count(); ++v) {
    int w = cfg.orders[static_cast<size_t>(v)];
    if (w < 0 || w > max_order(g.var_degree(v)))
      throw std::invalid_argument("decoder: order " + std::to_string(w) + " invalid for degree " +
                                  std::to_string(g.var_degree(v)) + " at node " + std::to_string(v));
  }
}

void validate_pattern(const TannerGraph& g, std::span<const int32_t> pattern) {
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] < 0 || pattern[i] >= g.variable_count())
      throw std::invalid_argument("error pattern: position out of range");
    if (i > 0 && pattern[i] <= pattern[i - 1])
      throw std::invalid_argument("error pattern: positions must be strictly increasing");
  }
}

bool check_syndrome(const TannerGraph& g, std::span<const int32_t> errors) {
  std::vector<uint8_t> parity(static_cast<size_t>(g.check_count()), 0);
  for (int32_t v : errors)
    for (int32_t c : g.var_neighbors(v)) parity[static_cast<size_t>(c)] ^= 1;
  return std::none_of(parity.begin(), parity.end(), [](uint8_t p) { return p != 0; });
}

Decoder::Decoder(const TannerGraph& g, DecoderConfig cfg) : graph_(g), cfg_(std::move(cfg)) {
  validate_config(g, cfg_);
  const int n = g.variable_count(), m = g.check_count();
  const size_t edges = static_cast<size_t>(g.edge_count());

  thresholds_.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    thresholds_[static_cast<size_t>(v)] = flip_threshold(g.var_degree(v), cfg_.orders[static_cast<size_t>(v)]);

  var_off_.resize(static_cast<size_t>(n) + 1);
  edge_check_.resize(edges);
  int32_t e = 0;
  for (int v = 0; v < n; ++v) {
    var_off_[static_cast<size_t>(v)] = e;
    for (int32_t c : g.var_neighbors(v)) edge_check_[static_cast<size_t>(e++)] = c;
  }
  var_off_[static_cast<size_t>(n)] = e;

  chk_off_.resize(static_cast<size_t>(m) + 1);
  chk_edge_.resize(edges);
  chk_var_.resize(edges);
  std::vector<int32_t> fill(static_cast<size_t>(m), 0);
  for (int c = 0; c < m; ++c)
    chk_off_[static_cast<size_t>(c) + 1] = chk_off_[static_cast<size_t>(c)] + g.chk_degree(c);
  for (int v = 0; v < n; ++v)
    for (int32_t k = var_off_[static_cast<size_t>(v)]; k < var_off_[static_cast<size_t>(v) + 1]; ++k) {
      int32_t c = edge_check_[static_cast<size_t>(k)];
      int32_t slot = chk_off_[static_cast<size_t>(c)] + fill[static_cast<size_t>(c)]++;
      chk_edge_[static_cast<size_t>(slot)] = k;
      chk_var_[static_cast<size_t>(slot)] = v;
    }

  v2c_.resize(edges);
  c2v_.resize(edges);
  channel_.resize(static_cast<size_t>(n));
  decision_.resize(static_cast<size_t>(n));
}

template <bool Record>
void Decoder::run(std::span<const int32_t> initial, DecodeOutcome& out, DecodeTrace* trace) {
  validate_pattern(graph_, initial);
  const int n = graph_.variable_count(), m = graph_.check_count();

  std::fill(channel_.begin(), channel_.end(), uint8_t{0});
  for (int32_t v : initial) channel_[static_cast<size_t>(v)] = 1;

  out.success = false;
  out.iterations_run = 0;
  out.final_error_weight = static_cast<int>(initial.size());
  if constexpr (Record) {
    trace->initial.assign(initial.begin(), initial.end());
    trace->error_sets.clear();
  }

  // Iteration 0: the decision is the channel word itself.
  if (initial.empty()) {
    out.success = true;
    out.final_error_weight = 0;
    return;
  }
  if (cfg_.early_stop && check_syndrome(graph_, initial)) return;  // settled on a wrong codeword

  for (int v = 0; v < n; ++v) {
    uint8_t m0 = channel_[static_cast<size_t>(v)];
    for (int32_t k = var_off_[static_cast<size_t>(v)]; k < var_off_[static_cast<size_t>(v) + 1]; ++k)
      v2c_[static_cast<size_t>(k)] = m0;
  }

  for (int iter = 1; iter <= cfg_.max_iterations; ++iter) {
    // Check pass: product of extrinsic inputs == total XOR minus own bit.
    for (int c = 0; c < m; ++c) {
      uint8_t total = 0;
      for (int32_t s = chk_off_[static_cast<size_t>(c)]; s < chk_off_[static_cast<size_t>(c) + 1]; ++s)
        total ^= v2c_[static_cast<size_t>(chk_edge_[static_cast<size_t>(s)])];
      for (int32_t s = chk_off_[static_cast<size_t>(c)]; s < chk_off_[static_cast<size_t>(c) + 1]; ++s) {
        int32_t k = chk_edge_[static_cast<size_t>(s)];
        c2v_[static_cast<size_t>(k)] = total ^ v2c_[static_cast<size_t>(k)];
      }
    }

    // Variable pass and hard decision.
    int errors = 0;
    for (int v = 0; v < n; ++v) {
      uint8_t m0 = channel_[static_cast<size_t>(v)];
      int32_t lo = var_off_[static_cast<size_t>(v)], hi = var_off_[static_cast<size_t>(v) + 1];
      int disagree = 0;
      for (int32_t k = lo; k < hi; ++k) disagree += (c2v_[static_cast<size_t>(k)] != m0);
      int t = thresholds_[static_cast<size_t>(v)];
      for (int32_t k = lo; k < hi; ++k) {
        int ex = disagree - (c2v_[static_cast<size_t>(k)] != m0);
        v2c_[static_cast<size_t>(k)] = (ex >= t) ? static_cast<uint8_t>(m0 ^ 1) : m0;
      }
      uint8_t d = (disagree >= t) ? static_cast<uint8_t>(m0 ^ 1) : m0;
      decision_[static_cast<size_t>(v)] = d;
      errors += d;
    }

    out.iterations_run = iter;
    out.final_error_weight = errors;
    if constexpr (Record) {
      ErrorPattern set;
      set.reserve(static_cast<size_t>(errors));
      for (int v = 0; v < n; ++v)
        if (decision_[static_cast<size_t>(v)]) set.push_back(v);
      trace->error_sets.push_back(std::move(set));
    }

    if (errors == 0) {
      out.success = true;
      return;
    }
    if (cfg_.early_stop) {
      // Syndrome of the current decision word.
      bool satisfied = true;
      for (int c = 0; c < m && satisfied; ++c) {
        uint8_t parity = 0;
        for (int32_t s = chk_off_[static_cast<size_t>(c)]; s < chk_off_[static_cast<size_t>(c) + 1]; ++s)
          parity ^= decision_[static_cast<size_t>(chk_var_[static_cast<size_t>(s)])];
        satisfied = (parity == 0);
      }
      if (satisfied) return;  // wrong codeword, the decoder would halt here
    }
  }
}

DecodeTrace Decoder::decode(std::span<const int32_t> initial) {
  DecodeTrace trace;
  DecodeOutcome out;
  run<true>(initial, out, &trace);
  trace.success = out.success;
  trace.iterations_run = out.iterations_run;
  trace.final_error_weight = out.final_error_weight;
  return trace;
}

DecodeOutcome Decoder::decode_outcome(std::span<const int32_t> initial) {
  DecodeOutcome out;
  run<false>(initial, out, nullptr);
  return out;
}

}  // namespace errate
