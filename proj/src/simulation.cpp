#include "simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "estimation.hpp"
#include "rng.hpp"

namespace errate {

namespace {

constexpr uint64_t kFrameBlock = 1024;  // stop condition checked at block edges

struct BlockTally {
  uint64_t frames = 0;
  uint64_t frame_errors = 0;
  uint64_t bit_errors = 0;
  std::vector<uint64_t> weight_frames;
  std::vector<uint64_t> weight_failures;
};

void run_frames(const TannerGraph& g, Decoder& dec, double eps, uint64_t seed, uint64_t begin, uint64_t end,
                BlockTally& out) {
  const int n = g.variable_count();
  out.weight_frames.assign(static_cast<size_t>(n) + 1, 0);
  out.weight_failures.assign(static_cast<size_t>(n) + 1, 0);
  ErrorPattern pattern;
  pattern.reserve(static_cast<size_t>(n));
  for (uint64_t f = begin; f < end; ++f) {
    Xoshiro256pp rng(seed, f);
    pattern.clear();
    for (int v = 0; v < n; ++v)
      if (rng.uniform() < eps) pattern.push_back(v);
    DecodeOutcome oc = dec.decode_outcome(pattern);
    ++out.frames;
    ++out.weight_frames[pattern.size()];
    if (!oc.success) {
      ++out.frame_errors;
      ++out.weight_failures[pattern.size()];
      out.bit_errors += static_cast<uint64_t>(oc.final_error_weight);
    }
  }
}

}  // namespace

std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double kn = static_cast<double>(n);
  const double p = static_cast<double>(k) / kn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / kn;
  const double center = p + z2 / (2.0 * kn);
  const double half = z * std::sqrt(p * (1.0 - p) / kn + z2 / (4.0 * kn * kn));
  double lo = (center - half) / denom;
  double hi = (center + half) / denom;
  if (k == 0) lo = 0.0;  // avoid rounding residue at the boundary
  if (k == n) hi = 1.0;
  return {std::max(0.0, lo), std::min(1.0, hi)};
}

SimResult simulate(const TannerGraph& g, const DecoderConfig& cfg, const SimConfig& sim) {
  validate_config(g, cfg);
  if (!(sim.epsilon > 0.0) || sim.epsilon >= 1.0)
    throw std::invalid_argument("simulate: epsilon must lie in (0, 1)");
  if (sim.min_frame_errors < 1) throw std::invalid_argument("simulate: min_frame_errors must be at least 1");
  const int workers = std::max(1, sim.workers);

  std::vector<Decoder> decoders;
  decoders.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) decoders.emplace_back(g, cfg);

  SimResult res;
  res.epsilon = sim.epsilon;
  std::vector<uint64_t> weight_frames(static_cast<size_t>(g.variable_count()) + 1, 0);
  std::vector<uint64_t> weight_failures(static_cast<size_t>(g.variable_count()) + 1, 0);

  uint64_t next_frame = 0;
  while (res.frame_errors < sim.min_frame_errors && next_frame < sim.max_frames) {
    const uint64_t block_end = std::min(sim.max_frames, next_frame + kFrameBlock);
    const uint64_t span = block_end - next_frame;
    const uint64_t chunk = (span + static_cast<uint64_t>(workers) - 1) / static_cast<uint64_t>(workers);
    std::vector<BlockTally> tallies(static_cast<size_t>(workers));
    std::vector<std::thread> threads;
    for (int i = 0; i < workers; ++i) {
      uint64_t b = next_frame + chunk * static_cast<uint64_t>(i);
      uint64_t e = std::min(block_end, b + chunk);
      if (b >= e) break;
      threads.emplace_back(run_frames, std::cref(g), std::ref(decoders[static_cast<size_t>(i)]), sim.epsilon,
                           sim.seed, b, e, std::ref(tallies[static_cast<size_t>(i)]));
    }
    for (auto& t : threads) t.join();
    for (const auto& tally : tallies) {
      res.frames += tally.frames;
      res.frame_errors += tally.frame_errors;
      res.bit_errors += tally.bit_errors;
      for (size_t w = 0; w < tally.weight_frames.size(); ++w) {
        weight_frames[w] += tally.weight_frames[w];
        weight_failures[w] += tally.weight_failures[w];
      }
    }
    next_frame = block_end;
  }

  res.fer = res.frames ? static_cast<double>(res.frame_errors) / static_cast<double>(res.frames) : 0.0;
  res.ber = res.frames ? static_cast<double>(res.bit_errors) /
                             (static_cast<double>(res.frames) * static_cast<double>(g.variable_count()))
                       : 0.0;
  std::tie(res.fer_ci_low, res.fer_ci_high) = wilson_interval(res.frame_errors, res.frames);
  for (size_t w = 0; w < weight_frames.size(); ++w)
    if (weight_frames[w] > 0)
      res.weight_histogram[static_cast<int>(w)] = WeightBin{weight_frames[w], weight_failures[w]};
  return res;
}

namespace {

struct MTally {
  uint64_t failures = 0;
  uint64_t residual_bits = 0;
};

void run_m_trials(const TannerGraph& g, Decoder& dec, int n0, uint64_t seed, uint64_t begin, uint64_t end,
                  MTally& out) {
  std::vector<int32_t> scratch;
  for (uint64_t t = begin; t < end; ++t) {
    Xoshiro256pp rng(seed, t);
    ErrorPattern pattern = uniform_weight_pattern(g.variable_count(), n0, rng, scratch);
    DecodeOutcome oc = dec.decode_outcome(pattern);
    if (!oc.success) {
      ++out.failures;
      out.residual_bits += static_cast<uint64_t>(oc.final_error_weight);
    }
  }
}

}  // namespace

MEstimate estimate_m(const TannerGraph& g, const DecoderConfig& cfg, int n0, uint64_t trials, uint64_t seed,
                     int workers) {
  validate_config(g, cfg);
  if (n0 < 0 || n0 > g.variable_count()) throw std::invalid_argument("estimate_m: n0 must lie in [0, n]");
  if (trials < 1) throw std::invalid_argument("estimate_m: trials must be at least 1");
  workers = std::max(1, workers);

  std::vector<Decoder> decoders;
  decoders.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) decoders.emplace_back(g, cfg);

  std::vector<MTally> tallies(static_cast<size_t>(workers));
  const uint64_t chunk = (trials + static_cast<uint64_t>(workers) - 1) / static_cast<uint64_t>(workers);
  std::vector<std::thread> threads;
  for (int i = 0; i < workers; ++i) {
    uint64_t b = chunk * static_cast<uint64_t>(i);
    uint64_t e = std::min(trials, b + chunk);
    if (b >= e) break;
    threads.emplace_back(run_m_trials, std::cref(g), std::ref(decoders[static_cast<size_t>(i)]), n0, seed, b, e,
                         std::ref(tallies[static_cast<size_t>(i)]));
  }
  for (auto& t : threads) t.join();

  MEstimate m;
  m.n0 = n0;
  m.trials = trials;
  uint64_t failures = 0, bits = 0;
  for (const auto& tally : tallies) {
    failures += tally.failures;
    bits += tally.residual_bits;
  }
  m.mean_all_trials = static_cast<double>(bits) / static_cast<double>(trials);
  m.mean_failures_only = failures ? static_cast<double>(bits) / static_cast<double>(failures) : 0.0;
  m.failure_fraction = static_cast<double>(failures) / static_cast<double>(trials);
  return m;
}

CalibrationOutcome select_n0(int n, int j, uint64_t e_j_count, const std::vector<CalibrationPoint>& points) {
  CalibrationOutcome out;
  out.points = points;
  std::vector<CalibrationPoint*> used;
  for (auto& p : out.points) {
    p.used = (p.fer >= 0.005 && p.fer <= 0.2);
    if (p.used) used.push_back(&p);
  }
  if (used.empty())
    throw std::runtime_error(
        "calibrate_n0: no point has simulated FER in [0.005, 0.2]; adjust the epsilon list toward the "
        "0.01-0.1 FER region");

  EstimatorInput inp{n, j, e_j_count, n, 0.0};  // n0/m unused by fer_upper
  int best_n = 0;
  double best = INFINITY;
  out.objective.reserve(static_cast<size_t>(n - j));
  for (int cap = j + 1; cap <= n; ++cap) {
    double obj = 0.0;
    for (const auto* p : used) {
      double est = fer_upper(inp, cap, p->epsilon);
      obj += std::fabs(std::log10(est) - std::log10(p->fer));
    }
    out.objective.emplace_back(cap, obj);
    if (obj < best) {  // strict: ties keep the smaller N
      best = obj;
      best_n = cap;
    }
  }
  out.n0 = best_n;
  return out;
}

CalibrationOutcome calibrate_n0(const TannerGraph& g, const DecoderConfig& cfg, int j, uint64_t e_j_count,
                                const std::vector<double>& eps_points, uint64_t min_frame_errors,
                                uint64_t per_point_max_frames, uint64_t seed, int workers) {
  if (eps_points.empty()) throw std::invalid_argument("calibrate_n0: need at least one epsilon point");
  std::vector<CalibrationPoint> points;
  points.reserve(eps_points.size());
  for (size_t i = 0; i < eps_points.size(); ++i) {
    SimConfig sim;
    sim.epsilon = eps_points[i];
    sim.min_frame_errors = min_frame_errors;
    sim.max_frames = per_point_max_frames;
    sim.seed = seed + i;  // independent streams per point
    sim.workers = workers;
    SimResult r = simulate(g, cfg, sim);
    points.push_back(CalibrationPoint{r.epsilon, r.frames, r.frame_errors, r.fer, false});
  }
  return select_n0(g.variable_count(), j, e_j_count, points);
}

}  // namespace errate
