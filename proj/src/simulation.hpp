#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "decoder.hpp"

namespace errate {

struct SimConfig {
  double epsilon = 0.0;
  uint64_t min_frame_errors = 100;
  uint64_t max_frames = 100'000'000;
  uint64_t seed = 1;
  int workers = 1;
};

struct WeightBin {
  uint64_t frames = 0;
  uint64_t failures = 0;
};

struct SimResult {
  double epsilon = 0.0;
  uint64_t frames = 0;
  uint64_t frame_errors = 0;
  uint64_t bit_errors = 0;  // residual errors at the decoder output
  double fer = 0.0;
  double ber = 0.0;
  double fer_ci_low = 0.0;  // Wilson 95%
  double fer_ci_high = 0.0;
  std::map<int, WeightBin> weight_histogram;  // keyed by channel error weight
};

// Wilson score interval for k successes in n trials (z = 1.96 at 95%).
std::pair<double, double> wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

// BSC Monte Carlo: draws frames with each bit flipped independently with
// probability epsilon, decodes, and accumulates frame/bit errors plus the
// per-input-weight failure histogram. Frame i is generated from the
// stream (seed, i), so results are bit-identical for any worker count.
// Stops once min_frame_errors is reached (checked at fixed-size block
// boundaries) or at max_frames.
SimResult simulate(const TannerGraph& g, const DecoderConfig& cfg, const SimConfig& sim);

struct MEstimate {
  int n0 = 0;
  uint64_t trials = 0;
  double mean_all_trials = 0.0;      // successes count as 0 residual errors
  double mean_failures_only = 0.0;   // 0 when nothing failed
  double failure_fraction = 0.0;
};

// Decodes `trials` uniformly random weight-n0 patterns and averages the
// residual bit-error count. The all-trials mean is the M used by the BER
// estimate; the failures-only mean is reported alongside.
MEstimate estimate_m(const TannerGraph& g, const DecoderConfig& cfg, int n0, uint64_t trials, uint64_t seed,
                     int workers = 1);

struct CalibrationPoint {
  double epsilon = 0.0;
  uint64_t frames = 0;
  uint64_t frame_errors = 0;
  double fer = 0.0;
  bool used = false;  // inside the accepted FER window
};

struct CalibrationOutcome {
  int n0 = 0;
  std::vector<CalibrationPoint> points;
  std::vector<std::pair<int, double>> objective;  // (N, summed |log10 gap|)
};

// Chooses N0 = argmin_N sum_points |log10 FER_U(N) - log10 FER_sim| over
// N in {J+1, ..., n}, ties toward smaller N. Points whose simulated FER
// falls outside [0.005, 0.2] are dropped; rejects when none remain.
CalibrationOutcome select_n0(int n, int j, uint64_t e_j_count, const std::vector<CalibrationPoint>& points);

// Runs the Monte Carlo points (budgeted by per_point_max_frames) and then
// select_n0. Calibration points should land near the 0.01-0.1 FER range.
CalibrationOutcome calibrate_n0(const TannerGraph& g, const DecoderConfig& cfg, int j, uint64_t e_j_count,
                                const std::vector<double>& eps_points, uint64_t min_frame_errors,
                                uint64_t per_point_max_frames, uint64_t seed, int workers = 1);

}  // namespace errate
