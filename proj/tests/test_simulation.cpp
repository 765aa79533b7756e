#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "combinatorics.hpp"
#include "enumeration.hpp"
#include "estimation.hpp"
#include "random_graphs.hpp"
#include "rng.hpp"
#include "simulation.hpp"

using namespace errate;

TEST_CASE("uniform_weight_pattern boundary weights") {
  Xoshiro256pp rng(1, 0);
  std::vector<int32_t> scratch;
  CHECK(uniform_weight_pattern(10, 0, rng, scratch).empty());
  auto full = uniform_weight_pattern(10, 10, rng, scratch);
  for (int v = 0; v < 10; ++v) CHECK(full[static_cast<size_t>(v)] == v);
}

TEST_CASE("uniform_weight_pattern per-position inclusion stays within 3 sigma") {
  const int n = 50, w = 5;
  const int draws = 100000;
  std::vector<int> hits(n, 0);
  Xoshiro256pp rng(2024, 0);
  std::vector<int32_t> scratch;
  for (int d = 0; d < draws; ++d)
    for (int32_t v : uniform_weight_pattern(n, w, rng, scratch)) ++hits[static_cast<size_t>(v)];
  const double p = static_cast<double>(w) / n;
  const double sigma = std::sqrt(p * (1 - p) / draws);
  for (int v = 0; v < n; ++v) {
    double freq = static_cast<double>(hits[static_cast<size_t>(v)]) / draws;
    CHECK(std::fabs(freq - p) <= 3 * sigma);
  }
}

TEST_CASE("wilson interval sanity") {
  auto [lo, hi] = wilson_interval(0, 100);
  CHECK(lo == 0.0);
  CHECK(hi > 0.0);
  CHECK(hi < 0.06);
  auto [lo2, hi2] = wilson_interval(50, 100);
  CHECK(lo2 < 0.5);
  CHECK(hi2 > 0.5);
}

TEST_CASE("simulate is bit-identical across worker counts and reruns") {
  TannerGraph g = testing::random_regular_graph(48, 3, 6, 12, true);
  auto cfg = make_ga_config(g);
  SimConfig sim;
  sim.epsilon = 0.06;
  sim.min_frame_errors = 40;
  sim.max_frames = 20000;
  sim.seed = 7;
  sim.workers = 1;
  auto a = simulate(g, cfg, sim);
  for (int k : {1, 2, 4}) {
    sim.workers = k;
    auto b = simulate(g, cfg, sim);
    CHECK(b.frames == a.frames);
    CHECK(b.frame_errors == a.frame_errors);
    CHECK(b.bit_errors == a.bit_errors);
    bool hist_equal = true;
    if (b.weight_histogram.size() != a.weight_histogram.size()) hist_equal = false;
    for (const auto& [w, bin] : a.weight_histogram) {
      auto it = b.weight_histogram.find(w);
      if (it == b.weight_histogram.end() || it->second.frames != bin.frames ||
          it->second.failures != bin.failures)
        hist_equal = false;
    }
    CHECK(hist_equal);
  }
}

TEST_CASE("simulate stops once the frame-error quota is met") {
  TannerGraph g = testing::random_regular_graph(48, 3, 6, 12, true);
  auto cfg = make_ga_config(g);
  SimConfig sim;
  sim.epsilon = 0.12;  // deep in the high-FER region
  sim.min_frame_errors = 100;
  sim.max_frames = 1000000;
  sim.seed = 3;
  sim.workers = 2;
  auto r = simulate(g, cfg, sim);
  CHECK(r.frame_errors >= 100);
  CHECK(r.frames < sim.max_frames);
  CHECK(r.fer == doctest::Approx(static_cast<double>(r.frame_errors) / static_cast<double>(r.frames)));
  CHECK(r.fer_ci_low <= r.fer);
  CHECK(r.fer >= 0.3);  // epsilon far above threshold: most frames fail
}

TEST_CASE("input weight histogram passes a chi-square test against the binomial law") {
  TannerGraph g = testing::random_regular_graph(96, 3, 6, 5, true);
  auto cfg = make_ga_config(g);
  SimConfig sim;
  sim.epsilon = 0.03;
  sim.min_frame_errors = UINT64_MAX;  // run to the frame cap
  sim.max_frames = 100000;
  sim.seed = 99;
  sim.workers = 4;
  auto r = simulate(g, cfg, sim);
  REQUIRE(r.frames == 100000);

  const int n = g.variable_count();
  // Expected binomial counts; bins with expectation < 5 pool into tails.
  std::vector<double> expected(static_cast<size_t>(n) + 1, 0.0);
  for (int w = 0; w <= n; ++w)
    expected[static_cast<size_t>(w)] =
        static_cast<double>(r.frames) *
        std::exp(log_binomial(n, w) + w * std::log(sim.epsilon) + (n - w) * std::log1p(-sim.epsilon));
  std::vector<uint64_t> observed(static_cast<size_t>(n) + 1, 0);
  for (const auto& [w, bin] : r.weight_histogram) observed[static_cast<size_t>(w)] = bin.frames;

  double chi2 = 0.0;
  int bins = 0;
  double pooled_exp = 0.0;
  uint64_t pooled_obs = 0;
  for (int w = 0; w <= n; ++w) {
    pooled_exp += expected[static_cast<size_t>(w)];
    pooled_obs += observed[static_cast<size_t>(w)];
    if (pooled_exp >= 5.0) {
      double d = static_cast<double>(pooled_obs) - pooled_exp;
      chi2 += d * d / pooled_exp;
      ++bins;
      pooled_exp = 0.0;
      pooled_obs = 0;
    }
  }
  if (pooled_exp > 0.0) {
    double d = static_cast<double>(pooled_obs) - pooled_exp;
    chi2 += d * d / std::max(pooled_exp, 1e-9);
    ++bins;
  }
  REQUIRE(bins >= 4);
  boost::math::chi_squared dist(bins - 1);
  const double critical = boost::math::quantile(dist, 0.99);
  CHECK(chi2 < critical);
}

TEST_CASE("deep saturation: FER near 1 at a crossover far above threshold") {
  TannerGraph g = testing::random_regular_graph(48, 3, 6, 12, true);
  auto cfg = make_ga_config(g);
  SimConfig sim;
  sim.epsilon = 0.2;
  sim.min_frame_errors = 200;
  sim.max_frames = 5000;
  sim.seed = 21;
  sim.workers = 2;
  auto r = simulate(g, cfg, sim);
  CHECK(r.fer >= 0.9);
  CHECK(r.fer <= 1.0);
}

TEST_CASE("estimate_m on a decoder that corrects weight-1 inputs") {
  TannerGraph g = testing::random_regular_graph(48, 3, 6, 21, true);
  auto cfg = make_ga_config(g);
  auto m = estimate_m(g, cfg, 1, 2000, 11, 2);
  CHECK(m.mean_all_trials == 0.0);
  CHECK(m.failure_fraction == 0.0);
  // Weight 0 never counts any residual errors.
  auto zero = estimate_m(g, cfg, 0, 100, 11, 1);
  CHECK(zero.mean_all_trials == 0.0);
}

TEST_CASE("estimate_m at long-code scale lands at the expected order of magnitude") {
  // At weight 38 on a (1008,504) degree-(3,6) code the surviving error
  // mass per failure is in the hundreds; averaged over all trials the
  // estimate sits around 10^2 (the exact value is instance-specific).
  TannerGraph g = testing::random_regular_graph(1008, 3, 6, 99, true);
  auto cfg = make_ga_config(g);
  auto m = estimate_m(g, cfg, 38, 2000, 5, 2);
  CHECK(m.mean_all_trials >= 10.0);
  CHECK(m.mean_all_trials <= 1000.0);
  CHECK(m.mean_failures_only > m.mean_all_trials);
  CHECK(m.failure_fraction > 0.01);
}

TEST_CASE("estimate_m when the decoder can never move a bit") {
  // Disjoint pairs sharing one check: the all-error word is a codeword,
  // so every weight-n pattern is an immediate miscorrection with all n0
  // errors intact.
  std::vector<std::vector<int32_t>> adj = {{0}, {0}, {1}, {1}};
  TannerGraph g(4, 2, adj);
  auto cfg = make_ga_config(g);
  auto m = estimate_m(g, cfg, 4, 500, 5);
  CHECK(m.mean_all_trials == doctest::Approx(4.0));
  CHECK(m.mean_failures_only == doctest::Approx(4.0));
  CHECK(m.failure_fraction == doctest::Approx(1.0));
}

TEST_CASE("estimate_m averages all trials vs failures only") {
  TannerGraph g = testing::random_regular_graph(48, 3, 6, 31, true);
  auto cfg = make_ga_config(g);
  auto m = estimate_m(g, cfg, 6, 4000, 13, 2);
  CHECK(m.trials == 4000);
  if (m.failure_fraction > 0.0 && m.failure_fraction < 1.0) {
    CHECK(m.mean_all_trials < m.mean_failures_only);
    CHECK(m.mean_all_trials == doctest::Approx(m.mean_failures_only * m.failure_fraction));
  }
  // Worker invariance.
  auto m1 = estimate_m(g, cfg, 6, 4000, 13, 1);
  CHECK(m1.mean_all_trials == m.mean_all_trials);
}

TEST_CASE("select_n0 recovers a planted threshold") {
  const int n = 96, j = 3;
  const uint64_t e_j = 9;
  const std::map<int, std::vector<double>> eps_for_planted = {
      {5, {0.03, 0.035, 0.04}}, {7, {0.04, 0.045, 0.05}}, {11, {0.07, 0.075, 0.08}}};
  for (int planted : {5, 7, 11}) {
    EstimatorInput inp{n, j, e_j, n, 0.0};
    std::vector<CalibrationPoint> points;
    for (double eps : eps_for_planted.at(planted)) {
      CalibrationPoint p;
      p.epsilon = eps;
      p.fer = fer_upper(inp, planted, eps);
      REQUIRE(p.fer >= 0.005);
      REQUIRE(p.fer <= 0.2);
      p.frames = 1000;
      p.frame_errors = static_cast<uint64_t>(p.fer * 1000);
      points.push_back(p);
    }
    auto outcome = select_n0(n, j, e_j, points);
    CHECK(outcome.n0 == planted);
  }
}

TEST_CASE("select_n0 breaks ties toward the smaller N") {
  const int n = 96, j = 3;
  const uint64_t e_j = 9;
  EstimatorInput inp{n, j, e_j, n, 0.0};
  // One point placed exactly at the log-midpoint between FER_U(6) and
  // FER_U(7): both N get the same objective, 6 must win.
  const double eps = 0.03;
  double mid = std::sqrt(fer_upper(inp, 6, eps) * fer_upper(inp, 7, eps));
  std::vector<CalibrationPoint> points = {{eps, 1000, 100, mid, false}};
  REQUIRE(mid >= 0.005);
  auto outcome = select_n0(n, j, e_j, points);
  CHECK(outcome.n0 == 6);
}

TEST_CASE("select_n0 rejects out-of-window points") {
  std::vector<CalibrationPoint> points = {{0.001, 1000, 1, 0.0003, false}};
  CHECK_THROWS_AS(select_n0(96, 3, 9, points), std::runtime_error);
}

TEST_CASE("weight-conditional failure fraction is consistent with enumeration") {
  TannerGraph g = testing::random_graph_min_degree3(16, 2029);
  auto cfg = make_ga_config(g);
  EnumerationOptions opts;
  opts.max_weight = 3;
  opts.workers = 2;
  auto enumr = find_j(g, cfg, opts);
  if (enumr.status != EnumerationResult::Status::found) return;
  const int j = *enumr.j_min;

  SimConfig sim;
  sim.epsilon = static_cast<double>(j) / 16.0;  // center the binomial near weight J
  sim.min_frame_errors = UINT64_MAX;
  sim.max_frames = 60000;
  sim.seed = 17;
  sim.workers = 2;
  auto r = simulate(g, cfg, sim);

  auto it = r.weight_histogram.find(j);
  REQUIRE(it != r.weight_histogram.end());
  REQUIRE(it->second.frames >= 500);
  const double expected = static_cast<double>(enumr.e_j_count) /
                          static_cast<double>(binomial(g.variable_count(), j));
  auto [lo, hi] = wilson_interval(it->second.failures, it->second.frames);
  CHECK(lo <= expected);
  CHECK(expected <= hi);
}
