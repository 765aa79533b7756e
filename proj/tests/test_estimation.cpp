#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "combinatorics.hpp"
#include "estimation.hpp"
#include "reference_estimators.hpp"

using namespace errate;
using errate::testing::matching_digits;
using errate::testing::ref_ber;
using errate::testing::ref_binomial_upper_tail;
using errate::testing::ref_fer_lower;
using errate::testing::ref_fer_upper;

namespace {

EstimatorInput tiny() { return {5, 2, 3, 5, 1.0}; }

}  // namespace

TEST_CASE("fer_lower frozen values (n=5, J=2, |E_J|=3, eps=0.1)") {
  // Reference values computed with a 50-digit arbitrary-precision
  // evaluation of the closed form. At N=n the inner sum telescopes to
  // |E_J| eps^J, i.e. exactly 0.03.
  CHECK(fer_lower(tiny(), 5, 0.1) == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(fer_lower(tiny(), 3, 0.1) == doctest::Approx(0.02916).epsilon(1e-12));
  CHECK(binomial_upper_tail(5, 3, 0.1) == doctest::Approx(0.00046).epsilon(1e-12));
  CHECK(fer_upper(tiny(), 3, 0.1) == doctest::Approx(0.02962).epsilon(1e-12));
  CHECK(fer_upper(tiny(), 5, 0.1) == doctest::Approx(0.03).epsilon(1e-12));
}

TEST_CASE("eps domain") {
  CHECK(fer_lower(tiny(), 5, 0.0) == 0.0);
  CHECK(fer_upper(tiny(), 3, 0.0) == 0.0);
  CHECK(ber_estimate(tiny(), 0.0) == 0.0);
  CHECK_THROWS_AS(fer_lower(tiny(), 5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(fer_lower(tiny(), 5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fer_lower(tiny(), 6, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(fer_lower(tiny(), 1, 0.1), std::invalid_argument);
}

TEST_CASE("fer_lower is monotone in N") {
  EstimatorInput inp{200, 3, 42, 9, 7.73};
  for (double eps : {1e-4, 1e-3, 1e-2, 1e-1}) {
    double prev = 0.0;
    for (int cap = 3; cap <= 200; cap += 7) {
      double v = fer_lower(inp, cap, eps);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("ber frozen values at Code-1-shaped parameters") {
  // n=200, J=3, N0=9, M=7.73 from the experiments section; |E_J|=42 is a
  // placeholder count. Frozen from the 50-digit reference.
  EstimatorInput inp{200, 3, 42, 9, 7.73};
  struct Case {
    double eps, expected;
  };
  for (const auto& [eps, expected] : {Case{0.001, 6.30000790703944325e-10}, Case{0.01, 2.18993933337005821e-6},
                                      Case{0.03, 0.00313705704182431765}}) {
    double got = ber_estimate(inp, eps);
    CHECK(matching_digits(got, expected) >= 12.0);
    // Cross-check the frozen constant against the in-process reference.
    CHECK(matching_digits(ref_ber(200, 3, 42, 9, 7.73, eps), expected) >= 12.0);
  }
}

TEST_CASE("log-domain evaluation matches the 256-bit reference to 10+ digits") {
  struct GridCase {
    int n, j;
    uint64_t e;
    int cap;
  };
  const GridCase cases[] = {{200, 3, 42, 9},    {200, 3, 42, 200},   {1008, 3, 17, 38},
                            {1008, 3, 17, 1008}, {1998, 4, 5, 10},   {1998, 4, 5, 1998}};
  for (const auto& c : cases) {
    EstimatorInput inp{c.n, c.j, c.e, c.n, 0.0};
    for (double eps : {1e-4, 1e-3, 1e-2, 1e-1}) {
      double mine = fer_lower(inp, c.cap, eps);
      double ref = ref_fer_lower(c.n, c.j, c.e, c.cap, eps);
      CHECK(matching_digits(mine, ref) >= 10.0);
      double mine_u = fer_upper(inp, c.cap, eps);
      double ref_u = ref_fer_upper(c.n, c.j, c.e, c.cap, eps);
      CHECK(matching_digits(mine_u, ref_u) >= 10.0);
    }
  }
}

TEST_CASE("upper minus lower equals the binomial upper tail") {
  EstimatorInput inp{200, 3, 42, 9, 7.73};
  for (int cap : {4, 5, 6, 9}) {
    for (double eps : {0.02, 0.05, 0.1}) {
      double gap = fer_upper(inp, cap, eps) - fer_lower(inp, cap, eps);
      double tail = ref_binomial_upper_tail(200, cap, eps);
      CHECK(matching_digits(gap, tail) >= 10.0);
    }
  }
  // Equality at N = n.
  for (double eps : {1e-4, 1e-2, 0.4}) {
    double lo = fer_lower(inp, 200, eps), hi = fer_upper(inp, 200, eps);
    CHECK(std::fabs(hi - lo) <= 1e-12 * std::max(hi, 1e-300));
  }
}

TEST_CASE("estimates stay in [0,1] even at saturating inputs") {
  // |E_J| at its cap and eps at 1/2 drive every raw term far past 1.
  EstimatorInput extreme{20, 4, binomial(20, 4), 10, 20.0};
  CHECK(ber_estimate(extreme, 0.5) <= 1.0);
  CHECK(fer_upper(extreme, 10, 0.5) <= 1.0);
  CHECK(fer_lower(extreme, 10, 0.5) <= 1.0);
}

TEST_CASE("estimates stay in [0,1] over a parameter sweep") {
  for (int n : {20, 200, 1008}) {
    for (int j : {1, 2, 3}) {
      EstimatorInput inp{n, j, 7, std::min(n, j + 6), 4.5};
      for (double eps : {1e-5, 1e-3, 0.05, 0.25, 0.5}) {
        for (int cap : {j, j + 2, n / 2, n}) {
          double lo = fer_lower(inp, cap, eps);
          double hi = fer_upper(inp, cap, eps);
          double b = ber_estimate(inp, eps);
          CHECK(lo >= 0.0);
          CHECK(hi >= lo);
          CHECK(hi <= 1.0);
          CHECK(b >= 0.0);
          CHECK(b <= 1.0);
          CHECK(b <= fer_upper(inp, inp.n0, eps) + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("s_prime counts") {
  CHECK(s_prime_count(10, 2, 1, 3) == doctest::Approx(8.0).epsilon(1e-12));
  // Exhaustive superset count: weight-3 supersets of one fixed pair on
  // n=10 are exactly C(8,1) = 8, matching the truncated form.
  CHECK(s_prime_count_untruncated(10, 2, 1, 3) == doctest::Approx(7.82353909465020576).epsilon(1e-12));
  CHECK(s_double_prime_count(10, 2, 1, 3) == doctest::Approx(7.64839506172839506).epsilon(1e-12));
  CHECK(s_prime_count(10, 2, 0, 3) == 0.0);
  CHECK(s_prime_count_untruncated(10, 2, 0, 3) == 0.0);
  CHECK(s_double_prime_count(10, 2, 0, 3) == 0.0);
  CHECK_THROWS_AS(s_prime_count(10, 3, 1, 3), std::invalid_argument);
}

TEST_CASE("s-count ordering: truncated >= untruncated >= exactly-one") {
  for (int n : {10, 30, 100}) {
    for (int j : {1, 2, 3}) {
      for (uint64_t e : {uint64_t{1}, uint64_t{4}, uint64_t{20}}) {
        if (e > binomial(n, j)) {
          CHECK_THROWS_AS(s_prime_count(n, j, e, j + 1), std::invalid_argument);
          continue;
        }
        for (int i = j + 1; i <= std::min(n, j + 6); ++i) {
          double trunc = s_prime_count(n, j, e, i);
          double untrunc = s_prime_count_untruncated(n, j, e, i);
          double exactly_one = s_double_prime_count(n, j, e, i);
          CHECK(trunc >= untrunc * (1.0 - 1e-12));
          CHECK(untrunc >= exactly_one * (1.0 - 1e-12));
        }
      }
    }
  }
}

TEST_CASE("complexity ratio reproduces the worked example") {
  CHECK(complexity_ratio(200, 3, 1e-7, 100) == doctest::Approx(749.906261717285).epsilon(1e-9));
  CHECK(complexity_ratio(200, 3, 1e-8, 100) == doctest::Approx(7499.06261717285).epsilon(1e-9));
  CHECK(complexity_ratio_cumulative(200, 3, {1e-7, 1e-8}, 100) ==
        doctest::Approx(8248.96887889014).epsilon(1e-9));
  CHECK(break_even_fer(1008, 3, 100) == doctest::Approx(5.85824481642581e-7).epsilon(1e-9));
  CHECK_THROWS_AS(complexity_ratio(200, 3, 0.0, 100), std::invalid_argument);
}

TEST_CASE("ber to fer_upper ratio approaches J/n as eps vanishes") {
  EstimatorInput inp{200, 3, 42, 9, 7.73};
  double ratio = ber_estimate(inp, 1e-6) / fer_upper(inp, 9, 1e-6);
  CHECK(std::fabs(ratio - 3.0 / 200.0) / (3.0 / 200.0) < 0.05);
}

TEST_CASE("rate_point fills all columns consistently") {
  EstimatorInput inp{200, 3, 42, 9, 7.73};
  auto pt = rate_point(inp, 9, 0.01);
  CHECK(pt.epsilon == 0.01);
  CHECK(pt.p_j == doctest::Approx(p_j(inp, 0.01)));
  CHECK(pt.fer_lower <= pt.fer_upper);
  CHECK(pt.ber <= pt.fer_upper);
}

TEST_CASE("log grid endpoints and monotonicity") {
  auto grid = log_spaced_grid(1e-3, 1e-1, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(1e-1));
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK_THROWS_AS(log_spaced_grid(0.0, 0.1, 3), std::invalid_argument);
}

TEST_CASE("validate_input enforces the tuple invariants") {
  CHECK_THROWS_AS(validate_input({200, 0, 5, 9, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_input({200, 3, 5, 2, 1.0}), std::invalid_argument);   // n0 < j
  CHECK_THROWS_AS(validate_input({200, 3, 0, 9, 1.0}), std::invalid_argument);   // |E_J| = 0
  CHECK_THROWS_AS(validate_input({200, 3, 5, 9, 201.0}), std::invalid_argument); // M > n
  CHECK_THROWS_AS(validate_input({5, 2, 11, 3, 1.0}), std::invalid_argument);    // |E_J| > C(5,2)
  validate_input({200, 3, 42, 9, 7.73});
}
