#pragma once

#include <cstdint>
#include <vector>

namespace errate {

// The tuple feeding the closed-form FER/BER estimates: block length,
// smallest failing weight J, |E_J|, the weight threshold N0, and the
// average residual bit errors M at weight N0.
struct EstimatorInput {
  int n = 0;
  int j = 0;
  uint64_t e_j_count = 0;
  int n0 = 0;
  double m_avg = 0.0;
};

// Throws std::invalid_argument unless 1 <= j <= n0 <= n,
// 1 <= e_j_count <= C(n, j) and 0 <= m_avg <= n.
void validate_input(const EstimatorInput& inp);

// P(J) = |E_J| eps^J (1-eps)^(n-J), the exact first term of the FER.
double p_j(const EstimatorInput& inp, double eps);

// "Lower" estimate: P(J) plus the weight-(J+1..N) terms with |E_i|
// approximated by |E_J| C(n-J, i-J). Requires J <= n_cap <= n; n_cap = J
// degenerates to P(J) alone. eps = 0 returns 0; eps outside [0, 1) is
// rejected.
double fer_lower(const EstimatorInput& inp, int n_cap, double eps);

// P[weight > n_cap] under the binomial channel law; the bracket added by
// the upper estimate. Computed as an explicit upper-tail sum so it stays
// accurate when far below fer_lower.
double binomial_upper_tail(int n, int n_cap, double eps);

// "Upper" estimate: fer_lower plus the upper tail. Equal to fer_lower
// exactly when n_cap = n.
double fer_upper(const EstimatorInput& inp, int n_cap, double eps);

// BER estimate built on FER_U(N0): weight-(J..N0-1) failures contribute
// J bit errors and weight >= N0 inputs contribute M on average.
double ber_estimate(const EstimatorInput& inp, double eps);

// |S'_i| approximations for i > j: the truncated form |E_J| C(n-J, i-J)
// used by the FER estimates, and the untruncated Bernoulli-model form
// |S_i| [1 - (1 - |E_J|/|S_J|)^C(i,J)] for diagnostics.
double s_prime_count(int n, int j, uint64_t e_j_count, int i);
double s_prime_count_untruncated(int n, int j, uint64_t e_j_count, int i);

// |S''_i|: weight-i patterns containing exactly one element of E_J,
// |S_i| C(i,J) (1-r)^(C(i,J)-1) r with r = |E_J|/|S_J|.
double s_double_prime_count(int n, int j, uint64_t e_j_count, int i);

// Decodes-per-frame-error ratio of Monte Carlo simulation at target FER
// p (with an m frame-error quota) to one exhaustive enumeration up to
// weight J: eta = m / (p * sum_{i<=J} C(n,i)).
double complexity_ratio(int n, int j, double p, double m);

// Same quota amortized over several Monte Carlo points against the one
// enumeration: sum_k (m / p_k) / sum_{i<=J} C(n,i).
double complexity_ratio_cumulative(int n, int j, const std::vector<double>& ps, double m);

// FER below which enumeration beats Monte Carlo: p' = m / sum C(n,i).
double break_even_fer(int n, int j, double m);

// One row of the estimate CSV.
struct RatePoint {
  double epsilon = 0.0;
  double p_j = 0.0;
  double fer_lower = 0.0;
  double fer_upper = 0.0;
  double ber = 0.0;
};

RatePoint rate_point(const EstimatorInput& inp, int n_cap, double eps);

// Log-spaced grid over [start, stop], inclusive of both endpoints.
std::vector<double> log_spaced_grid(double start, double stop, int points);

}  // namespace errate
