#include "estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "combinatorics.hpp"

namespace errate {

namespace {

void require_eps(double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) throw std::invalid_argument("estimator: eps must lie in [0, 1)");
}

// Sum of exp(log_terms) with shift normalization and Kahan compensation.
// Terms for these estimators span hundreds of orders of magnitude, so
// everything is assembled in the log domain first.
class LogSum {
 public:
  void add(double log_term) {
    if (log_term == -INFINITY) return;
    terms_.push_back(log_term);
    if (log_term > max_) max_ = log_term;
  }

  double value() const {
    if (terms_.empty()) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (double t : terms_) {
      double y = std::exp(t - max_) - comp;
      double u = sum + y;
      comp = (u - sum) - y;
      sum = u;
    }
    return std::exp(max_) * sum;
  }

 private:
  std::vector<double> terms_;
  double max_ = -INFINITY;
};

// log of eps^i (1-eps)^(n-i); log1p keeps the (1-eps) factor accurate
// for small eps.
double log_channel_term(int n, int i, double eps) {
  return static_cast<double>(i) * std::log(eps) + static_cast<double>(n - i) * std::log1p(-eps);
}

}  // namespace

void validate_input(const EstimatorInput& inp) {
  if (inp.n < 1 || inp.j < 1 || inp.j > inp.n0 || inp.n0 > inp.n)
    throw std::invalid_argument("estimator: need 1 <= J <= N0 <= n");
  if (inp.e_j_count < 1) throw std::invalid_argument("estimator: |E_J| must be at least 1");
  if (binomial_fits(inp.n, inp.j) && inp.e_j_count > binomial(inp.n, inp.j))
    throw std::invalid_argument("estimator: |E_J| exceeds C(n, J)");
  if (!(inp.m_avg >= 0.0) || inp.m_avg > static_cast<double>(inp.n))
    throw std::invalid_argument("estimator: M must lie in [0, n]");
}

double p_j(const EstimatorInput& inp, double eps) {
  validate_input(inp);
  require_eps(eps);
  if (eps == 0.0) return 0.0;
  return std::exp(std::log(static_cast<double>(inp.e_j_count)) + log_channel_term(inp.n, inp.j, eps));
}

double fer_lower(const EstimatorInput& inp, int n_cap, double eps) {
  validate_input(inp);
  require_eps(eps);
  if (n_cap < inp.j || n_cap > inp.n) throw std::invalid_argument("estimator: need J <= N <= n");
  if (eps == 0.0) return 0.0;
  const double log_e = std::log(static_cast<double>(inp.e_j_count));
  LogSum sum;
  for (int i = inp.j; i <= n_cap; ++i)
    sum.add(log_e + log_binomial(inp.n - inp.j, i - inp.j) + log_channel_term(inp.n, i, eps));
  return std::min(1.0, sum.value());
}

double binomial_upper_tail(int n, int n_cap, double eps) {
  require_eps(eps);
  if (n_cap < 0 || n_cap > n) throw std::invalid_argument("estimator: need 0 <= N <= n");
  if (eps == 0.0 || n_cap == n) return 0.0;
  LogSum sum;
  for (int i = n_cap + 1; i <= n; ++i) sum.add(log_binomial(n, i) + log_channel_term(n, i, eps));
  return std::min(1.0, sum.value());
}

double fer_upper(const EstimatorInput& inp, int n_cap, double eps) {
  return std::min(1.0, fer_lower(inp, n_cap, eps) + binomial_upper_tail(inp.n, n_cap, eps));
}

double ber_estimate(const EstimatorInput& inp, double eps) {
  validate_input(inp);
  require_eps(eps);
  if (eps == 0.0) return 0.0;
  const double n = static_cast<double>(inp.n);
  const double log_e = std::log(static_cast<double>(inp.e_j_count));

  // Weight-J term and the sub-N0 range carry J residual errors each.
  LogSum low;
  low.add(log_e + log_channel_term(inp.n, inp.j, eps));
  for (int i = inp.j + 1; i <= inp.n0 - 1; ++i)
    low.add(log_e + log_binomial(inp.n - inp.j, i - inp.j) + log_channel_term(inp.n, i, eps));
  double ber = (static_cast<double>(inp.j) / n) * low.value();

  // Weight N0 and the binomial tail carry M residual errors on average.
  double at_n0 = std::exp(log_e + log_binomial(inp.n - inp.j, inp.n0 - inp.j) +
                          log_channel_term(inp.n, inp.n0, eps));
  ber += (inp.m_avg / n) * at_n0;
  ber += (inp.m_avg / n) * binomial_upper_tail(inp.n, inp.n0, eps);
  return std::min(1.0, ber);
}

namespace {

void require_s_count_args(int n, int j, uint64_t e_j_count, int i) {
  if (i <= j) throw std::invalid_argument("s_count: need i > j");
  if (j < 1 || i > n) throw std::invalid_argument("s_count: need 1 <= j < i <= n");
  if (e_j_count > 0 && binomial_fits(n, j) && e_j_count > binomial(n, j))
    throw std::invalid_argument("s_count: |E_J| exceeds C(n, J)");
}

}  // namespace

double s_prime_count(int n, int j, uint64_t e_j_count, int i) {
  require_s_count_args(n, j, e_j_count, i);
  if (e_j_count == 0) return 0.0;
  return std::exp(std::log(static_cast<double>(e_j_count)) + log_binomial(n - j, i - j));
}

double s_prime_count_untruncated(int n, int j, uint64_t e_j_count, int i) {
  require_s_count_args(n, j, e_j_count, i);
  if (e_j_count == 0) return 0.0;
  const double log_ratio = std::log(static_cast<double>(e_j_count)) - log_binomial(n, j);
  const double trials = std::exp(log_binomial(i, j));
  // 1 - (1 - r)^T, kept accurate for tiny r via log1p/expm1.
  const double hit = -std::expm1(trials * std::log1p(-std::exp(log_ratio)));
  return std::exp(log_binomial(n, i)) * hit;
}

double s_double_prime_count(int n, int j, uint64_t e_j_count, int i) {
  require_s_count_args(n, j, e_j_count, i);
  if (e_j_count == 0) return 0.0;
  const double log_ratio = std::log(static_cast<double>(e_j_count)) - log_binomial(n, j);
  const double trials = std::exp(log_binomial(i, j));
  return std::exp(log_binomial(n, i) + std::log(trials) +
                  (trials - 1.0) * std::log1p(-std::exp(log_ratio)) + log_ratio);
}

double complexity_ratio(int n, int j, double p, double m) {
  if (!(p > 0.0) || p >= 1.0) throw std::invalid_argument("complexity_ratio: p must lie in (0, 1)");
  if (!(m >= 1.0)) throw std::invalid_argument("complexity_ratio: m must be at least 1");
  double decodes = 0.0;
  for (int i = 1; i <= j; ++i) decodes += std::exp(log_binomial(n, i));
  return m / (p * decodes);
}

double complexity_ratio_cumulative(int n, int j, const std::vector<double>& ps, double m) {
  double mc = 0.0;
  for (double p : ps) {
    if (!(p > 0.0) || p >= 1.0) throw std::invalid_argument("complexity_ratio: p must lie in (0, 1)");
    mc += m / p;
  }
  double decodes = 0.0;
  for (int i = 1; i <= j; ++i) decodes += std::exp(log_binomial(n, i));
  return mc / decodes;
}

double break_even_fer(int n, int j, double m) {
  double decodes = 0.0;
  for (int i = 1; i <= j; ++i) decodes += std::exp(log_binomial(n, i));
  return m / decodes;
}

RatePoint rate_point(const EstimatorInput& inp, int n_cap, double eps) {
  validate_input(inp);
  RatePoint pt;
  pt.epsilon = eps;
  pt.p_j = p_j(inp, eps);
  pt.fer_lower = fer_lower(inp, n_cap, eps);
  pt.fer_upper = fer_upper(inp, n_cap, eps);
  pt.ber = ber_estimate(inp, eps);
  return pt;
}

std::vector<double> log_spaced_grid(double start, double stop, int points) {
  if (!(start > 0.0) || !(stop > 0.0)) throw std::invalid_argument("grid: endpoints must be positive");
  if (points < 1) throw std::invalid_argument("grid: need at least one point");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(points));
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  const double la = std::log(start), lb = std::log(stop);
  for (int k = 0; k < points; ++k)
    out.push_back(std::exp(la + (lb - la) * static_cast<double>(k) / static_cast<double>(points - 1)));
  return out;
}

}  // namespace errate
