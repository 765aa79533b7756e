#pragma once

#include <cstdint>
#include <mpfr.h>

#include <string>

namespace errate::testing {

// 256-bit direct evaluations of the closed forms, summing exact binomial
// terms without any log-domain tricks. Independent route against the
// production estimators.
class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, 256); }
  explicit BigFloat(double d) : BigFloat() { mpfr_set_d(v_, d, MPFR_RNDN); }
  BigFloat(const BigFloat& o) : BigFloat() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat& operator=(const BigFloat& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

// eps^i (1-eps)^(n-i) C(a, b) * scale, added into acc.
void add_binomial_term(BigFloat& acc, uint64_t scale, unsigned long a, unsigned long b, int n, int i,
                       double eps);

double ref_fer_lower(int n, int j, uint64_t e_j, int n_cap, double eps);
double ref_binomial_upper_tail(int n, int n_cap, double eps);
double ref_fer_upper(int n, int j, uint64_t e_j, int n_cap, double eps);
double ref_ber(int n, int j, uint64_t e_j, int n0, double m_avg, double eps);

// Relative gap |a-b| / max(|a|, |b|); 0 when both are 0.
double rel_gap(double a, double b);

// Number of agreeing significant digits, floor(-log10(rel_gap)).
double matching_digits(double a, double b);

}  // namespace errate::testing
