#pragma once

#include <functional>
#include <vector>

namespace lpp::stats {

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased
double stderr_of_mean(const std::vector<double>& v);

// Hypothesized law for a one-sample KS test. For continuous laws leave
// cdf_left empty; for laws with atoms supply the left limit P(X < t).
struct Law {
  std::function<double(double)> cdf;
  std::function<double(double)> cdf_left;
  double F(double t) const { return cdf(t); }
  double F_left(double t) const { return cdf_left ? cdf_left(t) : cdf(t); }
};

struct KsResult {
  double statistic = 0;
  double p_value = 0;
  size_t n = 0;
};

// D = sup_t |F_hat(t) - F(t)| for an already sorted sample.
double ks_statistic_sorted(const std::vector<double>& sorted, const Law& law);

// Asymptotic tail of the Kolmogorov distribution with Stephens' small-sample
// correction; good to a few 1e-3 for n >= 20.
double ks_pvalue(size_t n, double d);

// Validates input (sorted, finite, n >= 20) and throws std::invalid_argument
// otherwise.
KsResult ks_test(const std::vector<double>& sorted_sample, const Law& law);

// Critical value of D at level 1% (asymptotic).
double ks_critical_1pct(size_t n);

}  // namespace lpp::stats
