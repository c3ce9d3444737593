#include "lpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpp::stats {

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("variance needs n >= 2");
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double stderr_of_mean(const std::vector<double>& v) {
  return std::sqrt(variance(v) / static_cast<double>(v.size()));
}

double ks_statistic_sorted(const std::vector<double>& sorted, const Law& law) {
  const size_t n = sorted.size();
  double d = 0;
  for (size_t i = 0; i < n; ++i) {
    // handle ties: the empirical cdf jumps only at the last equal value
    const double fn_hi = static_cast<double>(i + 1) / static_cast<double>(n);
    const double fn_lo = static_cast<double>(i) / static_cast<double>(n);
    d = std::max(d, fn_hi - law.F(sorted[i]));
    d = std::max(d, law.F_left(sorted[i]) - fn_lo);
  }
  return d;
}

double ks_pvalue(size_t n, double d) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 1e-3) return 1.0;
  double sum = 0;
  double sign = 1;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(const std::vector<double>& sample, const Law& law) {
  if (sample.size() < 20) throw std::invalid_argument("ks_test needs n >= 20");
  for (size_t i = 0; i < sample.size(); ++i) {
    if (!std::isfinite(sample[i]))
      throw std::invalid_argument("ks_test: non-finite sample value");
    if (i > 0 && sample[i] < sample[i - 1])
      throw std::invalid_argument("ks_test: sample must be sorted");
  }
  KsResult r;
  r.n = sample.size();
  r.statistic = ks_statistic_sorted(sample, law);
  r.p_value = ks_pvalue(r.n, r.statistic);
  return r;
}

double ks_critical_1pct(size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace lpp::stats
