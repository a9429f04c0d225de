#include "aqecc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace aqecc {

double log_binomial_cdf(uint64_t k, uint64_t n, double prob) {
  if (n == 0 || k >= n) return 0.0;
  if (prob <= 0.0) return 0.0;
  if (prob >= 1.0) return -HUGE_VAL;
  const double lp = std::log(prob), lq = std::log1p(-prob);
  // Stable log-sum-exp over i = 0..k of log C(n,i) + i lp + (n-i) lq.
  double max_term = -HUGE_VAL;
  double acc = 0.0;
  for (uint64_t i = 0; i <= k; ++i) {
    const double lt = std::lgamma(double(n) + 1) - std::lgamma(double(i) + 1) -
                      std::lgamma(double(n - i) + 1) + double(i) * lp + double(n - i) * lq;
    if (lt > max_term) {
      acc = acc * std::exp(max_term - lt) + 1.0;
      max_term = lt;
    } else {
      acc += std::exp(lt - max_term);
    }
  }
  return max_term + std::log(acc);
}

double clopper_pearson_upper(uint64_t failures, uint64_t trials, double level) {
  if (trials == 0) throw std::invalid_argument("clopper_pearson_upper: zero trials");
  if (failures > trials) throw std::invalid_argument("clopper_pearson_upper: failures > trials");
  if (level <= 0.0 || level >= 1.0)
    throw std::invalid_argument("clopper_pearson_upper: level must be in (0,1)");
  if (failures == trials) return 1.0;

  // The bound solves P(Bin(trials, u) <= failures) = 1 - level; the CDF is
  // strictly decreasing in u, so bisect.
  const double log_alpha = std::log1p(-level);
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (log_binomial_cdf(failures, trials, mid) > log_alpha)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace aqecc
