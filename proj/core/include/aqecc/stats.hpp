#pragma once

#include <cstdint>

namespace aqecc {

// log of the binomial CDF P(X <= k) for X ~ Bin(n, prob), exact summation in
// log space (no normal approximation).
double log_binomial_cdf(uint64_t k, uint64_t n, double prob);

// One-sided Clopper-Pearson upper confidence bound: the largest failure
// probability still compatible with seeing <= failures in trials at the
// given one-sided level (e.g. 0.999). Returns 1.0 when failures == trials.
double clopper_pearson_upper(uint64_t failures, uint64_t trials, double level);

}  // namespace aqecc
