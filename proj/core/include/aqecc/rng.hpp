#pragma once

#include <cstdint>
#include <random>

namespace aqecc {

// splitmix64 finalizer; good enough to decorrelate derived seeds.
uint64_t mix64(uint64_t x);

// Deterministic random stream. A given (seed) always yields the same
// sequence, and child(k) derives an independent stream keyed by (seed, k),
// so per-trial streams do not depend on how many draws earlier trials made.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next();

  // Uniform in [0, bound), bound >= 1. Rejection-sampled: exactly uniform,
  // which matters for the group samplers and for exhaustive/sampled parity.
  uint64_t below(uint64_t bound);

  // Independent stream keyed by (this stream's seed, k).
  Rng child(uint64_t k) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace aqecc
