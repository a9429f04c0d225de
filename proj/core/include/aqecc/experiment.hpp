#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqecc/stats.hpp"
#include "aqecc/strategies.hpp"

namespace aqecc {

// Exact probability as a reduced fraction.
struct ExactProb {
  uint64_t num = 0;
  uint64_t den = 1;
  static ExactProb make(uint64_t num, uint64_t den);  // reduces; den > 0
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const ExactProb& o) const = default;
};

// Per-register storage accounting, with the target scaling printed alongside
// for inspection (desk-scale instances cannot exhibit an asymptotic).
struct SizeReport {
  size_t n = 0;
  size_t t = 0;
  size_t traps = 0;
  size_t qudits_per_register = 0;
  size_t share_symbols = 0;  // over p_share
  size_t key_symbols = 0;    // over p_mac: 2 per counterpart
  size_t tag_symbols = 0;    // over p_mac: 1 per counterpart
  uint64_t p = 0, p_share = 0, p_mac = 0;
  double classical_bits_per_register = 0.0;
  std::string formula;
};

SizeReport size_report(const AqeccParams& params);

// One (strategy, corruption set, pipeline) measurement: either `trials`
// Monte Carlo runs with an exact one-sided binomial upper confidence bound,
// or an exhaustive-oracle exact probability.
struct StrategyRun {
  std::string strategy;
  Pipeline pipeline = Pipeline::aqecc;
  std::vector<size_t> b;
  bool exhaustive = false;
  uint64_t trials = 0;
  uint64_t failures = 0;
  ExactProb exact;            // exhaustive mode only
  double failure_rate = 0.0;
  double upper_bound = 0.0;   // confidence bound, or the exact value itself
  bool pass = false;          // upper_bound <= report bound
};

// Failure throughout means any outcome other than recovery with identity
// residual; an abort counts as failure because it hands back a fixed state.
bool is_failure(const DecodeOutcome& out);

inline constexpr double kConfidenceLevel = 0.999;  // one-sided, 1 - 1e-3

struct ExperimentReport {
  AqeccParams params;
  uint64_t seed = 0;
  SoundnessResult eps;   // measured authentication soundness (exact or bound)
  double bound = 0.0;    // 2 n^2 eps
  std::vector<StrategyRun> runs;
  // Aggregates: totals over Monte Carlo runs; upper_confidence is the worst
  // per-run upper bound (the quantity the verdict compares against `bound`).
  uint64_t trials = 0;
  uint64_t failures = 0;
  double failure_rate = 0.0;
  double upper_confidence = 0.0;
  bool pass = false;  // every run's upper bound within `bound`
  SizeReport sizes;
};

// Runs `trials` independent trials of one strategy against one corruption
// set. Per-trial randomness is split from the master seed by counters, so
// any execution order yields the identical report. The pipeline defaults to
// the strategy's primary target.
ExperimentReport run_trials(const AqeccParams& params, const Strategy& strategy,
                            const std::vector<size_t>& b, uint64_t trials, uint64_t seed,
                            std::optional<Pipeline> pipeline = std::nullopt);

// Failure counting alone: the same per-trial derivation as run_trials but
// without the soundness measurement or theorem bound, for callers with their
// own pass criterion. `pass` is left false; compare failures/upper_bound
// against your target.
StrategyRun sample_failures(const AqeccParams& params, const Strategy& strategy,
                            const std::vector<size_t>& b, uint64_t trials, uint64_t seed,
                            std::optional<Pipeline> pipeline = std::nullopt);

struct SuiteEntry {
  std::string strategy;
  std::vector<size_t> b;                      // empty + fixed-set strategy: filled in
  std::optional<Pipeline> pipeline;           // default: the strategy's primary
  bool exhaustive = false;                    // use the exact oracle instead of trials
};

// One report covering several runs; the verdict requires every run to pass.
ExperimentReport run_suite(const AqeccParams& params, const std::vector<SuiteEntry>& entries,
                           uint64_t trials, uint64_t seed);

struct OracleResult {
  ExactProb prob;
  uint64_t classical_combos = 0;  // enumerated verification-key assignments
  uint64_t classical_aborts = 0;  // of those, reconstruction aborts
  uint64_t quantum_keys = 0;      // enumerated register keys
  uint64_t quantum_bad = 0;       // of those, decode failures given true keys
};

// Exact failure probability of one deterministic strategy against one
// corruption set, by exhausting the randomness the outcome depends on:
//
//   - the corrupted register's authentication key ranges over the whole
//     symplectic group (pads never enter the accept/residual predicates);
//   - the verification keys honest registers hold for the corrupted share
//     range over the MAC field (the tag comparison is constant in each
//     key's additive part, which cancels);
//   - every remaining coin is provably outcome-irrelevant: honest shares
//     always clear the tag vote, so the honest polynomial pins
//     reconstruction to abort-or-true-keys, making the classical and
//     quantum stages independent with at most one corruption.
//
// The reductions are enforced, not assumed: the attack must produce
// identical tampering on two unrelated honest codewords, the full outcome
// pattern must repeat across two unrelated assignments of all "irrelevant"
// coins, and any reconstruction yielding keys other than the truth aborts
// the oracle. Violations and oversized spaces throw; use run_trials then.
OracleResult exhaustive_oracle(const AqeccParams& params, const Strategy& strategy,
                               const std::vector<size_t>& b,
                               std::optional<Pipeline> pipeline = std::nullopt);

}  // namespace aqecc
