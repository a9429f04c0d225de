#include "aqecc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace aqecc {
namespace {

constexpr uint64_t kClassicalBudget = 40000;    // verification-key assignments
constexpr uint64_t kQuantumBudget = 2000000;    // symplectic group order
constexpr uint64_t kOracleBaseSeedA = 0xA5EED;  // two unrelated assignments of
constexpr uint64_t kOracleBaseSeedB = 0xB5EED;  // all outcome-irrelevant coins

// Measured soundness is a pure function of the authentication parameters and
// seed; memoized because a suite asks for it once per run.
const SoundnessResult& soundness_for(const QAuthParams& params, uint64_t seed) {
  static std::map<std::tuple<size_t, size_t, uint64_t, uint64_t>, SoundnessResult> cache;
  auto key = std::make_tuple(params.m, params.s, params.p, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, qauth_soundness(params, seed)).first;
  return it->second;
}

std::vector<size_t> normalize_b(const AqeccParams& params, const Strategy& strategy,
                                std::vector<size_t> b) {
  std::sort(b.begin(), b.end());
  if (strategy.fixed_b) {
    std::vector<size_t> req = strategy.fixed_b(params);
    std::sort(req.begin(), req.end());
    if (b.empty()) return req;
    if (b != req)
      throw std::invalid_argument("strategy '" + strategy.name +
                                  "' only attacks one specific corruption set");
  }
  return b;
}

bool one_trial(const AqeccParams& params, const Strategy& strategy, Pipeline pipeline,
               const std::vector<size_t>& b, const Rng& trial_rng) {
  Rng enc = trial_rng.child(0);
  uint64_t attack_seed = trial_rng.child(1).seed();
  switch (pipeline) {
    case Pipeline::aqecc: {
      AqeccCodeword cw = encode(params, enc);
      AttackScript script = strategy.make_script(params, b, attack_seed);
      return is_failure(decode(apply_attack(cw, script)));
    }
    case Pipeline::warmup3: {
      WarmupCodeword cw = encode3_warmup(params, enc);
      WarmupScript script = strategy.make_warmup(params, b, attack_seed);
      return is_failure(decode3_warmup(apply_warmup_attack(cw, script)));
    }
    case Pipeline::bare: {
      auto [breq, e] = strategy.bare_attack(params);
      std::sort(breq.begin(), breq.end());
      if (b != breq) throw std::invalid_argument("bare pipeline: corruption set mismatch");
      CssCode code = build_polynomial_code(params.n, params.t, params.p);
      return !bare_syndrome_decode(code, FrameState{e}).is_identity();
    }
  }
  throw std::logic_error("one_trial: unknown pipeline");
}

StrategyRun run_one(const AqeccParams& params, const Strategy& strategy,
                    const std::vector<size_t>& b_in, std::optional<Pipeline> pipeline_opt,
                    bool exhaustive, uint64_t trials, const Rng& run_rng, double bound) {
  Pipeline pipeline = pipeline_opt.value_or(strategy.pipeline);
  if (!strategy.supports(pipeline))
    throw std::invalid_argument("strategy '" + strategy.name + "' does not target pipeline '" +
                                pipeline_name(pipeline) + "'");
  std::vector<size_t> b = normalize_b(params, strategy, b_in);
  StrategyRun run;
  run.strategy = strategy.name;
  run.pipeline = pipeline;
  run.b = b;
  if (exhaustive) {
    OracleResult orc = exhaustive_oracle(params, strategy, b, pipeline);
    run.exhaustive = true;
    run.exact = orc.prob;
    run.failure_rate = orc.prob.value();
    run.upper_bound = run.failure_rate;
  } else {
    if (trials == 0) throw std::invalid_argument("run_trials: need at least one trial");
    for (uint64_t trial = 0; trial < trials; ++trial)
      if (one_trial(params, strategy, pipeline, b, run_rng.child(trial))) ++run.failures;
    run.trials = trials;
    run.failure_rate = static_cast<double>(run.failures) / static_cast<double>(trials);
    run.upper_bound = clopper_pearson_upper(run.failures, trials, kConfidenceLevel);
  }
  run.pass = run.upper_bound <= bound;
  return run;
}

ExperimentReport finish_report(ExperimentReport report) {
  report.pass = true;
  for (const StrategyRun& run : report.runs) {
    report.trials += run.trials;
    report.failures += run.failures;
    report.upper_confidence = std::max(report.upper_confidence, run.upper_bound);
    report.pass = report.pass && run.pass;
  }
  if (report.trials > 0)
    report.failure_rate =
        static_cast<double>(report.failures) / static_cast<double>(report.trials);
  return report;
}

}  // namespace

ExactProb ExactProb::make(uint64_t num, uint64_t den) {
  if (den == 0) throw std::invalid_argument("ExactProb: zero denominator");
  uint64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return ExactProb{num / g, den / g};
}

bool is_failure(const DecodeOutcome& out) {
  return out.tag != OutcomeTag::recovered || !out.residual.is_identity();
}

SizeReport size_report(const AqeccParams& params) {
  SizeReport r;
  r.n = params.n;
  r.t = params.t;
  r.traps = params.qauth.s;
  r.qudits_per_register = params.qauth.wires();
  r.share_symbols = params.etss.secret_len;
  r.key_symbols = 2 * (params.n - 1);
  r.tag_symbols = params.n - 1;
  r.p = params.p;
  r.p_share = params.etss.p_share;
  r.p_mac = params.etss.p_mac;
  double share_bits = static_cast<double>(r.share_symbols) *
                      std::log2(static_cast<double>(r.p_share));
  double mac_bits = static_cast<double>(r.key_symbols + r.tag_symbols) *
                    std::log2(static_cast<double>(r.p_mac));
  r.classical_bits_per_register = share_bits + mac_bits;
  std::ostringstream f;
  f << "qudits per register: 1+s; classical bits per register: secret_len*log2(p_share) + "
       "3(n-1)*log2(p_mac); target scaling O(l + n log(1/eps)) with the share holding the n "
       "serialized keys and the keys+tags contributing the n log(1/eps) term";
  r.formula = f.str();
  return r;
}

StrategyRun sample_failures(const AqeccParams& params, const Strategy& strategy,
                            const std::vector<size_t>& b, uint64_t trials, uint64_t seed,
                            std::optional<Pipeline> pipeline) {
  params.validate();
  StrategyRun run =
      run_one(params, strategy, b, pipeline, false, trials, Rng(seed).child(0), 0.0);
  run.pass = false;  // no bound in play; the caller judges
  return run;
}

ExperimentReport run_trials(const AqeccParams& params, const Strategy& strategy,
                            const std::vector<size_t>& b, uint64_t trials, uint64_t seed,
                            std::optional<Pipeline> pipeline) {
  params.validate();
  ExperimentReport report;
  report.params = params;
  report.seed = seed;
  report.eps = soundness_for(params.qauth, seed);
  report.bound = 2.0 * static_cast<double>(params.n) * static_cast<double>(params.n) *
                 report.eps.epsilon;
  report.sizes = size_report(params);
  Rng master(seed);
  report.runs.push_back(
      run_one(params, strategy, b, pipeline, false, trials, master.child(0), report.bound));
  return finish_report(std::move(report));
}

ExperimentReport run_suite(const AqeccParams& params, const std::vector<SuiteEntry>& entries,
                           uint64_t trials, uint64_t seed) {
  params.validate();
  ExperimentReport report;
  report.params = params;
  report.seed = seed;
  report.eps = soundness_for(params.qauth, seed);
  report.bound = 2.0 * static_cast<double>(params.n) * static_cast<double>(params.n) *
                 report.eps.epsilon;
  report.sizes = size_report(params);
  Rng master(seed);
  for (size_t i = 0; i < entries.size(); ++i) {
    const SuiteEntry& e = entries[i];
    const Strategy& strategy = find_strategy(e.strategy);
    report.runs.push_back(run_one(params, strategy, e.b, e.pipeline, e.exhaustive, trials,
                                  master.child(i), report.bound));
  }
  return finish_report(std::move(report));
}

// ---------------------------------------------------------------------------
// Exhaustive oracle.

namespace {

struct BaseDraw {
  std::vector<QAuthKey> keys;
  EtssRandomness coins;
};

BaseDraw draw_base(const AqeccParams& params, uint64_t seed) {
  Rng rng(seed);
  BaseDraw base;
  for (size_t i = 0; i < params.n; ++i) base.keys.push_back(qauth_keygen(params.qauth, rng));
  base.coins = draw_etss_randomness(params.etss, rng);
  return base;
}

bool keys_equal(const std::vector<QAuthKey>& a, const std::vector<QAuthKey>& b) {
  return serialize_key_vector(a) == serialize_key_vector(b);
}

uint64_t checked_symplectic_order(size_t w, uint64_t p) {
  uint64_t order;
  try {
    order = symplectic_group_order(w, p);
  } catch (const std::overflow_error&) {
    throw std::invalid_argument(
        "exhaustive_oracle: symplectic group too large to enumerate; use run_trials");
  }
  if (order > kQuantumBudget)
    throw std::invalid_argument(
        "exhaustive_oracle: symplectic group too large to enumerate; use run_trials");
  return order;
}

OracleResult oracle_bare(const AqeccParams& params, const Strategy& strategy,
                         const std::vector<size_t>& b) {
  auto [breq, e] = strategy.bare_attack(params);
  std::sort(breq.begin(), breq.end());
  if (b != breq) throw std::invalid_argument("exhaustive_oracle: corruption set mismatch");
  CssCode code = build_polynomial_code(params.n, params.t, params.p);
  bool fail = !bare_syndrome_decode(code, FrameState{e}).is_identity();
  OracleResult out;
  out.prob = ExactProb::make(fail ? 1 : 0, 1);
  out.classical_combos = 1;
  out.quantum_keys = 1;
  out.quantum_bad = fail ? 1 : 0;
  return out;
}

OracleResult oracle_warmup(const AqeccParams& params, const Strategy& strategy,
                           const std::vector<size_t>& b) {
  if (b.size() > 1)
    throw std::invalid_argument("exhaustive_oracle: only corruption sets of size <= 1");
  size_t w = params.qauth.wires();
  uint64_t order = checked_symplectic_order(w, params.p);
  WarmupScript script = strategy.make_warmup(params, b, 0);

  std::array<std::vector<QAuthKey>, 2> base_keys;
  {
    Rng ra(kOracleBaseSeedA), rb(kOracleBaseSeedB);
    for (size_t i = 0; i < 3; ++i) {
      base_keys[0].push_back(qauth_keygen(params.qauth, ra));
      base_keys[1].push_back(qauth_keygen(params.qauth, rb));
    }
  }

  // The attack must not depend on what it sees in the corrupted registers.
  if (script.action) {
    auto view_of = [&](const std::vector<QAuthKey>& keys) {
      WarmupCodeword cw = encode3_warmup_from(params, keys);
      WarmupView view;
      view.params = params;
      view.b = b;
      for (size_t i : b) view.copies[i] = cw.registers[i].key_copies;
      return view;
    };
    if (script.action(view_of(base_keys[0])) != script.action(view_of(base_keys[1])))
      throw std::invalid_argument(
          "exhaustive_oracle: tampering depends on honest contents; not factorizable");
  }

  OracleResult out;
  if (b.empty()) {
    std::array<bool, 2> fails{};
    for (size_t base = 0; base < 2; ++base) {
      WarmupCodeword cw = encode3_warmup_from(params, base_keys[base]);
      fails[base] = is_failure(decode3_warmup(apply_warmup_attack(cw, script)));
    }
    if (fails[0] != fails[1])
      throw std::runtime_error("exhaustive_oracle: outcome varies with irrelevant coins");
    out.prob = ExactProb::make(fails[0] ? 1 : 0, 1);
    out.classical_combos = 1;
    out.quantum_keys = 1;
    out.quantum_bad = fails[0] ? 1 : 0;
    return out;
  }

  size_t r = b[0];
  std::array<std::vector<uint8_t>, 2> outcomes;
  std::array<uint64_t, 2> bad{};
  for (size_t base = 0; base < 2; ++base) {
    outcomes[base].reserve(order);
    enumerate_symplectic(w, params.p, [&](const SymplecticMatrix& c) {
      std::vector<QAuthKey> keys = base_keys[base];
      keys[r] = QAuthKey{params.qauth, c, base_keys[base][r].pad};
      WarmupCodeword cw = encode3_warmup_from(params, keys);
      bool fail = is_failure(decode3_warmup(apply_warmup_attack(cw, script)));
      outcomes[base].push_back(fail ? 1 : 0);
      bad[base] += fail ? 1 : 0;
    });
  }
  if (outcomes[0] != outcomes[1])
    throw std::runtime_error("exhaustive_oracle: outcome varies with irrelevant coins");
  out.prob = ExactProb::make(bad[0], order);
  out.classical_combos = 1;
  out.quantum_keys = order;
  out.quantum_bad = bad[0];
  return out;
}

OracleResult oracle_aqecc(const AqeccParams& params, const Strategy& strategy,
                          const std::vector<size_t>& b) {
  if (b.size() > 1)
    throw std::invalid_argument("exhaustive_oracle: only corruption sets of size <= 1");
  size_t w = params.qauth.wires();
  uint64_t pm = params.etss.p_mac;
  AttackScript script = strategy.make_script(params, b, 0);

  std::array<BaseDraw, 2> bases = {draw_base(params, kOracleBaseSeedA),
                                   draw_base(params, kOracleBaseSeedB)};

  // View-independence guard.
  std::array<AttackEffect, 2> effects;
  for (size_t base = 0; base < 2; ++base) {
    AqeccCodeword cw = encode_from(params, bases[base].keys, bases[base].coins);
    effects[base] = script.action ? script.action(adversary_view(cw, b)) : AttackEffect{};
  }
  if (effects[0].tampers != effects[1].tampers)
    throw std::invalid_argument(
        "exhaustive_oracle: tampering depends on honest contents; not factorizable");

  OracleResult out;
  if (b.empty()) {
    std::array<bool, 2> fails{};
    for (size_t base = 0; base < 2; ++base) {
      AqeccCodeword cw = encode_from(params, bases[base].keys, bases[base].coins);
      fails[base] = is_failure(decode(apply_attack(cw, script)));
    }
    if (fails[0] != fails[1])
      throw std::runtime_error("exhaustive_oracle: outcome varies with irrelevant coins");
    out.prob = ExactProb::make(fails[0] ? 1 : 0, 1);
    out.classical_combos = 1;
    out.quantum_keys = 1;
    return out;
  }

  size_t r = b[0];
  size_t c = r + 1;  // the corrupted register's share slot
  std::vector<size_t> honest_slots;
  for (size_t j = 1; j <= params.n; ++j)
    if (j != c) honest_slots.push_back(j);

  uint64_t combos = 1;
  for (size_t i = 0; i < honest_slots.size(); ++i) {
    if (combos > kClassicalBudget / pm)
      throw std::invalid_argument(
          "exhaustive_oracle: verification-key space too large; use run_trials");
    combos *= pm;
  }

  // Classical stage: enumerate the verification keys honest slots hold for
  // the corrupted share. Reconstruction must abort or return the true keys.
  std::array<std::vector<uint8_t>, 2> cl_outcomes;
  std::array<uint64_t, 2> cl_aborts{};
  for (size_t base = 0; base < 2; ++base) {
    cl_outcomes[base].reserve(combos);
    std::vector<uint64_t> avec(honest_slots.size(), 0);
    while (true) {
      EtssRandomness coins = bases[base].coins;
      for (size_t i = 0; i < honest_slots.size(); ++i)
        coins.keys[honest_slots[i] - 1][c - 1].a = avec[i];
      AqeccCodeword cw = encode_from(params, bases[base].keys, coins);
      AqeccCodeword tampered = apply_attack(cw, script);
      ClassicalDecodeResult cres = decode_classical(params, tampered.registers);
      if (!cres.ok) {
        cl_outcomes[base].push_back(1);
        ++cl_aborts[base];
      } else {
        if (!keys_equal(cres.keys, bases[base].keys))
          throw std::runtime_error(
              "exhaustive_oracle: reconstruction produced keys other than the truth; "
              "factorized accounting does not apply");
        cl_outcomes[base].push_back(0);
      }
      size_t i = 0;
      while (i < avec.size() && ++avec[i] == pm) avec[i++] = 0;
      if (i == avec.size()) break;
    }
  }
  if (cl_outcomes[0] != cl_outcomes[1])
    throw std::runtime_error("exhaustive_oracle: outcome varies with irrelevant coins");
  uint64_t aborts = cl_aborts[0];

  // Quantum stage, conditioned on true keys: enumerate the corrupted
  // register's authentication key against the attack's Pauli.
  uint64_t order = checked_symplectic_order(w, params.p);
  PauliVector delta = PauliVector::identity(w, params.p);
  auto it = effects[0].tampers.find(r);
  if (it != effects[0].tampers.end() && it->second.pauli.qudits() != 0) delta = it->second.pauli;

  std::vector<AqeccRegister> regs(params.n);
  for (size_t i = 0; i < params.n; ++i)
    regs[i].frame.error = PauliVector::identity(w, params.p);
  regs[r].frame.error = delta;

  std::array<std::vector<uint8_t>, 2> q_outcomes;
  std::array<uint64_t, 2> q_bad{};
  for (size_t base = 0; base < 2; ++base) {
    q_outcomes[base].reserve(order);
    enumerate_symplectic(w, params.p, [&](const SymplecticMatrix& cmat) {
      std::vector<QAuthKey> keys = bases[base].keys;
      keys[r] = QAuthKey{params.qauth, cmat, bases[base].keys[r].pad};
      bool fail = is_failure(decode_quantum(params, regs, keys, DecodeTrace{}));
      q_outcomes[base].push_back(fail ? 1 : 0);
      q_bad[base] += fail ? 1 : 0;
    });
  }
  if (q_outcomes[0] != q_outcomes[1])
    throw std::runtime_error("exhaustive_oracle: outcome varies with irrelevant coins");
  uint64_t qbad = q_bad[0];

  // P[fail] = P[classical abort] + P[true keys] * P[quantum fail | true keys]
  uint64_t num = aborts * order + (combos - aborts) * qbad;
  out.prob = ExactProb::make(num, combos * order);
  out.classical_combos = combos;
  out.classical_aborts = aborts;
  out.quantum_keys = order;
  out.quantum_bad = qbad;
  return out;
}

}  // namespace

OracleResult exhaustive_oracle(const AqeccParams& params, const Strategy& strategy,
                               const std::vector<size_t>& b_in,
                               std::optional<Pipeline> pipeline_opt) {
  params.validate();
  Pipeline pipeline = pipeline_opt.value_or(strategy.pipeline);
  if (!strategy.supports(pipeline))
    throw std::invalid_argument("exhaustive_oracle: strategy '" + strategy.name +
                                "' does not target pipeline '" + pipeline_name(pipeline) + "'");
  std::vector<size_t> b = normalize_b(params, strategy, b_in);
  switch (pipeline) {
    case Pipeline::bare:
      return oracle_bare(params, strategy, b);
    case Pipeline::warmup3:
      return oracle_warmup(params, strategy, b);
    case Pipeline::aqecc:
      return oracle_aqecc(params, strategy, b);
  }
  throw std::logic_error("exhaustive_oracle: unknown pipeline");
}

}  // namespace aqecc
