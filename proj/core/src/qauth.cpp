#include "aqecc/qauth.hpp"

#include <algorithm>
#include <stdexcept>

#include "aqecc/field.hpp"
#include "aqecc/stats.hpp"

namespace aqecc {

void QAuthParams::validate() const {
  if (m == 0) throw std::invalid_argument("QAuthParams: need at least one message qudit");
  if (s == 0) throw std::invalid_argument("QAuthParams: need at least one trap qudit");
  if (!is_prime(p)) throw std::invalid_argument("QAuthParams: p must be prime");
}

QAuthKey qauth_keygen(const QAuthParams& params, Rng& rng) {
  params.validate();
  const size_t w = params.wires();
  return QAuthKey{params, random_symplectic(w, params.p, rng), random_pauli(w, params.p, rng)};
}

namespace {

// Accept iff the x-part of the undone deviation vanishes on every trap wire
// (computational-basis trap measurements are blind to z-type deviations).
bool traps_clean(const PauliVector& e, size_t m) {
  for (size_t i = m; i < e.qudits(); ++i)
    if (e.x[i] != 0) return false;
  return true;
}

PauliVector message_part(const PauliVector& e, size_t m) {
  std::vector<size_t> pos(m);
  for (size_t i = 0; i < m; ++i) pos[i] = i;
  return e.restricted(pos);
}

TransmitResult classify(const SymplecticMatrix& clifford_inv, const PauliVector& attack,
                        size_t m) {
  const PauliVector eprime = clifford_inv.apply(attack);
  return TransmitResult{traps_clean(eprime, m), message_part(eprime, m)};
}

}  // namespace

TransmitResult qauth_transmit(const QAuthKey& key, const AuthFrame& attack) {
  key.params.validate();
  const size_t w = key.params.wires();
  if (key.clifford.qudits() != w || key.clifford.modulus() != key.params.p ||
      key.pad.qudits() != w || key.pad.p != key.params.p)
    throw std::invalid_argument("qauth_transmit: key does not match its params");
  if (attack.error.qudits() != w || attack.error.p != key.params.p)
    throw std::invalid_argument("qauth_transmit: attack shape mismatch");
  return classify(key.clifford.inverse(), attack.error, key.params.m);
}

SoundnessResult qauth_soundness_oracle(const QAuthParams& params) {
  params.validate();
  const size_t w = params.wires();
  const uint64_t attacks = pauli_count(w, params.p) - 1;
  const uint64_t order = symplectic_group_order(w, params.p);
  if (attacks > (uint64_t(1) << 20) || order > 400000000ull / attacks)
    throw std::invalid_argument(
        "qauth_soundness_oracle: instance too large; use qauth_soundness_sampled");

  std::vector<PauliVector> attack_vecs;
  attack_vecs.reserve(attacks);
  for (uint64_t a = 1; a <= attacks; ++a)
    attack_vecs.push_back(pauli_from_index(w, params.p, a));

  std::vector<uint64_t> bad(attacks, 0);
  enumerate_symplectic(w, params.p, [&](const SymplecticMatrix& c) {
    const SymplecticMatrix cinv = c.inverse();
    for (uint64_t a = 0; a < attacks; ++a) {
      const TransmitResult r = classify(cinv, attack_vecs[a], params.m);
      if (r.accept && !r.residual.is_identity()) ++bad[a];
    }
  });

  SoundnessResult res;
  res.exact = true;
  res.per_attack_bad = std::move(bad);
  res.keys_count = order;
  res.denominator = order;
  res.numerator = 0;
  for (uint64_t b : res.per_attack_bad) res.numerator = std::max(res.numerator, b);
  res.epsilon = double(res.numerator) / double(res.denominator);
  return res;
}

SoundnessResult qauth_soundness_sampled(const QAuthParams& params, uint64_t keys_per_probe,
                                        uint64_t seed, double level) {
  params.validate();
  if (keys_per_probe == 0)
    throw std::invalid_argument("qauth_soundness_sampled: need at least one sample");
  const size_t w = params.wires();

  // Deterministic probe spread: message-only, trap-only, and mixed attacks.
  // Transitivity of the symplectic group on nonzero vectors makes every
  // nonidentity attack share one soundness value, so probes guard against
  // implementation asymmetries rather than searching the attack space.
  std::vector<PauliVector> probes;
  auto add_probe = [&](auto&& fill) {
    PauliVector e = PauliVector::identity(w, params.p);
    fill(e);
    probes.push_back(std::move(e));
  };
  add_probe([&](PauliVector& e) { e.x[0] = 1; });
  add_probe([&](PauliVector& e) { e.z[0] = 1; });
  add_probe([&](PauliVector& e) { e.x[0] = e.z[0] = 1; });
  add_probe([&](PauliVector& e) { e.x[params.m] = 1; });
  add_probe([&](PauliVector& e) { e.x[params.m] = e.z[params.m] = 1; });
  add_probe([&](PauliVector& e) { e.x[0] = e.x[params.m] = 1; });

  // Split the one-sided risk across probes so max(per-probe bounds) covers
  // all of them jointly at `level`.
  const double per_probe_level = 1.0 - (1.0 - level) / double(probes.size());

  Rng rng = Rng(seed).child(0);
  SoundnessResult res;
  res.exact = false;
  res.keys_count = keys_per_probe;
  res.confidence = level;
  res.denominator = keys_per_probe;
  // One key draw serves every probe: the per-probe counts stay binomial and
  // the union bound over probes does not need independence between them.
  std::vector<uint64_t> bad(probes.size(), 0);
  for (uint64_t k = 0; k < keys_per_probe; ++k) {
    const SymplecticMatrix c = random_symplectic(w, params.p, rng);
    const SymplecticMatrix cinv = c.inverse();
    for (size_t i = 0; i < probes.size(); ++i) {
      const TransmitResult r = classify(cinv, probes[i], params.m);
      if (r.accept && !r.residual.is_identity()) ++bad[i];
    }
  }
  for (uint64_t b : bad) {
    res.per_attack_bad.push_back(b);
    res.numerator = std::max(res.numerator, b);
    res.epsilon = std::max(res.epsilon, clopper_pearson_upper(b, keys_per_probe, per_probe_level));
  }
  return res;
}

SoundnessResult qauth_soundness(const QAuthParams& params, uint64_t seed) {
  try {
    return qauth_soundness_oracle(params);
  } catch (const std::invalid_argument&) {
    return qauth_soundness_sampled(params, 1000000, seed);
  }
}

}  // namespace aqecc
