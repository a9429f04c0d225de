#pragma once

#include <cstdint>
#include <vector>

#include "aqecc/pauli.hpp"
#include "aqecc/rng.hpp"

namespace aqecc {

// Trap-based quantum authentication in Pauli-frame semantics. A register
// carries m message qudits followed by s trap qudits prepared in |0>; the
// key is a uniform Clifford (symplectic matrix) on all m+s qudits plus a
// uniform Pauli pad. Verification undoes the Clifford, measures the traps in
// the computational basis, and accepts iff no trap was flipped.
struct QAuthParams {
  size_t m = 1;   // message qudits per register
  size_t s = 1;   // trap qudits
  uint64_t p = 2; // qudit dimension (prime)

  size_t wires() const { return m + s; }
  void validate() const;
};

struct QAuthKey {
  QAuthParams params;
  SymplecticMatrix clifford;
  PauliVector pad;
};

// Pauli deviation applied to an authenticated register in transit.
struct AuthFrame {
  PauliVector error;
};

QAuthKey qauth_keygen(const QAuthParams& params, Rng& rng);

struct TransmitResult {
  bool accept = false;
  PauliVector residual;  // effective Pauli on the m message qudits
};

// End-to-end transmit under a Pauli attack: the effective deviation after
// undoing the Clifford is E' = clifford^{-1}(attack); accept iff the x-part
// of E' vanishes on every trap position (a trap measurement sees only x-type
// deviations), residual = E' restricted to the message positions. The pad
// contributes only a global phase to both predicates and is ignored here; it
// is part of the key because the composed scheme encrypts with it.
TransmitResult qauth_transmit(const QAuthKey& key, const AuthFrame& attack);

struct SoundnessResult {
  bool exact = false;
  double epsilon = 0.0;  // exact max, or one-sided upper confidence bound
  // Exact mode: epsilon = numerator / denominator, per_attack_bad[i] counts
  // accepting keys with nonidentity residual for attack index i+1.
  uint64_t numerator = 0;
  uint64_t denominator = 0;
  std::vector<uint64_t> per_attack_bad;
  uint64_t keys_count = 0;  // group order, or samples per probe attack
  double confidence = 1.0;  // sampled mode: overall one-sided level
};

// Exact soundness error: max over nonidentity Pauli attacks E of
// Pr_key[accept and residual != identity], by full enumeration of Sp(2w, p)
// against every attack. Because Sp(2w, p) is transitive on nonzero vectors,
// E' is uniform over them for any fixed E != I, so every attack shares the
// value (p^{2m+s} - p^s) / (p^{2(m+s)} - 1); the oracle measures rather than
// assumes this, and tests cross-check the equality. Throws when
// |Sp| * #attacks exceeds desk scale — use qauth_soundness_sampled then.
SoundnessResult qauth_soundness_oracle(const QAuthParams& params);

// Sampled fallback: a fixed spread of probe attacks, keys_per_probe sampled
// keys each, per-probe exact binomial upper bounds at level split so the
// reported maximum covers all probes jointly at `level`.
SoundnessResult qauth_soundness_sampled(const QAuthParams& params, uint64_t keys_per_probe,
                                        uint64_t seed, double level = 0.999);

// Exact when feasible, sampled otherwise.
SoundnessResult qauth_soundness(const QAuthParams& params, uint64_t seed);

}  // namespace aqecc
