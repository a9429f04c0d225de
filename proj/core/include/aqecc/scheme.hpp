#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "aqecc/css_code.hpp"
#include "aqecc/qauth.hpp"
#include "aqecc/secret_sharing.hpp"

namespace aqecc {

// The composed code: a length-n polynomial CSS code whose n registers are
// individually authenticated (1 message qudit + s traps each), with the n
// authentication keys shared across the registers by the tag-augmented
// secret sharing layer. Corrects t adversarial register corruptions except
// with probability bounded by 2 n^2 epsilon, where epsilon is the measured
// authentication soundness error.
//
// Index conventions: registers are 0-based everywhere in this API; the
// secret-sharing layer's slot indices (Shamir evaluation points) are 1-based
// internally, slot = register + 1.
struct AqeccParams {
  size_t n = 0;
  size_t t = 0;
  uint64_t p = 2;      // code qudit dimension; also the authentication field
  QAuthParams qauth;   // per-register scheme: m = 1, s traps, same p
  EtssParams etss;     // n slots, threshold d = t+1, secret = serialized keys

  size_t d() const { return t + 1; }
  size_t k() const { return n - 2 * t; }
  void validate() const;
};

// Serialized authentication key: the symplectic matrix row-major, then the
// pad's x and z parts — (2w)^2 + 2w symbols over GF(p), w = 1 + traps.
size_t serialized_key_symbols(const QAuthParams& params);
std::vector<uint64_t> serialize_key(const QAuthKey& key);
QAuthKey deserialize_key(const QAuthParams& params, const std::vector<uint64_t>& symbols);
std::vector<uint64_t> serialize_key_vector(const std::vector<QAuthKey>& keys);
std::vector<QAuthKey> deserialize_key_vector(const AqeccParams& params,
                                             const std::vector<uint64_t>& symbols);

// Fills derived fields: qauth = (m=1, traps, p); share field = smallest
// prime covering both the key symbols and the n evaluation points; MAC field
// sized so the per-tag forgery bound L/p_mac stays at or below 1/50 unless
// explicitly pinned (tiny MAC fields make the tag layer vacuous once the
// secret is hundreds of symbols long).
AqeccParams make_aqecc_params(size_t n, size_t t, uint64_t p, size_t traps,
                              uint64_t p_share = 0, uint64_t p_mac = 0);

struct AqeccRegister {
  AuthFrame frame;     // Pauli deviation on this register's 1+s qudits
  EtssShare classical; // share + verification keys + tags stored here
};

// Harness-only section: what the encoder drew. decode() never receives it.
struct GroundTruth {
  std::vector<QAuthKey> keys;
  std::vector<EtssShare> honest_classical;
};

struct AqeccCodeword {
  AqeccParams params;
  std::vector<AqeccRegister> registers;
  GroundTruth truth;
};

AqeccCodeword encode(const AqeccParams& params, Rng& rng);
// Deterministic core for enumeration harnesses: all coins passed in.
AqeccCodeword encode_from(const AqeccParams& params, const std::vector<QAuthKey>& keys,
                          const EtssRandomness& r);

// Everything stored in the corrupted registers — the strongest view the
// model grants the adversary, and nothing else.
struct AdversaryView {
  AqeccParams params;
  std::vector<size_t> b;                  // corrupted registers
  std::map<size_t, EtssShare> classical;  // register -> its stored contents
};

// Additive tampering of one register. Deltas (rather than replacement
// values) keep library attacks' success events independent of the honest
// base values, which the exhaustive harness checks and exploits. Empty
// share_delta / missing map entries / empty pauli mean "leave unchanged".
struct RegisterTamper {
  std::vector<uint64_t> share_delta;  // over the share field, one per symbol
  std::map<size_t, std::pair<uint64_t, uint64_t>> key_delta;  // counterpart slot (1-based) -> (da, db)
  std::map<size_t, uint64_t> tag_delta;                       // counterpart slot (1-based) -> dtag
  PauliVector pauli;  // composed into the register's frame (1+s qudits)
  bool operator==(const RegisterTamper& o) const = default;
};

struct AttackEffect {
  std::map<size_t, RegisterTamper> tampers;  // register -> tamper, keys must lie in B
};

using AttackAction = std::function<AttackEffect(const AdversaryView&)>;

struct AttackScript {
  std::vector<size_t> b;  // |b| <= t
  AttackAction action;
};

AdversaryView adversary_view(const AqeccCodeword& cw, const std::vector<size_t>& b);
// Evaluates the script on B's view and installs the tampers; throws if the
// script touches registers outside B or |B| > t.
AqeccCodeword apply_attack(const AqeccCodeword& cw, const AttackScript& script);

enum class OutcomeTag { recovered, aborted };

struct DecodeTrace {
  std::vector<size_t> invalid_shares;      // registers failing the tag vote
  bool share_underflow = false;            // fewer than d valid shares
  bool share_inconsistent = false;         // valid shares off one polynomial
  bool key_decode_failed = false;          // recovered secret was not a key vector
  bool keys_decoded = false;
  std::vector<std::vector<uint64_t>> reconstructed_key_symbols;  // per register
  std::vector<size_t> rejected_registers;  // failed quantum verification
  bool too_many_rejected = false;          // more than t rejected
  bool restricted_inconsistent = false;    // kept set failed a confined check
  bool erasure_inconsistent = false;       // no erased-supported explanation
};

struct DecodeOutcome {
  OutcomeTag tag = OutcomeTag::aborted;
  PauliVector residual;  // logical Pauli on k qudits, meaningful iff recovered
  DecodeTrace trace;
};

struct ClassicalDecodeResult {
  bool ok = false;
  std::vector<QAuthKey> keys;
  DecodeTrace trace;
};

// Steps 1-2: tag vote with threshold n-1-t, discard invalid shares, abort on
// fewer than d survivors or any inconsistency, then rebuild the key vector.
// Whenever at most t registers were corrupted this either aborts or yields
// the original keys: the >= n-t honest shares are always valid and pin the
// unique consistent polynomial.
ClassicalDecodeResult decode_classical(const AqeccParams& params,
                                       const std::vector<AqeccRegister>& registers);

// Steps 3-4: verify each register under its key, discard rejections (abort
// past t), assemble the per-register residuals into a code-level Pauli
// frame, and erasure-decode the discarded set. Aborts when the kept content
// fails a check confined to it or the syndrome cannot be explained on the
// discarded positions (the two conditions are equivalent; both are checked).
DecodeOutcome decode_quantum(const AqeccParams& params,
                             const std::vector<AqeccRegister>& registers,
                             const std::vector<QAuthKey>& keys, DecodeTrace trace);

DecodeOutcome decode(const AqeccParams& params, const std::vector<AqeccRegister>& registers);
DecodeOutcome decode(const AqeccCodeword& cw);  // never reads cw.truth

// ---------------------------------------------------------------------------
// Warm-up three-register scheme: no secret sharing — each register carries
// plaintext copies of two other registers' keys, and reconstruction is a
// case analysis on which copies disagree.

// key_copies[c] holds a serialized key; kWarmupLayout[r][c] names which one.
inline constexpr size_t kWarmupLayout[3][2] = {{1, 2}, {0, 2}, {1, 0}};

struct WarmupRegister {
  AuthFrame frame;
  std::array<std::vector<uint64_t>, 2> key_copies;
};

struct WarmupCodeword {
  AqeccParams params;  // n == 3, t == 1
  std::vector<WarmupRegister> registers;
  std::vector<QAuthKey> truth_keys;  // harness-only
};

WarmupCodeword encode3_warmup(const AqeccParams& params, Rng& rng);
WarmupCodeword encode3_warmup_from(const AqeccParams& params, const std::vector<QAuthKey>& keys);

struct WarmupTamper {
  std::array<std::vector<uint64_t>, 2> copy_delta;  // over GF(p); empty = unchanged
  PauliVector pauli;                                // empty = identity
  bool operator==(const WarmupTamper& o) const = default;
};

struct WarmupView {
  AqeccParams params;
  std::vector<size_t> b;
  std::map<size_t, std::array<std::vector<uint64_t>, 2>> copies;
};

using WarmupAction = std::function<std::map<size_t, WarmupTamper>(const WarmupView&)>;

struct WarmupScript {
  std::vector<size_t> b;
  WarmupAction action;
};

WarmupCodeword apply_warmup_attack(const WarmupCodeword& cw, const WarmupScript& script);

// Case analysis on disagreeing key copies (at most one register is corrupt):
// no disagreement — verify everything; one disputed key — its two holders
// are suspect, verify them with keys taken from the agreeing register, and
// on a rejection identify the cheater and bring the third register back with
// the honest copy; two disputed keys — their common holder is the cheater,
// discard it and verify the rest with honestly-sourced copies. Any other
// pattern aborts.
DecodeOutcome decode3_warmup(const WarmupCodeword& cw);

}  // namespace aqecc
