#include "aqecc/scheme.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "aqecc/field.hpp"

namespace aqecc {
namespace {

std::vector<size_t> canonical_set(std::vector<size_t> b, size_t n, size_t max_size,
                                  const char* what) {
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end())
    throw std::invalid_argument(std::string(what) + ": repeated register");
  if (!b.empty() && b.back() >= n)
    throw std::invalid_argument(std::string(what) + ": register index out of range");
  if (b.size() > max_size)
    throw std::invalid_argument(std::string(what) + ": touches more registers than tolerated");
  return b;
}

// Shared tail of both decoders: place each kept register's residual at its
// code position, treat the discarded set as erased, and read off the logical
// class. Aborts past the erasure budget, on a kept-confined check failure,
// or when no erased-supported explanation of the syndrome exists.
DecodeOutcome finish_decode(const CssCode& code, const AqeccParams& params,
                            const std::map<size_t, PauliVector>& kept_residuals,
                            const std::vector<size_t>& erased, DecodeTrace trace) {
  DecodeOutcome out;
  out.residual = PauliVector::identity(params.k(), params.p);
  if (erased.size() > params.t) {
    trace.too_many_rejected = true;
    out.trace = std::move(trace);
    return out;
  }
  PauliVector e = PauliVector::identity(params.n, params.p);
  std::vector<size_t> kept;
  for (size_t i = 0; i < params.n; ++i)
    if (!std::binary_search(erased.begin(), erased.end(), i)) kept.push_back(i);
  for (size_t i : kept) {
    const PauliVector& r = kept_residuals.at(i);
    e.x[i] = r.x[0];
    e.z[i] = r.z[0];
  }
  FrameState frame{e};
  if (!restricted_consistency(code, frame, kept)) {
    trace.restricted_inconsistent = true;
    out.trace = std::move(trace);
    return out;
  }
  auto cls = erasure_decode(code, frame, erased);
  if (!cls) {
    trace.erasure_inconsistent = true;
    out.trace = std::move(trace);
    return out;
  }
  out.tag = OutcomeTag::recovered;
  out.residual = *cls;
  out.trace = std::move(trace);
  return out;
}

}  // namespace

void AqeccParams::validate() const {
  if (n == 0 || 2 * t >= n) throw std::invalid_argument("AqeccParams: need 2t < n");
  if (!is_prime(p)) throw std::invalid_argument("AqeccParams: p must be prime");
  if (p < n) throw std::invalid_argument("AqeccParams: p must be at least n");
  qauth.validate();
  if (qauth.m != 1) throw std::invalid_argument("AqeccParams: one message qudit per register");
  if (qauth.p != p) throw std::invalid_argument("AqeccParams: authentication field must match p");
  etss.validate();
  if (etss.n != n) throw std::invalid_argument("AqeccParams: share count must match n");
  if (etss.d != t + 1) throw std::invalid_argument("AqeccParams: share threshold must be t+1");
  if (etss.p_share < p)
    throw std::invalid_argument("AqeccParams: share field must embed GF(p) symbols");
  if (etss.secret_len != n * serialized_key_symbols(qauth))
    throw std::invalid_argument("AqeccParams: secret length must fit the n serialized keys");
}

size_t serialized_key_symbols(const QAuthParams& params) {
  size_t w = params.wires();
  return 4 * w * w + 2 * w;
}

std::vector<uint64_t> serialize_key(const QAuthKey& key) {
  size_t w = key.params.wires();
  std::vector<uint64_t> out;
  out.reserve(serialized_key_symbols(key.params));
  const Matrix& m = key.clifford.mat();
  for (size_t r = 0; r < 2 * w; ++r)
    for (size_t c = 0; c < 2 * w; ++c) out.push_back(m.at(r, c));
  for (size_t i = 0; i < w; ++i) out.push_back(key.pad.x[i]);
  for (size_t i = 0; i < w; ++i) out.push_back(key.pad.z[i]);
  return out;
}

QAuthKey deserialize_key(const QAuthParams& params, const std::vector<uint64_t>& symbols) {
  size_t w = params.wires();
  if (symbols.size() != serialized_key_symbols(params))
    throw std::invalid_argument("deserialize_key: wrong symbol count");
  for (uint64_t v : symbols)
    if (v >= params.p) throw std::invalid_argument("deserialize_key: symbol out of field range");
  Matrix m(2 * w, 2 * w, params.p);
  size_t pos = 0;
  for (size_t r = 0; r < 2 * w; ++r)
    for (size_t c = 0; c < 2 * w; ++c) m.set(r, c, symbols[pos++]);
  PauliVector pad = PauliVector::identity(w, params.p);
  for (size_t i = 0; i < w; ++i) pad.x[i] = symbols[pos++];
  for (size_t i = 0; i < w; ++i) pad.z[i] = symbols[pos++];
  // SymplecticMatrix rejects non-symplectic contents, so a tampered or
  // misreconstructed key surfaces here as an exception.
  return QAuthKey{params, SymplecticMatrix(m), pad};
}

std::vector<uint64_t> serialize_key_vector(const std::vector<QAuthKey>& keys) {
  std::vector<uint64_t> out;
  for (const QAuthKey& k : keys) {
    std::vector<uint64_t> one = serialize_key(k);
    out.insert(out.end(), one.begin(), one.end());
  }
  return out;
}

std::vector<QAuthKey> deserialize_key_vector(const AqeccParams& params,
                                             const std::vector<uint64_t>& symbols) {
  size_t per = serialized_key_symbols(params.qauth);
  if (symbols.size() != params.n * per)
    throw std::invalid_argument("deserialize_key_vector: wrong symbol count");
  std::vector<QAuthKey> keys;
  keys.reserve(params.n);
  for (size_t i = 0; i < params.n; ++i) {
    std::vector<uint64_t> one(symbols.begin() + static_cast<ptrdiff_t>(i * per),
                              symbols.begin() + static_cast<ptrdiff_t>((i + 1) * per));
    keys.push_back(deserialize_key(params.qauth, one));
  }
  return keys;
}

AqeccParams make_aqecc_params(size_t n, size_t t, uint64_t p, size_t traps, uint64_t p_share,
                              uint64_t p_mac) {
  AqeccParams params;
  params.n = n;
  params.t = t;
  params.p = p;
  params.qauth = QAuthParams{1, traps, p};
  size_t secret_len = n * serialized_key_symbols(params.qauth);
  if (p_share == 0) p_share = next_prime(std::max<uint64_t>(p, n + 1));
  if (p_mac == 0) {
    uint64_t l = secret_len + 1;
    p_mac = next_prime(std::max<uint64_t>(p_share, 50 * l));
  }
  params.etss = EtssParams{n, t + 1, p_share, p_mac, secret_len};
  params.validate();
  return params;
}

AqeccCodeword encode_from(const AqeccParams& params, const std::vector<QAuthKey>& keys,
                          const EtssRandomness& r) {
  params.validate();
  if (keys.size() != params.n) throw std::invalid_argument("encode_from: need one key per register");
  std::vector<EtssShare> shares = etss_share_from(serialize_key_vector(keys), params.etss, r);
  AqeccCodeword cw;
  cw.params = params;
  cw.registers.resize(params.n);
  for (size_t i = 0; i < params.n; ++i) {
    cw.registers[i].frame.error = PauliVector::identity(params.qauth.wires(), params.p);
    cw.registers[i].classical = shares[i];
  }
  cw.truth.keys = keys;
  cw.truth.honest_classical = shares;
  return cw;
}

AqeccCodeword encode(const AqeccParams& params, Rng& rng) {
  params.validate();
  std::vector<QAuthKey> keys;
  keys.reserve(params.n);
  for (size_t i = 0; i < params.n; ++i) keys.push_back(qauth_keygen(params.qauth, rng));
  EtssRandomness r = draw_etss_randomness(params.etss, rng);
  return encode_from(params, keys, r);
}

AdversaryView adversary_view(const AqeccCodeword& cw, const std::vector<size_t>& b) {
  AdversaryView view;
  view.params = cw.params;
  view.b = canonical_set(b, cw.params.n, cw.params.t, "adversary_view");
  for (size_t i : view.b) view.classical[i] = cw.registers[i].classical;
  return view;
}

AqeccCodeword apply_attack(const AqeccCodeword& cw, const AttackScript& script) {
  AdversaryView view = adversary_view(cw, script.b);
  AttackEffect effect = script.action ? script.action(view) : AttackEffect{};
  AqeccCodeword out = cw;
  const AqeccParams& params = cw.params;
  uint64_t ps = params.etss.p_share;
  uint64_t pm = params.etss.p_mac;
  for (const auto& [reg, tamper] : effect.tampers) {
    if (!std::binary_search(view.b.begin(), view.b.end(), reg))
      throw std::invalid_argument("apply_attack: tamper outside the corrupted set");
    AqeccRegister& target = out.registers[reg];
    if (!tamper.share_delta.empty()) {
      if (tamper.share_delta.size() != target.classical.shamir.values.size())
        throw std::invalid_argument("apply_attack: share delta has wrong length");
      for (size_t s = 0; s < tamper.share_delta.size(); ++s) {
        if (tamper.share_delta[s] >= ps)
          throw std::invalid_argument("apply_attack: share delta out of field range");
        target.classical.shamir.values[s] =
            addm(target.classical.shamir.values[s], tamper.share_delta[s], ps);
      }
    }
    for (const auto& [slot, delta] : tamper.key_delta) {
      auto it = target.classical.verify_keys.find(slot);
      if (it == target.classical.verify_keys.end())
        throw std::invalid_argument("apply_attack: key delta for an unknown counterpart");
      if (delta.first >= pm || delta.second >= pm)
        throw std::invalid_argument("apply_attack: key delta out of field range");
      it->second.a = addm(it->second.a, delta.first, pm);
      it->second.b = addm(it->second.b, delta.second, pm);
    }
    for (const auto& [slot, delta] : tamper.tag_delta) {
      auto it = target.classical.own_tags.find(slot);
      if (it == target.classical.own_tags.end())
        throw std::invalid_argument("apply_attack: tag delta for an unknown counterpart");
      if (delta >= pm) throw std::invalid_argument("apply_attack: tag delta out of field range");
      it->second.value = addm(it->second.value, delta, pm);
    }
    if (tamper.pauli.qudits() != 0) {
      if (tamper.pauli.qudits() != params.qauth.wires() || tamper.pauli.p != params.p)
        throw std::invalid_argument("apply_attack: pauli tamper has wrong shape");
      target.frame.error.add(tamper.pauli);
    }
  }
  return out;
}

ClassicalDecodeResult decode_classical(const AqeccParams& params,
                                       const std::vector<AqeccRegister>& registers) {
  if (registers.size() != params.n)
    throw std::invalid_argument("decode_classical: wrong register count");
  std::vector<EtssShare> slots;
  slots.reserve(params.n);
  for (const AqeccRegister& r : registers) slots.push_back(r.classical);
  EtssResult res = etss_reconstruct(slots, params.etss);
  ClassicalDecodeResult out;
  for (size_t slot : res.discarded) out.trace.invalid_shares.push_back(slot - 1);
  if (!res.ok) {
    out.trace.share_inconsistent = res.inconsistent;
    out.trace.share_underflow = !res.inconsistent;
    return out;
  }
  try {
    out.keys = deserialize_key_vector(params, res.secret);
  } catch (const std::logic_error&) {
    out.trace.key_decode_failed = true;
    return out;
  }
  out.trace.keys_decoded = true;
  size_t per = serialized_key_symbols(params.qauth);
  for (size_t i = 0; i < params.n; ++i)
    out.trace.reconstructed_key_symbols.emplace_back(
        res.secret.begin() + static_cast<ptrdiff_t>(i * per),
        res.secret.begin() + static_cast<ptrdiff_t>((i + 1) * per));
  out.ok = true;
  return out;
}

DecodeOutcome decode_quantum(const AqeccParams& params,
                             const std::vector<AqeccRegister>& registers,
                             const std::vector<QAuthKey>& keys, DecodeTrace trace) {
  if (registers.size() != params.n || keys.size() != params.n)
    throw std::invalid_argument("decode_quantum: wrong register or key count");
  CssCode code = build_polynomial_code(params.n, params.t, params.p);
  std::map<size_t, PauliVector> kept_residuals;
  std::vector<size_t> rejected;
  for (size_t i = 0; i < params.n; ++i) {
    TransmitResult tr = qauth_transmit(keys[i], registers[i].frame);
    if (tr.accept)
      kept_residuals.emplace(i, tr.residual);
    else
      rejected.push_back(i);
  }
  trace.rejected_registers = rejected;
  return finish_decode(code, params, kept_residuals, rejected, std::move(trace));
}

DecodeOutcome decode(const AqeccParams& params, const std::vector<AqeccRegister>& registers) {
  ClassicalDecodeResult classical = decode_classical(params, registers);
  if (!classical.ok) {
    DecodeOutcome out;
    out.residual = PauliVector::identity(params.k(), params.p);
    out.trace = std::move(classical.trace);
    return out;
  }
  return decode_quantum(params, registers, classical.keys, std::move(classical.trace));
}

DecodeOutcome decode(const AqeccCodeword& cw) { return decode(cw.params, cw.registers); }

// ---------------------------------------------------------------------------
// Warm-up scheme.

namespace {

// Positions of key h's two copies, as (register, slot-within-register).
std::array<std::pair<size_t, size_t>, 2> warmup_owners(size_t h) {
  std::array<std::pair<size_t, size_t>, 2> owners{};
  size_t found = 0;
  for (size_t r = 0; r < 3; ++r)
    for (size_t c = 0; c < 2; ++c)
      if (kWarmupLayout[r][c] == h) owners[found++] = {r, c};
  if (found != 2) throw std::logic_error("warmup_owners: layout must hold each key twice");
  return owners;
}

// Slot within register r that stores key h; throws if r does not hold it.
size_t warmup_slot(size_t r, size_t h) {
  for (size_t c = 0; c < 2; ++c)
    if (kWarmupLayout[r][c] == h) return c;
  throw std::logic_error("warmup_slot: register does not hold that key");
}

std::optional<QAuthKey> try_deserialize(const QAuthParams& params,
                                        const std::vector<uint64_t>& symbols) {
  try {
    return deserialize_key(params, symbols);
  } catch (const std::logic_error&) {
    return std::nullopt;
  }
}

DecodeOutcome warmup_abort(const AqeccParams& params, DecodeTrace trace) {
  DecodeOutcome out;
  out.residual = PauliVector::identity(params.k(), params.p);
  out.trace = std::move(trace);
  return out;
}

}  // namespace

WarmupCodeword encode3_warmup_from(const AqeccParams& params, const std::vector<QAuthKey>& keys) {
  params.validate();
  if (params.n != 3 || params.t != 1)
    throw std::invalid_argument("encode3_warmup: fixed three-register, one-error scheme");
  if (keys.size() != 3) throw std::invalid_argument("encode3_warmup: need three keys");
  WarmupCodeword cw;
  cw.params = params;
  cw.registers.resize(3);
  for (size_t r = 0; r < 3; ++r) {
    cw.registers[r].frame.error = PauliVector::identity(params.qauth.wires(), params.p);
    for (size_t c = 0; c < 2; ++c)
      cw.registers[r].key_copies[c] = serialize_key(keys[kWarmupLayout[r][c]]);
  }
  cw.truth_keys = keys;
  return cw;
}

WarmupCodeword encode3_warmup(const AqeccParams& params, Rng& rng) {
  params.validate();
  std::vector<QAuthKey> keys;
  for (size_t i = 0; i < 3; ++i) keys.push_back(qauth_keygen(params.qauth, rng));
  return encode3_warmup_from(params, keys);
}

WarmupCodeword apply_warmup_attack(const WarmupCodeword& cw, const WarmupScript& script) {
  const AqeccParams& params = cw.params;
  std::vector<size_t> b = canonical_set(script.b, 3, params.t, "apply_warmup_attack");
  WarmupView view;
  view.params = params;
  view.b = b;
  for (size_t i : b) view.copies[i] = cw.registers[i].key_copies;
  std::map<size_t, WarmupTamper> tampers =
      script.action ? script.action(view) : std::map<size_t, WarmupTamper>{};
  WarmupCodeword out = cw;
  for (const auto& [reg, tamper] : tampers) {
    if (!std::binary_search(b.begin(), b.end(), reg))
      throw std::invalid_argument("apply_warmup_attack: tamper outside the corrupted set");
    WarmupRegister& target = out.registers[reg];
    for (size_t c = 0; c < 2; ++c) {
      const std::vector<uint64_t>& delta = tamper.copy_delta[c];
      if (delta.empty()) continue;
      if (delta.size() != target.key_copies[c].size())
        throw std::invalid_argument("apply_warmup_attack: copy delta has wrong length");
      for (size_t s = 0; s < delta.size(); ++s) {
        if (delta[s] >= params.p)
          throw std::invalid_argument("apply_warmup_attack: copy delta out of field range");
        target.key_copies[c][s] = addm(target.key_copies[c][s], delta[s], params.p);
      }
    }
    if (tamper.pauli.qudits() != 0) {
      if (tamper.pauli.qudits() != params.qauth.wires() || tamper.pauli.p != params.p)
        throw std::invalid_argument("apply_warmup_attack: pauli tamper has wrong shape");
      target.frame.error.add(tamper.pauli);
    }
  }
  return out;
}

DecodeOutcome decode3_warmup(const WarmupCodeword& cw) {
  const AqeccParams& params = cw.params;
  if (params.n != 3 || cw.registers.size() != 3)
    throw std::invalid_argument("decode3_warmup: need exactly three registers");
  CssCode code = build_polynomial_code(3, 1, params.p);
  DecodeTrace trace;

  auto copy_of = [&](size_t reg, size_t key) -> const std::vector<uint64_t>& {
    return cw.registers[reg].key_copies[warmup_slot(reg, key)];
  };

  std::vector<size_t> disputed;
  for (size_t h = 0; h < 3; ++h) {
    auto owners = warmup_owners(h);
    if (cw.registers[owners[0].first].key_copies[owners[0].second] !=
        cw.registers[owners[1].first].key_copies[owners[1].second])
      disputed.push_back(h);
  }

  auto verify = [&](size_t reg, const QAuthKey& key) {
    return qauth_transmit(key, cw.registers[reg].frame);
  };

  if (disputed.empty()) {
    // Every copy agrees, so each key reads off either owner; verify all
    // three registers and erase whatever rejects.
    std::map<size_t, PauliVector> kept;
    std::vector<size_t> erased;
    for (size_t r = 0; r < 3; ++r) {
      auto owners = warmup_owners(r);
      auto key = try_deserialize(params.qauth, copy_of(owners[0].first, r));
      if (!key) {
        trace.key_decode_failed = true;
        return warmup_abort(params, std::move(trace));
      }
      TransmitResult tr = verify(r, *key);
      if (tr.accept)
        kept.emplace(r, tr.residual);
      else
        erased.push_back(r);
    }
    trace.rejected_registers = erased;
    return finish_decode(code, params, kept, erased, std::move(trace));
  }

  if (disputed.size() == 1) {
    // One key h in dispute: suspicion falls on its two holders i and j, and
    // register h — which stores the other two keys — is trusted for now.
    size_t h = disputed[0];
    auto owners = warmup_owners(h);
    size_t i = owners[0].first;
    size_t j = owners[1].first;
    auto key_i = try_deserialize(params.qauth, copy_of(h, i));
    auto key_j = try_deserialize(params.qauth, copy_of(h, j));
    if (!key_i || !key_j) {
      trace.key_decode_failed = true;
      return warmup_abort(params, std::move(trace));
    }
    TransmitResult tr_i = verify(i, *key_i);
    TransmitResult tr_j = verify(j, *key_j);
    if (tr_i.accept && tr_j.accept) {
      // No cheater identified; key h itself stays unknowable, so erase h.
      std::map<size_t, PauliVector> kept;
      kept.emplace(i, tr_i.residual);
      kept.emplace(j, tr_j.residual);
      std::vector<size_t> erased{h};
      trace.rejected_registers = erased;
      return finish_decode(code, params, kept, erased, std::move(trace));
    }
    if (tr_i.accept != tr_j.accept) {
      // The rejected holder is the cheater; the other holder is honest, so
      // its copy of k_h is genuine and brings register h back in.
      size_t bad = tr_i.accept ? j : i;
      size_t good = tr_i.accept ? i : j;
      const TransmitResult& tr_good = tr_i.accept ? tr_i : tr_j;
      auto key_h = try_deserialize(params.qauth, copy_of(good, h));
      if (!key_h) {
        trace.key_decode_failed = true;
        return warmup_abort(params, std::move(trace));
      }
      TransmitResult tr_h = verify(h, *key_h);
      std::map<size_t, PauliVector> kept;
      std::vector<size_t> erased{bad};
      kept.emplace(good, tr_good.residual);
      if (tr_h.accept) {
        kept.emplace(h, tr_h.residual);
      } else {
        erased.push_back(h);  // beyond the one-erasure budget; finish aborts
      }
      std::sort(erased.begin(), erased.end());
      trace.rejected_registers = erased;
      return finish_decode(code, params, kept, erased, std::move(trace));
    }
    // Both holders rejected: more corruption than the scheme tolerates.
    trace.rejected_registers = {i, j};
    trace.too_many_rejected = true;
    return warmup_abort(params, std::move(trace));
  }

  if (disputed.size() == 2) {
    // Two keys in dispute share exactly one holder — the cheater. The other
    // two registers are the disputed keys' indices; each one's genuine key
    // sits in the other honest register.
    size_t cheat = 3 - disputed[0] - disputed[1];
    size_t o1 = disputed[0];
    size_t o2 = disputed[1];
    auto key_1 = try_deserialize(params.qauth, copy_of(o2, o1));
    auto key_2 = try_deserialize(params.qauth, copy_of(o1, o2));
    if (!key_1 || !key_2) {
      trace.key_decode_failed = true;
      return warmup_abort(params, std::move(trace));
    }
    TransmitResult tr_1 = verify(o1, *key_1);
    TransmitResult tr_2 = verify(o2, *key_2);
    std::map<size_t, PauliVector> kept;
    std::vector<size_t> erased{cheat};
    if (tr_1.accept)
      kept.emplace(o1, tr_1.residual);
    else
      erased.push_back(o1);
    if (tr_2.accept)
      kept.emplace(o2, tr_2.residual);
    else
      erased.push_back(o2);
    std::sort(erased.begin(), erased.end());
    trace.rejected_registers = erased;
    return finish_decode(code, params, kept, erased, std::move(trace));
  }

  // Three disputes cannot come from a single corrupted register (it only
  // holds two copies); outside the contract, abort.
  trace.too_many_rejected = true;
  return warmup_abort(params, std::move(trace));
}

}  // namespace aqecc
