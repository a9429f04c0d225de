#include "aqecc/strategies.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqecc {
namespace {

std::vector<size_t> counterpart_slots(size_t n, size_t reg) {
  std::vector<size_t> slots;
  for (size_t j = 1; j <= n; ++j)
    if (j != reg + 1) slots.push_back(j);
  return slots;
}

std::vector<uint64_t> unit_delta(size_t len) {
  std::vector<uint64_t> d(len, 0);
  if (!d.empty()) d[0] = 1;
  return d;
}

PauliVector x_on_wire0(size_t w, uint64_t p, uint64_t amount) {
  PauliVector pv = PauliVector::identity(w, p);
  pv.x[0] = amount % p;
  if (pv.x[0] == 0) pv.x[0] = 1;
  return pv;
}

AttackScript empty_script(const std::vector<size_t>& b) {
  return AttackScript{b, [](const AdversaryView&) { return AttackEffect{}; }};
}

WarmupScript empty_warmup(const std::vector<size_t>& b) {
  return WarmupScript{b, [](const WarmupView&) { return std::map<size_t, WarmupTamper>{}; }};
}

Strategy make_none() {
  Strategy s;
  s.name = "none";
  s.stresses = "no tampering at all: the completeness baseline";
  s.pipeline = Pipeline::aqecc;
  s.make_script = [](const AqeccParams&, const std::vector<size_t>& b, uint64_t) {
    return empty_script(b);
  };
  s.make_warmup = [](const AqeccParams&, const std::vector<size_t>& b, uint64_t) {
    return empty_warmup(b);
  };
  s.bare_attack = [](const AqeccParams& params) {
    return std::make_pair(std::vector<size_t>{}, PauliVector::identity(params.n, params.p));
  };
  return s;
}

Strategy make_classical_forgery() {
  Strategy s;
  s.name = "classical-forgery";
  s.stresses = "modified share plus guessed tags: the validity vote must catch the forgery";
  s.pipeline = Pipeline::aqecc;
  s.make_script = [](const AqeccParams& params, const std::vector<size_t>& b, uint64_t) {
    size_t n = params.n;
    size_t len = params.etss.secret_len;
    return AttackScript{b, [n, len, b](const AdversaryView&) {
      AttackEffect effect;
      for (size_t r : b) {
        RegisterTamper& t = effect.tampers[r];
        t.share_delta = unit_delta(len);
        for (size_t j : counterpart_slots(n, r)) t.tag_delta[j] = 1;
      }
      return effect;
    }};
  };
  return s;
}

Strategy make_key_frame() {
  Strategy s;
  s.name = "key-frame";
  s.stresses =
      "share shifted on every symbol and own verification keys rewritten to frame honest "
      "registers: the vote threshold must tolerate hostile verifiers and the consistency "
      "check must abort if the shifted share sneaks through";
  s.pipeline = Pipeline::aqecc;
  s.make_script = [](const AqeccParams& params, const std::vector<size_t>& b, uint64_t) {
    size_t n = params.n;
    size_t len = params.etss.secret_len;
    return AttackScript{b, [n, len, b](const AdversaryView&) {
      AttackEffect effect;
      for (size_t r : b) {
        RegisterTamper& t = effect.tampers[r];
        t.share_delta.assign(len, 1);
        for (size_t j : counterpart_slots(n, r)) t.key_delta[j] = {1, 0};
      }
      return effect;
    }};
  };
  return s;
}

Strategy make_quantum_substitution() {
  Strategy s;
  s.name = "quantum-substitution";
  s.stresses = "seeded nonidentity Pauli on each corrupted register: authentication soundness";
  s.pipeline = Pipeline::aqecc;
  auto draw_paulis = [](const AqeccParams& params, const std::vector<size_t>& b, uint64_t seed) {
    std::map<size_t, PauliVector> out;
    Rng rng(seed);
    size_t w = params.qauth.wires();
    for (size_t r : b) {
      Rng sub = rng.child(r);
      uint64_t idx = 1 + sub.below(pauli_count(w, params.p) - 1);
      out[r] = pauli_from_index(w, params.p, idx);
    }
    return out;
  };
  s.make_script = [draw_paulis](const AqeccParams& params, const std::vector<size_t>& b,
                                uint64_t seed) {
    auto paulis = draw_paulis(params, b, seed);
    return AttackScript{b, [paulis](const AdversaryView&) {
      AttackEffect effect;
      for (const auto& [r, pv] : paulis) effect.tampers[r].pauli = pv;
      return effect;
    }};
  };
  s.make_warmup = [draw_paulis](const AqeccParams& params, const std::vector<size_t>& b,
                                uint64_t seed) {
    auto paulis = draw_paulis(params, b, seed);
    return WarmupScript{b, [paulis](const WarmupView&) {
      std::map<size_t, WarmupTamper> tampers;
      for (const auto& [r, pv] : paulis) tampers[r].pauli = pv;
      return tampers;
    }};
  };
  return s;
}

Strategy make_erasure() {
  Strategy s;
  s.name = "erasure";
  s.stresses = "everything in B garbled: corrupted registers must be discarded and recovered";
  s.pipeline = Pipeline::aqecc;
  s.make_script = [](const AqeccParams& params, const std::vector<size_t>& b, uint64_t) {
    size_t n = params.n;
    size_t len = params.etss.secret_len;
    size_t w = params.qauth.wires();
    uint64_t p = params.p;
    return AttackScript{b, [n, len, w, p, b](const AdversaryView&) {
      AttackEffect effect;
      for (size_t r : b) {
        RegisterTamper& t = effect.tampers[r];
        t.share_delta.assign(len, 1);
        for (size_t j : counterpart_slots(n, r)) {
          t.key_delta[j] = {1, 1};
          t.tag_delta[j] = 1;
        }
        t.pauli = PauliVector::identity(w, p);
        t.pauli.x.assign(w, 1);
      }
      return effect;
    }};
  };
  return s;
}

Strategy make_bare_breaker() {
  Strategy s;
  s.name = "bare-breaker";
  s.stresses =
      "minimum-weight logical operator restricted to its trailing t positions: beats the "
      "bare syndrome decoder deterministically, caught by the authenticated scheme";
  s.pipeline = Pipeline::bare;
  auto attack_support = [](const AqeccParams& params) {
    CssCode code = build_polynomial_code(params.n, params.t, params.p);
    PauliVector l = min_weight_logical_x(code);
    std::vector<size_t> supp;
    for (size_t i = 0; i < params.n; ++i)
      if (l.x[i] != 0 || l.z[i] != 0) supp.push_back(i);
    std::vector<size_t> b(supp.end() - static_cast<ptrdiff_t>(params.t), supp.end());
    return std::make_pair(b, l);
  };
  s.fixed_b = [attack_support](const AqeccParams& params) { return attack_support(params).first; };
  s.bare_attack = [attack_support](const AqeccParams& params) {
    auto [b, l] = attack_support(params);
    PauliVector e = PauliVector::identity(params.n, params.p);
    for (size_t pos : b) {
      e.x[pos] = l.x[pos];
      e.z[pos] = l.z[pos];
    }
    return std::make_pair(b, e);
  };
  s.make_script = [attack_support](const AqeccParams& params, const std::vector<size_t>& b,
                                   uint64_t) {
    auto [breq, l] = attack_support(params);
    if (b != breq)
      throw std::invalid_argument(
          "bare-breaker: this attack only works from the trailing positions of its logical "
          "operator's support");
    size_t w = params.qauth.wires();
    uint64_t p = params.p;
    std::map<size_t, PauliVector> paulis;
    for (size_t pos : breq) {
      PauliVector pv = PauliVector::identity(w, p);
      pv.x[0] = l.x[pos];
      pv.z[0] = l.z[pos];
      paulis[pos] = pv;
    }
    return AttackScript{breq, [paulis](const AdversaryView&) {
      AttackEffect effect;
      for (const auto& [r, pv] : paulis) effect.tampers[r].pauli = pv;
      return effect;
    }};
  };
  return s;
}

Strategy make_warmup_case2() {
  Strategy s;
  s.name = "warmup-case2";
  s.stresses = "both stored key copies modified: the common holder is identified and erased";
  s.pipeline = Pipeline::warmup3;
  s.make_warmup = [](const AqeccParams& params, const std::vector<size_t>& b, uint64_t) {
    size_t syms = serialized_key_symbols(params.qauth);
    size_t w = params.qauth.wires();
    uint64_t p = params.p;
    return WarmupScript{b, [syms, w, p, b](const WarmupView&) {
      std::map<size_t, WarmupTamper> tampers;
      for (size_t r : b) {
        WarmupTamper& t = tampers[r];
        t.copy_delta[0] = unit_delta(syms);
        t.copy_delta[1] = unit_delta(syms);
        t.pauli = x_on_wire0(w, p, 1);
      }
      return tampers;
    }};
  };
  return s;
}

Strategy make_warmup_case3() {
  Strategy s;
  s.name = "warmup-case3";
  s.stresses =
      "one stored key copy modified plus a Pauli on the modifier: the disputed key's two "
      "holders are checked and the cheater resolved";
  s.pipeline = Pipeline::warmup3;
  s.make_warmup = [](const AqeccParams& params, const std::vector<size_t>& b, uint64_t) {
    size_t syms = serialized_key_symbols(params.qauth);
    size_t w = params.qauth.wires();
    uint64_t p = params.p;
    return WarmupScript{b, [syms, w, p, b](const WarmupView&) {
      std::map<size_t, WarmupTamper> tampers;
      for (size_t r : b) {
        WarmupTamper& t = tampers[r];
        t.copy_delta[0] = unit_delta(syms);
        t.pauli = x_on_wire0(w, p, 1);
      }
      return tampers;
    }};
  };
  return s;
}

}  // namespace

bool Strategy::supports(Pipeline pl) const {
  switch (pl) {
    case Pipeline::aqecc:
      return static_cast<bool>(make_script);
    case Pipeline::warmup3:
      return static_cast<bool>(make_warmup);
    case Pipeline::bare:
      return static_cast<bool>(bare_attack);
  }
  return false;
}

std::string pipeline_name(Pipeline pl) {
  switch (pl) {
    case Pipeline::aqecc:
      return "aqecc";
    case Pipeline::warmup3:
      return "warmup3";
    case Pipeline::bare:
      return "bare";
  }
  throw std::logic_error("pipeline_name: unknown pipeline");
}

Pipeline pipeline_from_name(const std::string& name) {
  if (name == "aqecc") return Pipeline::aqecc;
  if (name == "warmup3") return Pipeline::warmup3;
  if (name == "bare") return Pipeline::bare;
  throw std::invalid_argument("unknown pipeline '" + name + "' (aqecc, warmup3, bare)");
}

const std::vector<Strategy>& strategy_library() {
  static const std::vector<Strategy> lib = {
      make_none(),           make_classical_forgery(), make_key_frame(),
      make_quantum_substitution(), make_erasure(),     make_bare_breaker(),
      make_warmup_case2(),   make_warmup_case3(),
  };
  return lib;
}

const Strategy& find_strategy(const std::string& name) {
  for (const Strategy& s : strategy_library())
    if (s.name == name) return s;
  std::string msg = "unknown strategy '" + name + "'; available:";
  for (const Strategy& s : strategy_library()) msg += " " + s.name;
  throw std::invalid_argument(msg);
}

std::vector<std::string> strategy_names() {
  std::vector<std::string> names;
  for (const Strategy& s : strategy_library()) names.push_back(s.name);
  return names;
}

}  // namespace aqecc
