#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aqecc/scheme.hpp"

namespace aqecc {

// Which decoder a strategy is aimed at: the full composed scheme, the
// three-register warm-up scheme, or the bare polynomial code with no
// authentication layer (the comparison target).
enum class Pipeline { aqecc, warmup3, bare };

std::string pipeline_name(Pipeline pl);
Pipeline pipeline_from_name(const std::string& name);

// A named adversary. Each member of the library documents the decode stage
// it stresses. Generators receive the corruption set and a seed; any attack
// randomness is derived deterministically from the seed, and the actions of
// the library strategies depend only on (params, b, seed) — not on the
// honest contents they are shown — which the exhaustive oracle verifies and
// exploits.
struct Strategy {
  std::string name;
  std::string stresses;                // which decode stage this attack aims at
  Pipeline pipeline = Pipeline::aqecc; // primary target

  std::function<AttackScript(const AqeccParams&, const std::vector<size_t>&, uint64_t)>
      make_script;  // set iff the strategy can attack the full scheme
  std::function<WarmupScript(const AqeccParams&, const std::vector<size_t>&, uint64_t)>
      make_warmup;  // set iff the strategy can attack the warm-up scheme
  // Bare pipeline: the corruption set the attack needs plus the code-level
  // Pauli it applies (n qudits).
  std::function<std::pair<std::vector<size_t>, PauliVector>(const AqeccParams&)> bare_attack;
  // Set when the strategy only works against one specific corruption set.
  std::function<std::vector<size_t>(const AqeccParams&)> fixed_b;

  bool supports(Pipeline pl) const;
};

// The eight library members:
//   none                 — empty attack; completeness baseline.
//   classical-forgery    — modifies its own share and guesses new tags,
//                          stressing the tag-vote threshold.
//   key-frame            — shifts its share on every symbol and rewrites its
//                          own verification keys to frame honest registers,
//                          stressing the consistency abort and the vote
//                          threshold's tolerance of hostile verifiers.
//   quantum-substitution — seeded nonidentity Pauli on each corrupted
//                          register, stressing authentication soundness.
//   erasure              — garbles everything stored in B, stressing the
//                          discard-and-recover path.
//   bare-breaker         — minimum-weight logical operator restricted to its
//                          trailing t positions: defeats the bare syndrome
//                          decoder deterministically, and the same Pauli is
//                          aimed at the full scheme for comparison.
//   warmup-case2         — modifies both stored key copies, making their
//                          holder the identified cheater.
//   warmup-case3         — modifies one stored key copy plus a Pauli on
//                          itself, driving the disputed-key resolution.
const std::vector<Strategy>& strategy_library();

// Throws std::invalid_argument listing the available names when absent.
const Strategy& find_strategy(const std::string& name);
std::vector<std::string> strategy_names();

}  // namespace aqecc
