#pragma once

#include <cstdint>
#include <vector>

#include "aqecc/rng.hpp"

namespace aqecc {

// One-time polynomial authentication code over GF(p_mac).
//
//   tag(m) = b + sum_{i=1..L} a^i * m_i
//
// For distinct messages m != m' the difference tag'(m') - tag(m) is a nonzero
// polynomial in `a` of degree <= L with no constant term, so an adversary who
// has seen one (message, tag) pair forges a second pair with probability at
// most L / p_mac over the uniform key. One key must authenticate one message.

struct MacKey {
  uint64_t a = 0;
  uint64_t b = 0;
  bool operator==(const MacKey& o) const { return a == o.a && b == o.b; }
};

struct MacTag {
  uint64_t value = 0;
  bool operator==(const MacTag& o) const { return value == o.value; }
};

MacKey mac_keygen(uint64_t p_mac, Rng& rng);
MacTag mac_tag(const MacKey& key, const std::vector<uint64_t>& message, uint64_t p_mac);
bool mac_verify(const MacKey& key, const std::vector<uint64_t>& message, const MacTag& tag,
                uint64_t p_mac);

}  // namespace aqecc
