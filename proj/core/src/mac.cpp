#include "aqecc/mac.hpp"

#include <stdexcept>

#include "aqecc/field.hpp"

namespace aqecc {

MacKey mac_keygen(uint64_t p_mac, Rng& rng) {
  return MacKey{rng.below(p_mac), rng.below(p_mac)};
}

MacTag mac_tag(const MacKey& key, const std::vector<uint64_t>& message, uint64_t p_mac) {
  if (message.empty()) throw std::invalid_argument("mac_tag: empty message");
  uint64_t acc = key.b % p_mac;
  uint64_t pw = 1;
  for (uint64_t m : message) {
    if (m >= p_mac) throw std::invalid_argument("mac_tag: symbol out of field range");
    pw = mulm(pw, key.a % p_mac, p_mac);  // a^i for i = 1..L
    acc = addm(acc, mulm(pw, m, p_mac), p_mac);
  }
  return MacTag{acc};
}

bool mac_verify(const MacKey& key, const std::vector<uint64_t>& message, const MacTag& tag,
                uint64_t p_mac) {
  return mac_tag(key, message, p_mac).value == tag.value % p_mac;
}

}  // namespace aqecc
