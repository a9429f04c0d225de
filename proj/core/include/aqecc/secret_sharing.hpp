#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aqecc/mac.hpp"
#include "aqecc/rng.hpp"

namespace aqecc {

// Threshold secret sharing with pairwise authentication.
//
// The base layer is Shamir sharing over GF(p_share): each secret symbol gets
// an independent uniform polynomial of degree <= d-1 with the symbol as its
// constant term, evaluated at points 1..n (0 is reserved for the secret, so
// p_share > n). Any d shares determine the secret; any d-1 reveal nothing.
//
// On top of that, every ordered pair of slots carries a one-time MAC: slot j
// holds a verification key for slot i's share, and slot i stores the matching
// tag. A share counts as valid when at least tau = n-1-t of its n-1 tags
// verify. An adversary touching at most t slots can fabricate at most t-1
// tags for a modified share "for free" (by rewriting keys it also holds), so
// crossing the threshold requires forging tags under keys it never saw.

struct EtssParams {
  size_t n = 0;          // number of slots
  size_t d = 0;          // reconstruction threshold (polynomial degree < d)
  uint64_t p_share = 0;  // Shamir field
  uint64_t p_mac = 0;    // MAC field, >= p_share and > n
  size_t secret_len = 0; // symbols per secret

  size_t t() const { return d - 1; }                  // tolerated corruptions
  size_t tau() const { return n - 1 - t(); }          // valid-tag threshold
  size_t mac_message_len() const { return secret_len + 1; }
  void validate() const;  // throws std::invalid_argument
};

struct ShamirShare {
  size_t index = 0;  // 1-based evaluation point
  std::vector<uint64_t> values;
  bool operator==(const ShamirShare& o) const { return index == o.index && values == o.values; }
};

// What one slot stores: its Shamir share, the keys it uses to check the other
// slots' shares, and the tags that vouch for its own share to the other slots
// (own_tags[j] verifies under the key that slot j holds for this slot).
struct EtssShare {
  ShamirShare shamir;
  std::map<size_t, MacKey> verify_keys;  // counterpart slot -> key for its share
  std::map<size_t, MacTag> own_tags;     // counterpart slot -> tag on this share
  bool operator==(const EtssShare& o) const {
    return shamir == o.shamir && verify_keys == o.verify_keys && own_tags == o.own_tags;
  }
};

// All coins consumed by etss_share, exposed so tests and the exhaustive
// harness can drive the deterministic core directly.
struct EtssRandomness {
  // coeffs[s] = the d-1 non-constant coefficients of symbol s's polynomial.
  std::vector<std::vector<uint64_t>> coeffs;
  // keys[i][j] = key held by slot i+1 for slot j+1's share (diagonal unused).
  std::vector<std::vector<MacKey>> keys;
};

EtssRandomness draw_etss_randomness(const EtssParams& params, Rng& rng);

// MAC input for a share: the slot index followed by the share symbols.
// Injective because p_mac > n and p_mac >= p_share.
std::vector<uint64_t> share_mac_message(const ShamirShare& share);

std::vector<ShamirShare> shamir_share_from(const std::vector<uint64_t>& secret,
                                           const EtssParams& params,
                                           const std::vector<std::vector<uint64_t>>& coeffs);
std::vector<ShamirShare> shamir_share(const std::vector<uint64_t>& secret, const EtssParams& params,
                                      Rng& rng);

// Interpolates through the d lowest-index shares and checks every other
// provided share against the result; nullopt when any disagrees. Throws
// std::invalid_argument when fewer than d shares are provided — deciding
// whether enough shares survive is the caller's job (see etss_reconstruct).
std::optional<std::vector<uint64_t>> shamir_reconstruct(const std::vector<ShamirShare>& shares,
                                                        const EtssParams& params);

std::vector<EtssShare> etss_share_from(const std::vector<uint64_t>& secret,
                                       const EtssParams& params, const EtssRandomness& r);
std::vector<EtssShare> etss_share(const std::vector<uint64_t>& secret, const EtssParams& params,
                                  Rng& rng);

struct EtssResult {
  bool ok = false;                  // false = abort
  std::vector<uint64_t> secret;     // filled when ok
  std::vector<size_t> discarded;    // 1-based slots that failed tag validation
  bool inconsistent = false;        // abort cause: valid shares off one polynomial
};

// Validity vote, then reconstruction over every valid share with a full
// consistency check. Aborts (ok = false) when fewer than d shares survive or
// when the survivors are not all on one degree < d polynomial.
EtssResult etss_reconstruct(const std::vector<EtssShare>& slots, const EtssParams& params);

}  // namespace aqecc
