#include "aqecc/secret_sharing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "aqecc/field.hpp"

namespace aqecc {

void EtssParams::validate() const {
  if (n == 0 || d == 0 || d > n) throw std::invalid_argument("EtssParams: need 0 < d <= n");
  if (!is_prime(p_share)) throw std::invalid_argument("EtssParams: p_share must be prime");
  if (!is_prime(p_mac)) throw std::invalid_argument("EtssParams: p_mac must be prime");
  if (p_share <= n) throw std::invalid_argument("EtssParams: p_share must exceed n");
  if (p_mac < p_share) throw std::invalid_argument("EtssParams: p_mac must be >= p_share");
  if (p_mac <= n) throw std::invalid_argument("EtssParams: p_mac must exceed n");
  if (secret_len == 0) throw std::invalid_argument("EtssParams: empty secret");
  if (n - 1 < t()) throw std::invalid_argument("EtssParams: tau would be negative");
}

EtssRandomness draw_etss_randomness(const EtssParams& params, Rng& rng) {
  params.validate();
  EtssRandomness r;
  r.coeffs.resize(params.secret_len);
  for (auto& c : r.coeffs) {
    c.resize(params.d - 1);
    for (auto& v : c) v = rng.below(params.p_share);
  }
  r.keys.assign(params.n, std::vector<MacKey>(params.n));
  for (size_t i = 0; i < params.n; ++i) {
    for (size_t j = 0; j < params.n; ++j) {
      if (i == j) continue;
      r.keys[i][j] = mac_keygen(params.p_mac, rng);
    }
  }
  return r;
}

std::vector<uint64_t> share_mac_message(const ShamirShare& share) {
  std::vector<uint64_t> msg;
  msg.reserve(share.values.size() + 1);
  msg.push_back(share.index);
  msg.insert(msg.end(), share.values.begin(), share.values.end());
  return msg;
}

std::vector<ShamirShare> shamir_share_from(const std::vector<uint64_t>& secret,
                                           const EtssParams& params,
                                           const std::vector<std::vector<uint64_t>>& coeffs) {
  params.validate();
  if (secret.size() != params.secret_len)
    throw std::invalid_argument("shamir_share: secret length mismatch");
  if (coeffs.size() != params.secret_len)
    throw std::invalid_argument("shamir_share: coefficient rows mismatch");
  const uint64_t p = params.p_share;

  std::vector<ShamirShare> shares(params.n);
  for (size_t i = 0; i < params.n; ++i) {
    shares[i].index = i + 1;
    shares[i].values.resize(params.secret_len);
  }
  for (size_t s = 0; s < params.secret_len; ++s) {
    if (secret[s] >= p) throw std::invalid_argument("shamir_share: secret symbol out of range");
    if (coeffs[s].size() != params.d - 1)
      throw std::invalid_argument("shamir_share: coefficient count mismatch");
    std::vector<uint64_t> poly;
    poly.reserve(params.d);
    poly.push_back(secret[s]);
    poly.insert(poly.end(), coeffs[s].begin(), coeffs[s].end());
    for (size_t i = 0; i < params.n; ++i) {
      shares[i].values[s] = poly_eval(poly, i + 1, p);
    }
  }
  return shares;
}

std::vector<ShamirShare> shamir_share(const std::vector<uint64_t>& secret, const EtssParams& params,
                                      Rng& rng) {
  params.validate();
  std::vector<std::vector<uint64_t>> coeffs(params.secret_len);
  for (auto& c : coeffs) {
    c.resize(params.d - 1);
    for (auto& v : c) v = rng.below(params.p_share);
  }
  return shamir_share_from(secret, params, coeffs);
}

std::optional<std::vector<uint64_t>> shamir_reconstruct(const std::vector<ShamirShare>& shares,
                                                        const EtssParams& params) {
  params.validate();
  if (shares.size() < params.d)
    throw std::invalid_argument("shamir_reconstruct: fewer than d shares");
  std::vector<ShamirShare> sorted = shares;
  std::sort(sorted.begin(), sorted.end(),
            [](const ShamirShare& a, const ShamirShare& b) { return a.index < b.index; });
  for (const auto& sh : sorted) {
    if (sh.index == 0 || sh.index > params.n)
      throw std::invalid_argument("shamir_reconstruct: share index out of range");
    if (sh.values.size() != params.secret_len)
      throw std::invalid_argument("shamir_reconstruct: share length mismatch");
  }
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].index == sorted[i - 1].index)
      throw std::invalid_argument("shamir_reconstruct: duplicate share index");
  }

  std::vector<uint64_t> secret(params.secret_len);
  for (size_t s = 0; s < params.secret_len; ++s) {
    std::vector<std::pair<uint64_t, uint64_t>> points;
    points.reserve(sorted.size());
    for (const auto& sh : sorted) points.emplace_back(sh.index, sh.values[s]);
    auto coeffs = lagrange_interpolate(points, params.d - 1, params.p_share);
    if (!coeffs) return std::nullopt;
    secret[s] = (*coeffs)[0];  // value at 0
  }
  return secret;
}

std::vector<EtssShare> etss_share_from(const std::vector<uint64_t>& secret,
                                       const EtssParams& params, const EtssRandomness& r) {
  params.validate();
  if (r.keys.size() != params.n) throw std::invalid_argument("etss_share: key table size mismatch");
  std::vector<ShamirShare> base = shamir_share_from(secret, params, r.coeffs);

  std::vector<EtssShare> slots(params.n);
  for (size_t i = 0; i < params.n; ++i) slots[i].shamir = base[i];
  for (size_t i = 0; i < params.n; ++i) {
    for (size_t j = 0; j < params.n; ++j) {
      if (i == j) continue;
      // Slot i+1 holds r.keys[i][j] to verify slot j+1; the matching tag on
      // slot j+1's share is stored with slot j+1.
      slots[i].verify_keys[j + 1] = r.keys[i][j];
      slots[j].own_tags[i + 1] = mac_tag(r.keys[i][j], share_mac_message(base[j]), params.p_mac);
    }
  }
  return slots;
}

std::vector<EtssShare> etss_share(const std::vector<uint64_t>& secret, const EtssParams& params,
                                  Rng& rng) {
  const EtssRandomness r = draw_etss_randomness(params, rng);
  return etss_share_from(secret, params, r);
}

EtssResult etss_reconstruct(const std::vector<EtssShare>& slots, const EtssParams& params) {
  params.validate();
  if (slots.size() != params.n) throw std::invalid_argument("etss_reconstruct: need exactly n slots");

  EtssResult result;
  std::vector<ShamirShare> valid;
  for (size_t i = 0; i < params.n; ++i) {
    const auto msg = share_mac_message(slots[i].shamir);
    size_t good_tags = 0;
    for (size_t j = 0; j < params.n; ++j) {
      if (i == j) continue;
      const auto key_it = slots[j].verify_keys.find(i + 1);
      const auto tag_it = slots[i].own_tags.find(j + 1);
      if (key_it == slots[j].verify_keys.end() || tag_it == slots[i].own_tags.end()) continue;
      if (mac_verify(key_it->second, msg, tag_it->second, params.p_mac)) ++good_tags;
    }
    if (good_tags >= params.tau()) {
      valid.push_back(slots[i].shamir);
    } else {
      result.discarded.push_back(i + 1);
    }
  }

  if (valid.size() < params.d) return result;  // abort: not enough survivors
  auto secret = shamir_reconstruct(valid, params);
  if (!secret) {
    result.inconsistent = true;
    return result;  // abort: survivors disagree
  }
  result.ok = true;
  result.secret = std::move(*secret);
  return result;
}

}  // namespace aqecc
