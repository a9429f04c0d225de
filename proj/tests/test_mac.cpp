#include "aqecc/mac.hpp"

#include <algorithm>

#include "aqecc/field.hpp"
#include "doctest.h"

using namespace aqecc;

TEST_CASE("tag verifies its own message and nothing shifted") {
  Rng rng(21);
  for (uint64_t p : {5ull, 61ull, 3061ull}) {
    for (int it = 0; it < 10; ++it) {
      std::vector<uint64_t> msg(7);
      for (auto& v : msg) v = rng.below(p);
      MacKey key = mac_keygen(p, rng);
      MacTag tag = mac_tag(key, msg, p);
      CHECK(mac_verify(key, msg, tag, p));
      CHECK(!mac_verify(key, msg, MacTag{addm(tag.value, 1, p)}, p));
    }
  }
}

TEST_CASE("tag formula matches the polynomial hash by hand") {
  // tag = b + a*m1 + a^2*m2 over GF(7) with a=3, b=2, m=(4, 5):
  // 2 + 3*4 + 9*5 = 59 = 3 (mod 7)
  MacKey key{3, 2};
  CHECK(mac_tag(key, {4, 5}, 7).value == 3);
}

TEST_CASE("exhaustive forgery bound: acceptance fraction <= L/p for every tamper") {
  // All keys, all two-symbol message deltas, all tag deltas over GF(5).
  const uint64_t p = 5;
  const size_t len = 2;
  std::vector<uint64_t> base{3, 1};  // arbitrary fixed message
  uint64_t worst_num = 0, den = p * p;
  for (uint64_t d0 = 0; d0 < p; ++d0)
    for (uint64_t d1 = 0; d1 < p; ++d1)
      for (uint64_t dt = 0; dt < p; ++dt) {
        if (d0 == 0 && d1 == 0 && dt == 0) continue;  // not a forgery
        std::vector<uint64_t> forged{addm(base[0], d0, p), addm(base[1], d1, p)};
        uint64_t accepts = 0;
        for (uint64_t a = 0; a < p; ++a)
          for (uint64_t b = 0; b < p; ++b) {
            MacKey key{a, b};
            MacTag t = mac_tag(key, base, p);
            if (mac_verify(key, forged, MacTag{addm(t.value, dt, p)}, p)) ++accepts;
          }
        if (d0 == 0 && d1 == 0) CHECK(accepts == 0);  // same message, shifted tag
        worst_num = std::max(worst_num, accepts);
      }
  // Best forgery hits the L/p = 2/5 bound exactly (degree-2 difference poly).
  CHECK(worst_num * p <= len * den);
  CHECK(worst_num == 10);  // 2 roots x 5 choices of b
}

TEST_CASE("keygen draws both key parts over the full field") {
  Rng rng(5);
  bool seen_zero_a = false, seen_big_b = false;
  for (int i = 0; i < 200; ++i) {
    MacKey k = mac_keygen(5, rng);
    CHECK(k.a < 5);
    CHECK(k.b < 5);
    seen_zero_a |= k.a == 0;
    seen_big_b |= k.b == 4;
  }
  CHECK(seen_zero_a);
  CHECK(seen_big_b);
}
