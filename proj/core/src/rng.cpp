#include "aqecc/rng.hpp"

#include <limits>
#include <stdexcept>

namespace aqecc {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), gen_(mix64(seed)) {}

uint64_t Rng::next() { return gen_(); }

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  if (bound == 1) return 0;
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % bound;
}

Rng Rng::child(uint64_t k) const { return Rng(mix64(seed_ ^ mix64(k ^ 0xa0761d6478bd642full))); }

}  // namespace aqecc
