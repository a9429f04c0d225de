#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aqecc/field.hpp"
#include "aqecc/rng.hpp"

namespace aqecc {

// Qudit Pauli operators modulo phase, as symplectic vectors over GF(p).
// A Pauli X^x Z^z on m qudits is the length-2m vector (x | z); composition
// adds the vectors and global phases are deliberately not tracked (the
// decoding semantics downstream never depend on them).
struct PauliVector {
  uint64_t p = 2;
  std::vector<uint64_t> x, z;

  static PauliVector identity(size_t m, uint64_t p);
  size_t qudits() const { return x.size(); }
  bool is_identity() const;
  size_t weight() const;  // positions where (x_i, z_i) != (0, 0)

  PauliVector& add(const PauliVector& o);       // composition
  PauliVector& sub(const PauliVector& o);       // composition with the inverse
  PauliVector restricted(const std::vector<size_t>& positions) const;

  bool operator==(const PauliVector& o) const { return p == o.p && x == o.x && z == o.z; }
  bool operator!=(const PauliVector& o) const { return !(*this == o); }
};

// <P, Q> = sum_i P.x_i Q.z_i - P.z_i Q.x_i  (mod p). Zero iff the operators
// commute up to phase.
uint64_t symplectic_product(const PauliVector& a, const PauliVector& b);

// The form matrix J = [[0, I], [-I, 0]] in (x | z) coordinates.
Matrix symplectic_form(size_t m, uint64_t p);
bool is_symplectic(const Matrix& m);

// A Clifford operation modulo Pauli, i.e. its action on Pauli vectors:
// conjugation sends (x | z) to M (x | z). The constructor rejects any M with
// M^T J M != J.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix m);
  static SymplecticMatrix identity(size_t m, uint64_t p);

  size_t qudits() const { return w_; }
  uint64_t modulus() const { return mat_.modulus(); }
  const Matrix& mat() const { return mat_; }

  PauliVector apply(const PauliVector& pv) const;
  SymplecticMatrix inverse() const;  // -J M^T J, exact
  SymplecticMatrix compose(const SymplecticMatrix& o) const;

  bool operator==(const SymplecticMatrix& o) const { return mat_ == o.mat_; }

 private:
  Matrix mat_;
  size_t w_;
};

PauliVector conjugate(const SymplecticMatrix& c, const PauliVector& pv);

// |Sp(2m, p)| = prod_{i=1..m} (p^{2i} - 1) p^{2i-1}; throws on u64 overflow.
uint64_t symplectic_group_order(size_t m, uint64_t p);

uint64_t pauli_count(size_t m, uint64_t p);  // p^{2m}, overflow-checked
PauliVector pauli_from_index(size_t m, uint64_t p, uint64_t index);

PauliVector random_pauli(size_t m, uint64_t p, Rng& rng);

// Exactly uniform over Sp(2m, p): a symplectic basis is drawn pair by pair
// (uniform nonzero v, then uniform w with <v, w> = 1, then recurse on the
// symplectic complement). The choice counts per level multiply to the group
// order and the choices are recoverable from the result, so the map from
// choice sequences to matrices is a bijection.
SymplecticMatrix random_symplectic(size_t m, uint64_t p, Rng& rng);

// Visits every element of Sp(2m, p) exactly once, in a fixed order (the same
// choice chain as random_symplectic, iterated lexicographically).
void enumerate_symplectic(size_t m, uint64_t p,
                          const std::function<void(const SymplecticMatrix&)>& fn);

}  // namespace aqecc
