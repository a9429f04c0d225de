#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "aqecc/field.hpp"
#include "aqecc/pauli.hpp"

namespace aqecc {

// CSS code built from nested Reed-Solomon codes C2 (degree < t) inside
// C1 (degree < n-t) over GF(p), evaluated at points (i mod p) for i = 1..n.
// Parameters [[n, k = n-2t, t+1]]_p: corrects t erasures and detects t
// substitutions. Immutable after construction.
struct CssCode {
  size_t n = 0, k = 0, t = 0;
  uint64_t p = 2;
  std::vector<uint64_t> points;  // evaluation points, one per position
  Matrix hz;  // t x n, rows span V: z-type checks, violated by the x-part
  Matrix hx;  // t x n, rows span W: x-type checks, violated by the z-part
  Matrix logical_x;  // k x n representatives acting on the x-part
  Matrix logical_z;  // k x n representatives, pairing-normalized so that
                     // logical_x * logical_z^T = I_k

  CssCode() : hz(0, 0, 2), hx(0, 0, 2), logical_x(0, 0, 2), logical_z(0, 0, 2) {}
};

// Pauli frame for a length-n codeword: the deviation from the honest
// encoding (identity error at encode time).
struct FrameState {
  PauliVector error;
};

CssCode build_polynomial_code(size_t n, size_t t, uint64_t p);

// sz = Hz * P.x, sx = Hx * P.z; both zero iff P commutes with every check.
std::pair<std::vector<uint64_t>, std::vector<uint64_t>> syndrome(const CssCode& code,
                                                                 const PauliVector& pv);

// Logical class of a zero-syndrome Pauli, as a Pauli vector on the k logical
// qudits: x-part_j = <logical_z_j, P.x>, z-part_j = <logical_x_j, P.z>.
// Identity class iff P is a product of checks. Throws on nonzero syndrome.
PauliVector logical_class(const CssCode& code, const PauliVector& pv);

// Erasure decoding in the Pauli frame: find a Pauli supported on `erased`
// whose syndrome matches the frame's, i.e. explain the measured syndrome by
// the erased positions alone. Returns the logical class of (error +
// correction) — identity means exact recovery; nullopt means no supported
// solution exists (the content seen on kept positions is not consistent with
// any single codeword) and the decoder must abort. Positions are 0-based.
std::optional<PauliVector> erasure_decode(const CssCode& code, const FrameState& frame,
                                          const std::vector<size_t>& erased);

// True iff the frame's error passes every check whose support lies inside
// `kept` (checks = all linear combinations of rows, not just the rows).
// Equivalent to erasure_decode solvability with erased = complement(kept).
bool restricted_consistency(const CssCode& code, const FrameState& frame,
                            const std::vector<size_t>& kept);

// Bases of V and W row-reduced so that each position in B is touched by
// exactly one basis vector (its pivot row). Exists for |B| <= t because any
// t columns of either check matrix are linearly independent.
struct AdaptedBasis {
  Matrix v;  // z-type checks (same row space as hz)
  Matrix w;  // x-type checks (same row space as hx)
};
AdaptedBasis adapted_basis(const CssCode& code, const std::vector<size_t>& b);

// Minimum weight over zero-syndrome Paulis with nonidentity logical class,
// by enumeration of all p^{2n} Pauli vectors. Refuses instances beyond desk
// scale (p^{2n} > 10^8).
size_t min_distance_bruteforce(const CssCode& code);

// A canonical weight-(t+1) logical representative: evaluations of the monic
// polynomial vanishing on the last n-t-1 points, as an x-only Pauli. Its
// support is exactly the first t+1 positions and its class is nonidentity.
PauliVector min_weight_logical_x(const CssCode& code);

// Plain syndrome decoding with no authentication: pick the lowest-weight
// Pauli matching the error's syndrome (ties broken by position-major
// enumeration order) and return the logical class of error + correction.
// Always "succeeds" — with more than (t+1)/2 substituted positions it can be
// forced to a wrong class deterministically, which is the point of the
// baseline it provides.
PauliVector bare_syndrome_decode(const CssCode& code, const FrameState& frame);

}  // namespace aqecc
