#include "aqecc/css_code.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace aqecc {

namespace {

void check_positions(const std::vector<size_t>& positions, size_t n, const char* what) {
  std::vector<bool> seen(n, false);
  for (size_t pos : positions) {
    if (pos >= n) throw std::out_of_range(std::string(what) + ": position out of range");
    if (seen[pos]) throw std::invalid_argument(std::string(what) + ": duplicate position");
    seen[pos] = true;
  }
}

std::vector<size_t> complement(const std::vector<size_t>& positions, size_t n) {
  std::vector<bool> in(n, false);
  for (size_t pos : positions) in[pos] = true;
  std::vector<size_t> out;
  for (size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

uint64_t dot(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b, uint64_t p) {
  uint64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc = addm(acc, mulm(a[i], b[i], p), p);
  return acc;
}

bool is_zero(const std::vector<uint64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](uint64_t x) { return x == 0; });
}

// Generalized Reed-Solomon duality: with column multipliers
// u_i = prod_{j != i} (x_i - x_j)^{-1}, the dual of {deg < d evaluations} is
// {(u_i g(x_i))_i : deg g < n - d}. Both check matrices and both logical
// ladders below are monomial ladders under this duality, which keeps every
// basis canonical.
std::vector<uint64_t> dual_multipliers(const std::vector<uint64_t>& points, uint64_t p) {
  const size_t n = points.size();
  std::vector<uint64_t> u(n, 1);
  for (size_t i = 0; i < n; ++i) {
    uint64_t prod = 1;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      prod = mulm(prod, subm(points[i], points[j], p), p);
    }
    u[i] = invm(prod, p);
  }
  return u;
}

// Rows (scale_i * points_i^e) for e in [e_lo, e_hi).
Matrix monomial_rows(const std::vector<uint64_t>& points, const std::vector<uint64_t>& scale,
                     size_t e_lo, size_t e_hi, uint64_t p) {
  Matrix m(e_hi - e_lo, points.size(), p);
  for (size_t i = 0; i < points.size(); ++i) {
    uint64_t pw = powm(points[i], e_lo, p);
    for (size_t e = e_lo; e < e_hi; ++e) {
      m.set(e - e_lo, i, mulm(scale[i], pw, p));
      pw = mulm(pw, points[i], p);
    }
  }
  return m;
}

}  // namespace

CssCode build_polynomial_code(size_t n, size_t t, uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("build_polynomial_code: p must be prime");
  if (p < n) throw std::invalid_argument("build_polynomial_code: need p > n-1 distinct points");
  if (2 * t >= n) throw std::invalid_argument("build_polynomial_code: need 2t < n");

  CssCode code;
  code.n = n;
  code.t = t;
  code.k = n - 2 * t;
  code.p = p;
  code.points.resize(n);
  for (size_t i = 0; i < n; ++i) code.points[i] = (i + 1) % p;

  const std::vector<uint64_t> ones(n, 1);
  const std::vector<uint64_t> u = dual_multipliers(code.points, p);

  // C2 = degree < t evaluations, C1 = degree < n-t evaluations (C2 inside C1).
  // Checks violated by the x-part span C1-perp = u * {degree < t}; checks
  // violated by the z-part span C2 itself.
  code.hz = monomial_rows(code.points, u, 0, t, p);
  code.hx = monomial_rows(code.points, ones, 0, t, p);

  // Logical ladders: the monomial bases are nested, so the quotient
  // representatives are the next k rungs of each ladder.
  code.logical_x = monomial_rows(code.points, ones, t, n - t, p);
  Matrix lz_raw = monomial_rows(code.points, u, t, n - t, p);

  // Normalize the pairing to logical_x * logical_z^T = I_k. The Gram matrix
  // is invertible because the quotient pairing is perfect.
  Matrix gram = code.logical_x.mul(lz_raw.transpose());
  code.logical_z = matrix_inverse(gram).transpose().mul(lz_raw);

  // Construction invariants; violations are internal errors.
  Matrix zero_tt(t, t, p);
  if (code.hz.mul(code.hx.transpose()) != zero_tt)
    throw std::logic_error("build_polynomial_code: checks do not commute");
  if (code.hz.rank() != t || code.hx.rank() != t)
    throw std::logic_error("build_polynomial_code: check rank wrong");
  if (code.logical_x.mul(code.logical_z.transpose()) != Matrix::identity(code.k, p))
    throw std::logic_error("build_polynomial_code: logical pairing not normalized");
  Matrix zero_tk(t, code.k, p);
  if (code.hz.mul(code.logical_x.transpose()) != zero_tk ||
      code.hx.mul(code.logical_z.transpose()) != zero_tk)
    throw std::logic_error("build_polynomial_code: logical representatives hit a check");
  return code;
}

std::pair<std::vector<uint64_t>, std::vector<uint64_t>> syndrome(const CssCode& code,
                                                                 const PauliVector& pv) {
  if (pv.qudits() != code.n || pv.p != code.p)
    throw std::invalid_argument("syndrome: Pauli shape mismatch");
  return {code.hz.mul_vec(pv.x), code.hx.mul_vec(pv.z)};
}

PauliVector logical_class(const CssCode& code, const PauliVector& pv) {
  auto [sz, sx] = syndrome(code, pv);
  if (!is_zero(sz) || !is_zero(sx))
    throw std::invalid_argument("logical_class: Pauli has nonzero syndrome");
  PauliVector cls = PauliVector::identity(code.k, code.p);
  for (size_t j = 0; j < code.k; ++j) {
    cls.x[j] = dot(code.logical_z.row(j), pv.x, code.p);
    cls.z[j] = dot(code.logical_x.row(j), pv.z, code.p);
  }
  return cls;
}

std::optional<PauliVector> erasure_decode(const CssCode& code, const FrameState& frame,
                                          const std::vector<size_t>& erased) {
  if (erased.size() > code.t) throw std::invalid_argument("erasure_decode: more than t erasures");
  check_positions(erased, code.n, "erasure_decode");

  auto [sz, sx] = syndrome(code, frame.error);
  const Matrix hz_e = code.hz.select_columns(erased);
  const Matrix hx_e = code.hx.select_columns(erased);
  for (uint64_t& v : sz) v = negm(v, code.p);
  for (uint64_t& v : sx) v = negm(v, code.p);
  const LinearSolution solz = gaussian_solve(hz_e, sz);
  const LinearSolution solx = gaussian_solve(hx_e, sx);
  if (solz.kind == LinearSolution::Kind::inconsistent ||
      solx.kind == LinearSolution::Kind::inconsistent)
    return std::nullopt;

  PauliVector corrected = frame.error;
  for (size_t j = 0; j < erased.size(); ++j) {
    corrected.x[erased[j]] = addm(corrected.x[erased[j]], solz.particular[j], code.p);
    corrected.z[erased[j]] = addm(corrected.z[erased[j]], solx.particular[j], code.p);
  }
  return logical_class(code, corrected);
}

namespace {

// Checks supported inside `kept` are the combinations c^T H with c in the
// kernel of H restricted to the discarded columns; the frame passes them all
// iff every such c annihilates the measured syndrome.
bool side_consistent(const Matrix& h, const std::vector<uint64_t>& syn,
                     const std::vector<size_t>& out, uint64_t p) {
  const Matrix basis = h.select_columns(out).transpose().nullspace();
  for (size_t i = 0; i < basis.rows(); ++i) {
    if (dot(basis.row(i), syn, p) != 0) return false;
  }
  return true;
}

}  // namespace

bool restricted_consistency(const CssCode& code, const FrameState& frame,
                            const std::vector<size_t>& kept) {
  check_positions(kept, code.n, "restricted_consistency");
  const std::vector<size_t> out = complement(kept, code.n);
  auto [sz, sx] = syndrome(code, frame.error);
  return side_consistent(code.hz, sz, out, code.p) && side_consistent(code.hx, sx, out, code.p);
}

AdaptedBasis adapted_basis(const CssCode& code, const std::vector<size_t>& b) {
  if (b.size() > code.t) throw std::invalid_argument("adapted_basis: |B| > t");
  check_positions(b, code.n, "adapted_basis");

  std::vector<size_t> order = b;
  for (size_t c : complement(b, code.n)) order.push_back(c);

  AdaptedBasis out{code.hz, code.hx};
  for (Matrix* m : {&out.v, &out.w}) {
    const std::vector<size_t> pivots = m->rref_ordered(order);
    // Every <= t columns of either check matrix are independent (the row
    // spaces are MDS codes), so the pivots must claim all of B first; each
    // B position is then touched only by its own pivot row.
    if (pivots.size() != code.t) throw std::logic_error("adapted_basis: rank drop");
    for (size_t i = 0; i < b.size(); ++i)
      if (pivots[i] != b[i]) throw std::logic_error("adapted_basis: pivot missed B");
  }
  return out;
}

size_t min_distance_bruteforce(const CssCode& code) {
  const uint64_t total = pauli_count(code.n, code.p);
  if (total > 100000000ull)
    throw std::invalid_argument("min_distance_bruteforce: instance too large");

  size_t best = code.n + 1;
  PauliVector pv = PauliVector::identity(code.n, code.p);
  // In-place odometer over all nonzero Pauli vectors, x digits first.
  for (uint64_t idx = 1; idx < total; ++idx) {
    size_t d = 0;
    while (true) {
      uint64_t& digit = d < code.n ? pv.x[d] : pv.z[d - code.n];
      if (++digit < code.p) break;
      digit = 0;
      ++d;
    }
    if (pv.weight() >= best) continue;
    auto [sz, sx] = syndrome(code, pv);
    if (!is_zero(sz) || !is_zero(sx)) continue;
    if (!logical_class(code, pv).is_identity()) best = pv.weight();
  }
  if (best > code.n) throw std::logic_error("min_distance_bruteforce: no logical found");
  return best;
}

PauliVector min_weight_logical_x(const CssCode& code) {
  // Evaluations of f = prod_{j > t} (X - x_j): degree n-t-1 keeps f inside
  // C1 and outside C2 (n >= 2t+1), and the n-t-1 roots leave support exactly
  // on the first t+1 positions.
  PauliVector lv = PauliVector::identity(code.n, code.p);
  for (size_t i = 0; i <= code.t; ++i) {
    uint64_t val = 1;
    for (size_t j = code.t + 1; j < code.n; ++j)
      val = mulm(val, subm(code.points[i], code.points[j], code.p), code.p);
    lv.x[i] = val;
  }
  if (lv.weight() != code.t + 1 || logical_class(code, lv).is_identity())
    throw std::logic_error("min_weight_logical_x: construction invariant broken");
  return lv;
}

PauliVector bare_syndrome_decode(const CssCode& code, const FrameState& frame) {
  const auto [sz, sx] = syndrome(code, frame.error);
  const uint64_t p = code.p;
  const uint64_t pair_count = p * p - 1;  // nonzero (x, z) values per position

  // Candidate corrections by weight, then by lexicographic support, then by
  // lexicographic per-position values: the first syndrome match wins. The
  // tie-break is part of the decoder's contract (it makes runs reproducible).
  std::vector<size_t> support;
  PauliVector f = PauliVector::identity(code.n, code.p);
  auto matches = [&]() {
    auto [fz, fx] = syndrome(code, f);
    return fz == sz && fx == sx;
  };
  std::function<std::optional<PauliVector>(size_t, size_t)> search =
      [&](size_t weight, size_t from) -> std::optional<PauliVector> {
    if (support.size() == weight) {
      std::vector<uint64_t> digits(weight, 0);
      while (true) {
        for (size_t i = 0; i < weight; ++i) {
          const uint64_t v = digits[i] + 1;
          f.x[support[i]] = v % p;
          f.z[support[i]] = v / p;
        }
        if (matches()) return f;
        size_t d = weight;
        while (d > 0 && ++digits[d - 1] == pair_count) digits[--d] = 0;
        if (d == 0) break;
      }
      for (size_t pos : support) f.x[pos] = f.z[pos] = 0;
      return std::nullopt;
    }
    for (size_t pos = from; pos < code.n; ++pos) {
      support.push_back(pos);
      if (auto hit = search(weight, pos + 1)) return hit;
      support.pop_back();
    }
    return std::nullopt;
  };

  for (size_t weight = 0; weight <= code.n; ++weight) {
    if (auto hit = search(weight, 0)) {
      PauliVector corrected = frame.error;
      corrected.sub(*hit);
      return logical_class(code, corrected);
    }
  }
  throw std::logic_error("bare_syndrome_decode: syndrome map not surjective");
}

}  // namespace aqecc
