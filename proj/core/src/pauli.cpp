#include "aqecc/pauli.hpp"

#include <stdexcept>

namespace aqecc {

PauliVector PauliVector::identity(size_t m, uint64_t p) {
  PauliVector pv;
  pv.p = p;
  pv.x.assign(m, 0);
  pv.z.assign(m, 0);
  return pv;
}

bool PauliVector::is_identity() const {
  for (uint64_t v : x)
    if (v != 0) return false;
  for (uint64_t v : z)
    if (v != 0) return false;
  return true;
}

size_t PauliVector::weight() const {
  size_t w = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 || z[i] != 0) ++w;
  return w;
}

PauliVector& PauliVector::add(const PauliVector& o) {
  if (p != o.p || x.size() != o.x.size()) throw std::invalid_argument("pauli add: shape mismatch");
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = addm(x[i], o.x[i], p);
    z[i] = addm(z[i], o.z[i], p);
  }
  return *this;
}

PauliVector& PauliVector::sub(const PauliVector& o) {
  if (p != o.p || x.size() != o.x.size()) throw std::invalid_argument("pauli sub: shape mismatch");
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = subm(x[i], o.x[i], p);
    z[i] = subm(z[i], o.z[i], p);
  }
  return *this;
}

PauliVector PauliVector::restricted(const std::vector<size_t>& positions) const {
  PauliVector out;
  out.p = p;
  out.x.reserve(positions.size());
  out.z.reserve(positions.size());
  for (size_t pos : positions) {
    if (pos >= x.size()) throw std::out_of_range("pauli restricted: position out of range");
    out.x.push_back(x[pos]);
    out.z.push_back(z[pos]);
  }
  return out;
}

uint64_t symplectic_product(const PauliVector& a, const PauliVector& b) {
  if (a.p != b.p || a.x.size() != b.x.size())
    throw std::invalid_argument("symplectic_product: shape mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < a.x.size(); ++i) {
    acc = addm(acc, mulm(a.x[i], b.z[i], a.p), a.p);
    acc = subm(acc, mulm(a.z[i], b.x[i], a.p), a.p);
  }
  return acc;
}

Matrix symplectic_form(size_t m, uint64_t p) {
  Matrix j(2 * m, 2 * m, p);
  for (size_t i = 0; i < m; ++i) {
    j.set(i, m + i, 1);
    j.set(m + i, i, p - 1);
  }
  return j;
}

bool is_symplectic(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
  Matrix j = symplectic_form(m.rows() / 2, m.modulus());
  return m.transpose().mul(j).mul(m) == j;
}

SymplecticMatrix::SymplecticMatrix(Matrix m) : mat_(std::move(m)), w_(mat_.rows() / 2) {
  if (!is_symplectic(mat_)) throw std::invalid_argument("SymplecticMatrix: M^T J M != J");
}

SymplecticMatrix SymplecticMatrix::identity(size_t m, uint64_t p) {
  Matrix id(2 * m, 2 * m, p);
  for (size_t i = 0; i < 2 * m; ++i) id.set(i, i, 1);
  return SymplecticMatrix(std::move(id));
}

PauliVector SymplecticMatrix::apply(const PauliVector& pv) const {
  if (pv.p != mat_.modulus() || pv.qudits() != w_)
    throw std::invalid_argument("SymplecticMatrix apply: shape mismatch");
  std::vector<uint64_t> in(2 * w_);
  for (size_t i = 0; i < w_; ++i) {
    in[i] = pv.x[i];
    in[w_ + i] = pv.z[i];
  }
  std::vector<uint64_t> out = mat_.mul_vec(in);
  PauliVector res = PauliVector::identity(w_, pv.p);
  for (size_t i = 0; i < w_; ++i) {
    res.x[i] = out[i];
    res.z[i] = out[w_ + i];
  }
  return res;
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  Matrix j = symplectic_form(w_, mat_.modulus());
  // M^{-1} = -J M^T J, since M^T J M = J.
  return SymplecticMatrix(j.mul(mat_.transpose()).mul(j).scaled(mat_.modulus() - 1));
}

SymplecticMatrix SymplecticMatrix::compose(const SymplecticMatrix& o) const {
  return SymplecticMatrix(mat_.mul(o.mat()));
}

PauliVector conjugate(const SymplecticMatrix& c, const PauliVector& pv) { return c.apply(pv); }

namespace {

uint64_t checked_pow(uint64_t base, size_t exp, const char* what) {
  uint64_t r = 1;
  for (size_t i = 0; i < exp; ++i) {
    unsigned __int128 wide = static_cast<unsigned __int128>(r) * base;
    if (wide > UINT64_MAX) throw std::overflow_error(what);
    r = static_cast<uint64_t>(wide);
  }
  return r;
}

}  // namespace

uint64_t symplectic_group_order(size_t m, uint64_t p) {
  unsigned __int128 order = 1;
  for (size_t i = 1; i <= m; ++i) {
    uint64_t p2i = checked_pow(p, 2 * i, "symplectic_group_order overflow");
    unsigned __int128 factor =
        static_cast<unsigned __int128>(p2i - 1) * checked_pow(p, 2 * i - 1, "symplectic_group_order overflow");
    order *= factor;
    if (order > UINT64_MAX) throw std::overflow_error("symplectic_group_order overflow");
  }
  return static_cast<uint64_t>(order);
}

uint64_t pauli_count(size_t m, uint64_t p) { return checked_pow(p, 2 * m, "pauli_count overflow"); }

PauliVector pauli_from_index(size_t m, uint64_t p, uint64_t index) {
  if (index >= pauli_count(m, p)) throw std::out_of_range("pauli_from_index: index out of range");
  PauliVector pv = PauliVector::identity(m, p);
  for (size_t i = 0; i < m; ++i) {
    pv.x[i] = index % p;
    index /= p;
  }
  for (size_t i = 0; i < m; ++i) {
    pv.z[i] = index % p;
    index /= p;
  }
  return pv;
}

PauliVector random_pauli(size_t m, uint64_t p, Rng& rng) {
  PauliVector pv = PauliVector::identity(m, p);
  for (size_t i = 0; i < m; ++i) pv.x[i] = rng.below(p);
  for (size_t i = 0; i < m; ++i) pv.z[i] = rng.below(p);
  return pv;
}

namespace {

// The basis-pair recursion below works in the coordinates of a "remaining
// subspace", represented by a list of row vectors R (of length 2w) that span
// it. At each level the space has even dimension 2r and the restricted form
// is nondegenerate, both invariants preserved by the complement step.

using Vec = std::vector<uint64_t>;
using Rows = std::vector<Vec>;

Vec combine(const Rows& rows, const Vec& coeffs, uint64_t p) {
  Vec out(rows.empty() ? 0 : rows[0].size(), 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (size_t j = 0; j < out.size(); ++j)
      out[j] = addm(out[j], mulm(coeffs[i], rows[i][j], p), p);
  }
  return out;
}

uint64_t form_raw(const Vec& a, const Vec& b, size_t w, uint64_t p) {
  uint64_t acc = 0;
  for (size_t i = 0; i < w; ++i) {
    acc = addm(acc, mulm(a[i], b[w + i], p), p);
    acc = subm(acc, mulm(a[w + i], b[i], p), p);
  }
  return acc;
}

// <v, R_j> for each row j: the linear functional cutting out v's orthogonal
// complement, expressed in R-coordinates.
Vec functional_row(const Rows& rows, const Vec& v, size_t w, uint64_t p) {
  Vec gamma(rows.size());
  for (size_t j = 0; j < rows.size(); ++j) gamma[j] = form_raw(v, rows[j], w, p);
  return gamma;
}

// Nonzero coefficient vector of length r2 from an index in [0, p^r2 - 1):
// base-p digits of index + 1.
Vec nonzero_coeffs(uint64_t index, size_t r2, uint64_t p) {
  Vec c(r2, 0);
  uint64_t k = index + 1;
  for (size_t i = 0; i < r2; ++i) {
    c[i] = k % p;
    k /= p;
  }
  return c;
}

// mu0 with gamma . mu0 = 1: scaled unit vector at gamma's first nonzero slot.
Vec particular_mu(const Vec& gamma, uint64_t p) {
  for (size_t j = 0; j < gamma.size(); ++j) {
    if (gamma[j] != 0) {
      Vec mu(gamma.size(), 0);
      mu[j] = invm(gamma[j], p);
      return mu;
    }
  }
  throw std::logic_error("particular_mu: zero functional (form degenerate)");
}

// Basis of ker(gamma): for each non-pivot slot j, e_j - (gamma_j / gamma_j*) e_j*.
Rows functional_kernel(const Vec& gamma, uint64_t p) {
  size_t pivot = gamma.size();
  for (size_t j = 0; j < gamma.size(); ++j)
    if (gamma[j] != 0) {
      pivot = j;
      break;
    }
  if (pivot == gamma.size()) throw std::logic_error("functional_kernel: zero functional");
  Rows basis;
  uint64_t inv_piv = invm(gamma[pivot], p);
  for (size_t j = 0; j < gamma.size(); ++j) {
    if (j == pivot) continue;
    Vec b(gamma.size(), 0);
    b[j] = 1;
    b[pivot] = negm(mulm(gamma[j], inv_piv, p), p);
    basis.push_back(std::move(b));
  }
  return basis;
}

// Rows spanning {u in span(R) : <v, u> = <w, u> = 0}: the joint kernel of the
// two functionals in R-coordinates, mapped back through R.
Rows complement_rows(const Rows& rows, const Vec& v, const Vec& w_vec, size_t w, uint64_t p) {
  Vec gamma = functional_row(rows, v, w, p);
  Vec delta = functional_row(rows, w_vec, w, p);
  Matrix fun(2, rows.size(), p);
  for (size_t j = 0; j < rows.size(); ++j) {
    fun.set(0, j, gamma[j]);
    fun.set(1, j, delta[j]);
  }
  Matrix ker = fun.nullspace();
  Rows out;
  for (size_t i = 0; i < ker.rows(); ++i) out.push_back(combine(rows, ker.row(i), p));
  if (out.size() != rows.size() - 2)
    throw std::logic_error("complement_rows: unexpected complement dimension");
  return out;
}

struct PairChain {
  std::vector<Vec> vs, ws;
};

Matrix chain_to_matrix(const PairChain& chain, size_t w, uint64_t p) {
  Matrix m(2 * w, 2 * w, p);
  for (size_t i = 0; i < w; ++i) {
    for (size_t r = 0; r < 2 * w; ++r) {
      m.set(r, i, chain.vs[i][r]);
      m.set(r, w + i, chain.ws[i][r]);
    }
  }
  return m;
}

Rows full_space_rows(size_t w, uint64_t p) {
  Rows rows(2 * w, Vec(2 * w, 0));
  for (size_t i = 0; i < 2 * w; ++i) rows[i][i] = 1;
  (void)p;
  return rows;
}

void sample_chain(const Rows& rows, size_t w, uint64_t p, Rng& rng, PairChain& chain) {
  if (rows.empty()) return;
  size_t r2 = rows.size();
  uint64_t v_choices = checked_pow(p, r2, "symplectic sampling overflow") - 1;
  Vec lam = nonzero_coeffs(rng.below(v_choices), r2, p);
  Vec v = combine(rows, lam, p);
  Vec gamma = functional_row(rows, v, w, p);
  Vec mu = particular_mu(gamma, p);
  Rows ker = functional_kernel(gamma, p);
  for (const Vec& kb : ker) {
    uint64_t c = rng.below(p);
    if (c == 0) continue;
    for (size_t j = 0; j < mu.size(); ++j) mu[j] = addm(mu[j], mulm(c, kb[j], p), p);
  }
  Vec wv = combine(rows, mu, p);
  Rows rest = complement_rows(rows, v, wv, w, p);
  chain.vs.push_back(std::move(v));
  chain.ws.push_back(std::move(wv));
  sample_chain(rest, w, p, rng, chain);
}

void enumerate_chain(const Rows& rows, size_t w, uint64_t p, PairChain& chain,
                     const std::function<void(const SymplecticMatrix&)>& fn) {
  if (rows.empty()) {
    fn(SymplecticMatrix(chain_to_matrix(chain, w, p)));
    return;
  }
  size_t r2 = rows.size();
  uint64_t v_choices = checked_pow(p, r2, "symplectic enumeration overflow") - 1;
  uint64_t w_choices = checked_pow(p, r2 - 1, "symplectic enumeration overflow");
  for (uint64_t vi = 0; vi < v_choices; ++vi) {
    Vec lam = nonzero_coeffs(vi, r2, p);
    Vec v = combine(rows, lam, p);
    Vec gamma = functional_row(rows, v, w, p);
    Vec mu0 = particular_mu(gamma, p);
    Rows ker = functional_kernel(gamma, p);
    for (uint64_t wi = 0; wi < w_choices; ++wi) {
      Vec mu = mu0;
      uint64_t k = wi;
      for (const Vec& kb : ker) {
        uint64_t c = k % p;
        k /= p;
        if (c == 0) continue;
        for (size_t j = 0; j < mu.size(); ++j) mu[j] = addm(mu[j], mulm(c, kb[j], p), p);
      }
      Vec wv = combine(rows, mu, p);
      Rows rest = complement_rows(rows, v, wv, w, p);
      chain.vs.push_back(v);
      chain.ws.push_back(wv);
      enumerate_chain(rest, w, p, chain, fn);
      chain.vs.pop_back();
      chain.ws.pop_back();
    }
  }
}

}  // namespace

SymplecticMatrix random_symplectic(size_t m, uint64_t p, Rng& rng) {
  if (m == 0) throw std::invalid_argument("random_symplectic: m must be positive");
  PairChain chain;
  sample_chain(full_space_rows(m, p), m, p, rng, chain);
  return SymplecticMatrix(chain_to_matrix(chain, m, p));
}

void enumerate_symplectic(size_t m, uint64_t p,
                          const std::function<void(const SymplecticMatrix&)>& fn) {
  if (m == 0) throw std::invalid_argument("enumerate_symplectic: m must be positive");
  PairChain chain;
  enumerate_chain(full_space_rows(m, p), m, p, chain, fn);
}

}  // namespace aqecc
