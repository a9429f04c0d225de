#include "aqecc/field.hpp"

#include <stdexcept>
#include <string>

namespace aqecc {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

uint64_t next_prime(uint64_t n) {
  if (n <= 2) return 2;
  uint64_t c = n | 1;  // first odd >= n
  while (!is_prime(c)) c += 2;
  return c;
}

uint64_t addm(uint64_t a, uint64_t b, uint64_t p) { return (a + b) % p; }
uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return (a + p - b) % p; }
uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }
uint64_t negm(uint64_t a, uint64_t p) { return a == 0 ? 0 : p - a; }

uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invm(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("invm: zero has no inverse");
  // Extended Euclid on (a, p); p prime so gcd is 1.
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(p), new_r = static_cast<int64_t>(a);
  while (new_r != 0) {
    int64_t q = r / new_r;
    int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

namespace {

void require_same_field(const Fp& a, const Fp& b) {
  if (a.p != b.p) throw std::invalid_argument("Fp: mixed moduli");
}

}  // namespace

Fp Fp::operator+(const Fp& o) const {
  require_same_field(*this, o);
  return Fp{addm(value, o.value, p), p};
}
Fp Fp::operator-(const Fp& o) const {
  require_same_field(*this, o);
  return Fp{subm(value, o.value, p), p};
}
Fp Fp::operator*(const Fp& o) const {
  require_same_field(*this, o);
  return Fp{mulm(value, o.value, p), p};
}
Fp Fp::operator/(const Fp& o) const {
  require_same_field(*this, o);
  return Fp{mulm(value, invm(o.value, p), p), p};
}
Fp Fp::operator-() const { return Fp{negm(value, p), p}; }
Fp Fp::inv() const { return Fp{invm(value, p), p}; }
Fp Fp::pow(uint64_t e) const { return Fp{powm(value, e, p), p}; }

PrimeField::PrimeField(uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  if (p >= (1ull << 32)) throw std::invalid_argument("PrimeField: modulus must fit in 32 bits");
}

Matrix::Matrix(size_t rows, size_t cols, uint64_t p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
  if (p < 2 || p >= (1ull << 32)) throw std::invalid_argument("Matrix: bad modulus");
}

Matrix Matrix::identity(size_t n, uint64_t p) {
  Matrix m(n, n, p);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<uint64_t>>& rows, size_t cols, uint64_t p) {
  Matrix m(rows.size(), cols, p);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

std::vector<uint64_t> Matrix::row(size_t r) const {
  return std::vector<uint64_t>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

Matrix Matrix::mul(const Matrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("Matrix::mul: shape/modulus mismatch");
  Matrix out(rows_, o.cols_, p_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const uint64_t aik = at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        out.a_[i * o.cols_ + j] = (out.a_[i * o.cols_ + j] + aik * o.at(k, j)) % p_;
      }
    }
  }
  return out;
}

std::vector<uint64_t> Matrix::mul_vec(const std::vector<uint64_t>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix::mul_vec: length mismatch");
  std::vector<uint64_t> out(rows_, 0);
  for (size_t i = 0; i < rows_; ++i) {
    uint64_t acc = 0;
    for (size_t j = 0; j < cols_; ++j) acc = (acc + at(i, j) * v[j]) % p_;
    out[i] = acc;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, p_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

Matrix Matrix::select_columns(const std::vector<size_t>& cols) const {
  Matrix out(rows_, cols.size(), p_);
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw std::out_of_range("Matrix::select_columns");
    for (size_t i = 0; i < rows_; ++i) out.set(i, j, at(i, cols[j]));
  }
  return out;
}

Matrix Matrix::vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols_ != bottom.cols_ || top.p_ != bottom.p_)
    throw std::invalid_argument("Matrix::vstack: shape/modulus mismatch");
  Matrix out(top.rows_ + bottom.rows_, top.cols_, top.p_);
  for (size_t i = 0; i < top.rows_; ++i)
    for (size_t j = 0; j < top.cols_; ++j) out.set(i, j, top.at(i, j));
  for (size_t i = 0; i < bottom.rows_; ++i)
    for (size_t j = 0; j < top.cols_; ++j) out.set(top.rows_ + i, j, bottom.at(i, j));
  return out;
}

Matrix Matrix::scaled(uint64_t c) const {
  Matrix out = *this;
  for (auto& v : out.a_) v = (v * (c % p_)) % p_;
  return out;
}

Matrix Matrix::add(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
    throw std::invalid_argument("Matrix::add: shape/modulus mismatch");
  Matrix out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = (a_[i] + o.a_[i]) % p_;
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
}

std::vector<size_t> Matrix::rref() {
  std::vector<size_t> order(cols_);
  for (size_t j = 0; j < cols_; ++j) order[j] = j;
  return rref_ordered(order);
}

std::vector<size_t> Matrix::rref_ordered(const std::vector<size_t>& col_order) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t oj = 0; oj < col_order.size() && r < rows_; ++oj) {
    const size_t c = col_order[oj];
    size_t sel = r;
    while (sel < rows_ && at(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r) {
      for (size_t j = 0; j < cols_; ++j) std::swap(a_[sel * cols_ + j], a_[r * cols_ + j]);
    }
    const uint64_t inv = invm(at(r, c), p_);
    for (size_t j = 0; j < cols_; ++j) a_[r * cols_ + j] = (a_[r * cols_ + j] * inv) % p_;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const uint64_t f = at(i, c);
      if (f == 0) continue;
      for (size_t j = 0; j < cols_; ++j) {
        a_[i * cols_ + j] = subm(a_[i * cols_ + j], mulm(f, a_[r * cols_ + j], p_), p_);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t Matrix::rank() const {
  Matrix m = *this;
  return m.rref().size();
}

Matrix Matrix::nullspace() const {
  Matrix m = *this;
  const std::vector<size_t> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(free_cols.size(), cols_, p_);
  for (size_t b = 0; b < free_cols.size(); ++b) {
    const size_t f = free_cols[b];
    basis.set(b, f, 1);
    for (size_t i = 0; i < pivots.size(); ++i) {
      // pivot row i has a 1 at pivots[i]; x[pivots[i]] = -m(i, f) * x[f]
      basis.set(b, pivots[i], negm(m.at(i, f), p_));
    }
  }
  return basis;
}

LinearSolution gaussian_solve(const Matrix& a, const std::vector<uint64_t>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("gaussian_solve: rhs length mismatch");
  const uint64_t p = a.modulus();
  Matrix aug(a.rows(), a.cols() + 1, p);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
    aug.set(i, a.cols(), b[i]);
  }
  // Keep the rhs column out of the pivot hunt.
  std::vector<size_t> order(a.cols());
  for (size_t j = 0; j < a.cols(); ++j) order[j] = j;
  const std::vector<size_t> pivots = aug.rref_ordered(order);

  // Inconsistent iff some row is (0 ... 0 | nonzero).
  for (size_t i = 0; i < a.rows(); ++i) {
    bool all_zero = true;
    for (size_t j = 0; j < a.cols(); ++j) {
      if (aug.at(i, j) != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero && aug.at(i, a.cols()) != 0) {
      return LinearSolution{LinearSolution::Kind::inconsistent, {}, Matrix(0, a.cols(), p)};
    }
  }

  std::vector<uint64_t> particular(a.cols(), 0);
  for (size_t i = 0; i < pivots.size(); ++i) particular[pivots[i]] = aug.at(i, a.cols());

  Matrix null = a.nullspace();
  const auto kind =
      (pivots.size() == a.cols()) ? LinearSolution::Kind::unique : LinearSolution::Kind::affine;
  return LinearSolution{kind, std::move(particular), std::move(null)};
}

Matrix matrix_inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_inverse: matrix not square");
  const size_t n = a.rows();
  const uint64_t p = a.modulus();
  Matrix aug(n, 2 * n, p);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.set(i, j, a.at(i, j));
    aug.set(i, n + i, 1);
  }
  std::vector<size_t> order(n);
  for (size_t j = 0; j < n; ++j) order[j] = j;
  const std::vector<size_t> pivots = aug.rref_ordered(order);
  if (pivots.size() != n) throw std::invalid_argument("matrix_inverse: singular matrix");
  Matrix inv(n, n, p);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.set(i, j, aug.at(i, n + j));
  return inv;
}

std::optional<std::vector<uint64_t>> lagrange_interpolate(
    const std::vector<std::pair<uint64_t, uint64_t>>& points, size_t degree_bound, uint64_t p) {
  const size_t need = degree_bound + 1;
  if (points.size() < need)
    throw std::invalid_argument("lagrange_interpolate: need at least degree_bound+1 points");
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].first % p == points[j].first % p)
        throw std::invalid_argument("lagrange_interpolate: duplicate evaluation point");
    }
  }

  // Lagrange basis on the first `need` points, accumulated in coefficient form.
  std::vector<uint64_t> coeffs(need, 0);
  for (size_t i = 0; i < need; ++i) {
    // numerator polynomial prod_{j != i} (x - x_j), denominator prod (x_i - x_j)
    std::vector<uint64_t> num(1, 1);
    uint64_t den = 1;
    const uint64_t xi = points[i].first % p;
    for (size_t j = 0; j < need; ++j) {
      if (j == i) continue;
      const uint64_t xj = points[j].first % p;
      // num *= (x - xj)
      std::vector<uint64_t> next(num.size() + 1, 0);
      for (size_t k = 0; k < num.size(); ++k) {
        next[k + 1] = addm(next[k + 1], num[k], p);
        next[k] = addm(next[k], mulm(num[k], negm(xj, p), p), p);
      }
      num = std::move(next);
      den = mulm(den, subm(xi, xj, p), p);
    }
    const uint64_t scale = mulm(points[i].second % p, invm(den, p), p);
    for (size_t k = 0; k < num.size(); ++k) coeffs[k] = addm(coeffs[k], mulm(num[k], scale, p), p);
  }

  for (size_t i = need; i < points.size(); ++i) {
    if (poly_eval(coeffs, points[i].first, p) != points[i].second % p) return std::nullopt;
  }
  return coeffs;
}

Matrix vandermonde(const std::vector<uint64_t>& xs, size_t width, uint64_t p) {
  Matrix m(xs.size(), width, p);
  for (size_t i = 0; i < xs.size(); ++i) {
    uint64_t pw = 1;
    for (size_t j = 0; j < width; ++j) {
      m.set(i, j, pw);
      pw = mulm(pw, xs[i] % p, p);
    }
  }
  return m;
}

uint64_t poly_eval(const std::vector<uint64_t>& coeffs, uint64_t x, uint64_t p) {
  uint64_t acc = 0;
  const uint64_t xr = x % p;
  for (size_t k = coeffs.size(); k-- > 0;) acc = addm(mulm(acc, xr, p), coeffs[k] % p, p);
  return acc;
}

}  // namespace aqecc
