#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace aqecc {

// Exact arithmetic over prime fields GF(p). Everything here is desk-scale:
// values are uint64_t with p < 2^32 so products never overflow, and all
// eliminations are exact (no floating point anywhere).

bool is_prime(uint64_t n);
uint64_t next_prime(uint64_t n);  // smallest prime >= n

// Raw modular helpers; operands must already be reduced mod p.
uint64_t addm(uint64_t a, uint64_t b, uint64_t p);
uint64_t subm(uint64_t a, uint64_t b, uint64_t p);
uint64_t mulm(uint64_t a, uint64_t b, uint64_t p);
uint64_t powm(uint64_t a, uint64_t e, uint64_t p);
uint64_t invm(uint64_t a, uint64_t p);  // throws on a == 0
uint64_t negm(uint64_t a, uint64_t p);

// A field element carrying its modulus. Operations on elements of different
// fields throw; division by zero throws.
struct Fp {
  uint64_t value = 0;
  uint64_t p = 2;

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator/(const Fp& o) const;
  Fp operator-() const;
  Fp inv() const;
  Fp pow(uint64_t e) const;
  bool operator==(const Fp& o) const { return value == o.value && p == o.p; }
  bool operator!=(const Fp& o) const { return !(*this == o); }
};

class PrimeField {
 public:
  // Throws std::invalid_argument unless p is prime (and p < 2^32).
  explicit PrimeField(uint64_t p);
  uint64_t modulus() const { return p_; }
  Fp make(uint64_t v) const { return Fp{v % p_, p_}; }

 private:
  uint64_t p_;
};

// Dense row-major matrix over GF(p). Rows and columns are 0-based.
class Matrix {
 public:
  Matrix(size_t rows, size_t cols, uint64_t p);
  static Matrix identity(size_t n, uint64_t p);
  static Matrix from_rows(const std::vector<std::vector<uint64_t>>& rows, size_t cols, uint64_t p);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint64_t modulus() const { return p_; }

  uint64_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint64_t v) { a_[r * cols_ + c] = v % p_; }

  std::vector<uint64_t> row(size_t r) const;

  Matrix mul(const Matrix& o) const;
  std::vector<uint64_t> mul_vec(const std::vector<uint64_t>& v) const;  // A * v
  Matrix transpose() const;
  Matrix select_columns(const std::vector<size_t>& cols) const;
  static Matrix vstack(const Matrix& top, const Matrix& bottom);
  Matrix scaled(uint64_t c) const;
  Matrix add(const Matrix& o) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // In-place Gauss-Jordan reduction. Returns the pivot columns in the order
  // they were claimed. rref_ordered processes candidate columns in the given
  // order (used to force pivots into a chosen set of positions first).
  std::vector<size_t> rref();
  std::vector<size_t> rref_ordered(const std::vector<size_t>& col_order);

  size_t rank() const;
  // Rows form a canonical basis of {x : A x = 0}.
  Matrix nullspace() const;

 private:
  size_t rows_, cols_;
  uint64_t p_;
  std::vector<uint64_t> a_;
};

struct LinearSolution {
  enum class Kind { unique, affine, inconsistent };
  Kind kind = Kind::inconsistent;
  std::vector<uint64_t> particular;  // empty when inconsistent
  Matrix nullspace;                  // rows = basis of the solution space's direction
};

// Solve A x = b over GF(p). Distinguishes a unique solution, an affine
// solution set (particular + nullspace basis), and inconsistency.
LinearSolution gaussian_solve(const Matrix& a, const std::vector<uint64_t>& b);

// Inverse of a square matrix; throws std::invalid_argument if singular.
Matrix matrix_inverse(const Matrix& a);

// Interpolate the unique polynomial of degree <= degree_bound through the
// first degree_bound+1 points, then check the remaining points against it.
// Returns the degree_bound+1 coefficients (constant term first), or nullopt
// if some remaining point is off the polynomial. Throws on duplicate x or
// too few points.
std::optional<std::vector<uint64_t>> lagrange_interpolate(
    const std::vector<std::pair<uint64_t, uint64_t>>& points, size_t degree_bound, uint64_t p);

// n x width matrix with entry (i, j) = xs[i]^j (0^0 = 1).
Matrix vandermonde(const std::vector<uint64_t>& xs, size_t width, uint64_t p);

uint64_t poly_eval(const std::vector<uint64_t>& coeffs, uint64_t x, uint64_t p);

}  // namespace aqecc
