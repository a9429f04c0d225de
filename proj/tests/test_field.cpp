#include "aqecc/field.hpp"

#include <stdexcept>

#include "aqecc/rng.hpp"
#include "doctest.h"

using namespace aqecc;

TEST_CASE("primality and next_prime") {
  CHECK(!is_prime(0));
  CHECK(!is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(!is_prime(4));
  CHECK(is_prime(3061));
  CHECK(!is_prime(3063));
  CHECK(next_prime(2) == 2);
  CHECK(next_prime(5) == 5);
  CHECK(next_prime(6) == 7);
  CHECK(next_prime(8) == 11);
  CHECK(next_prime(3050) == 3061);
  CHECK(next_prime(10550) == 10559);
}

TEST_CASE("modular arithmetic over small fields") {
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
    for (uint64_t a = 0; a < p; ++a) {
      CHECK(addm(a, negm(a, p), p) == 0);
      if (a != 0) {
        CHECK(mulm(a, invm(a, p), p) == 1);
        CHECK(powm(a, p - 1, p) == 1);  // Fermat
      }
      for (uint64_t b = 0; b < p; ++b) {
        CHECK(addm(a, b, p) == (a + b) % p);
        CHECK(subm(a, b, p) == (a + p - b) % p);
        CHECK(mulm(a, b, p) == (a * b) % p);
      }
    }
    CHECK_THROWS_AS(invm(0, p), std::invalid_argument);
  }
  CHECK(powm(2, 10, 1009) == 1024 % 1009);
  CHECK(powm(7, 0, 11) == 1);
}

TEST_CASE("field elements carry and enforce their modulus") {
  PrimeField f5(5);
  Fp a = f5.make(3), b = f5.make(4);
  CHECK((a + b).value == 2);
  CHECK((a * b).value == 2);
  CHECK((a - b).value == 4);
  CHECK((a / b).value == mulm(3, invm(4, 5), 5));
  CHECK((-a).value == 2);
  CHECK(a.pow(4).value == 1);
  PrimeField f7(7);
  CHECK_THROWS_AS((void)(a + f7.make(1)), std::invalid_argument);
  CHECK_THROWS_AS((void)(a / f5.make(0)), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
}

TEST_CASE("matrix multiply, transpose, stack against hand values") {
  Matrix a = Matrix::from_rows({{1, 2}, {3, 4}}, 2, 5);
  Matrix b = Matrix::from_rows({{0, 1}, {2, 3}}, 2, 5);
  Matrix ab = a.mul(b);
  CHECK(ab.at(0, 0) == 4);  // 1*0+2*2
  CHECK(ab.at(0, 1) == 2);  // 1*1+2*3 = 7 = 2
  CHECK(ab.at(1, 0) == 3);  // 3*0+4*2 = 8 = 3
  CHECK(ab.at(1, 1) == 0);  // 3*1+4*3 = 15 = 0
  CHECK(a.transpose().at(0, 1) == 3);
  CHECK(a.mul_vec({1, 1}) == std::vector<uint64_t>{3, 2});
  Matrix st = Matrix::vstack(a, b);
  CHECK(st.rows() == 4);
  CHECK(st.at(3, 1) == 3);
  CHECK(a.select_columns({1}).at(1, 0) == 4);
  CHECK(a.add(a) == a.scaled(2));
}

TEST_CASE("rref, rank, nullspace are consistent") {
  Rng rng(11);
  for (uint64_t p : {2ull, 5ull, 7ull}) {
    for (int it = 0; it < 20; ++it) {
      size_t r = 1 + rng.below(4), c = 1 + rng.below(5);
      Matrix m(r, c, p);
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.set(i, j, rng.below(p));
      size_t rk = m.rank();
      Matrix ns = m.nullspace();
      CHECK(rk + ns.rows() == c);  // rank-nullity
      if (ns.rows() > 0) {
        for (size_t i = 0; i < ns.rows(); ++i) {
          std::vector<uint64_t> prod = m.mul_vec(ns.row(i));
          for (uint64_t v : prod) CHECK(v == 0);
        }
      }
    }
  }
}

TEST_CASE("rref_ordered claims pivots in the requested columns first") {
  Matrix m = Matrix::from_rows({{1, 1, 1}, {0, 1, 2}}, 3, 3);
  Matrix c = m;
  std::vector<size_t> piv = c.rref_ordered({2, 1, 0});
  REQUIRE(piv.size() == 2);
  CHECK(piv[0] == 2);
  CHECK(piv[1] == 1);
}

TEST_CASE("gaussian_solve distinguishes unique, affine and inconsistent") {
  Matrix a = Matrix::from_rows({{1, 1}, {1, 2}}, 2, 5);
  LinearSolution s = gaussian_solve(a, {3, 4});
  REQUIRE(s.kind == LinearSolution::Kind::unique);
  CHECK(a.mul_vec(s.particular) == std::vector<uint64_t>{3, 4});

  Matrix b = Matrix::from_rows({{1, 1}, {2, 2}}, 2, 5);
  // Row 2 is twice row 1, so the system is consistent only when rhs2 = 2*rhs1.
  LinearSolution s2 = gaussian_solve(b, {3, 0});
  CHECK(s2.kind == LinearSolution::Kind::inconsistent);

  LinearSolution s3 = gaussian_solve(b, {3, 6 % 5});
  REQUIRE(s3.kind == LinearSolution::Kind::affine);
  CHECK(s3.nullspace.rows() == 1);
  CHECK(b.mul_vec(s3.particular) == std::vector<uint64_t>{3, 1});
}

TEST_CASE("matrix_inverse round trips and rejects singular input") {
  Rng rng(3);
  for (uint64_t p : {3ull, 7ull}) {
    for (int it = 0; it < 10; ++it) {
      size_t n = 1 + rng.below(4);
      Matrix m(n, n, p);
      do {
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) m.set(i, j, rng.below(p));
      } while (m.rank() < n);
      CHECK(m.mul(matrix_inverse(m)) == Matrix::identity(n, p));
    }
  }
  Matrix sing = Matrix::from_rows({{1, 2}, {2, 4}}, 2, 5);
  CHECK_THROWS_AS(matrix_inverse(sing), std::invalid_argument);
}

TEST_CASE("lagrange interpolation recovers the polynomial and flags outliers") {
  // f(x) = 2 + 3x + x^2 over GF(7), degree bound 2.
  std::vector<uint64_t> coeffs{2, 3, 1};
  std::vector<std::pair<uint64_t, uint64_t>> pts;
  for (uint64_t x = 1; x <= 5; ++x) pts.push_back({x, poly_eval(coeffs, x, 7)});
  auto got = lagrange_interpolate(pts, 2, 7);
  REQUIRE(got.has_value());
  CHECK(*got == coeffs);

  pts[4].second = addm(pts[4].second, 1, 7);  // a later point off the curve
  CHECK(!lagrange_interpolate(pts, 2, 7).has_value());

  std::vector<std::pair<uint64_t, uint64_t>> dup{{1, 2}, {1, 3}, {2, 0}};
  CHECK_THROWS_AS(lagrange_interpolate(dup, 1, 7), std::invalid_argument);
  CHECK_THROWS_AS(lagrange_interpolate({{1, 2}}, 1, 7), std::invalid_argument);
}

TEST_CASE("vandermonde matches poly_eval") {
  std::vector<uint64_t> xs{1, 2, 4};
  Matrix v = vandermonde(xs, 3, 5);
  std::vector<uint64_t> coeffs{3, 1, 2};
  std::vector<uint64_t> ev = v.mul_vec(coeffs);
  for (size_t i = 0; i < xs.size(); ++i) CHECK(ev[i] == poly_eval(coeffs, xs[i], 5));
  CHECK(v.at(2, 0) == 1);  // x^0
  CHECK(v.at(2, 2) == 16 % 5);
}
