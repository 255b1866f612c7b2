#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace helly;

namespace {

Matrix make(const FieldSpec& field, std::size_t n,
            std::vector<std::vector<std::int64_t>> rows) {
  Matrix m(field, n, rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m.at(i, j) = Scalar(field, rows[i][j]);
    }
  }
  return m;
}

Matrix random_matrix(const FieldSpec& field, std::size_t n, std::mt19937_64& rng) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (field.is_prime_field()) {
        m.at(i, j) = Scalar(field, bigint(rng() % static_cast<std::uint64_t>(field.modulus())));
      } else {
        m.at(i, j) = Scalar(field, static_cast<std::int64_t>(rng() % 11) - 5);
      }
    }
  }
  return m;
}

}  // namespace

TEST_CASE("product, transpose and apply basics") {
  FieldSpec q = FieldSpec::rationals();
  Matrix a = make(q, 2, {{1, 2}, {3, 4}});
  Matrix b = make(q, 2, {{0, 1}, {1, 0}});
  CHECK(a * b == make(q, 2, {{2, 1}, {4, 3}}));
  CHECK(b * a == make(q, 2, {{3, 4}, {1, 2}}));
  CHECK(a.transpose() == make(q, 2, {{1, 3}, {2, 4}}));
  CHECK(a * Matrix::identity(q, 2) == a);
  Vector v = {Scalar(q, 1), Scalar(q, -1)};
  Vector av = a.apply(v);
  CHECK(av[0] == Scalar(q, -1));
  CHECK(av[1] == Scalar(q, -1));
}

TEST_CASE("rref reaches a canonical reduced form") {
  FieldSpec q = FieldSpec::rationals();
  Matrix a = make(q, 3, {{2, 4, 6}, {1, 2, 4}, {0, 0, 2}});
  RrefResult r = rref(a);
  CHECK(r.rank == 2);
  CHECK(r.pivot_columns == std::vector<std::size_t>{0, 2});
  CHECK(r.matrix.at(0, 0).is_one());
  CHECK(r.matrix.at(0, 1) == Scalar(q, 2));
  CHECK(r.matrix.at(0, 2).is_zero());
  CHECK(r.matrix.at(1, 2).is_one());
  // Scaled generators produce the identical reduced matrix.
  Matrix b = make(q, 3, {{1, 2, 3}, {3, 6, 12}, {0, 0, -7}});
  CHECK(rref(a).matrix == rref(b).matrix);
}

TEST_CASE("inverse multiplies back to the identity and rejects singular input") {
  std::mt19937_64 rng(7);
  for (FieldSpec field : {FieldSpec::rationals(), FieldSpec::gf(5)}) {
    for (int trial = 0; trial < 20; ++trial) {
      Matrix m = random_matrix(field, 3, rng);
      if (rank(m) < 3) {
        CHECK_THROWS_AS(inverse(m), input_error);
      } else {
        CHECK(m * inverse(m) == Matrix::identity(field, 3));
        CHECK(inverse(m) * m == Matrix::identity(field, 3));
      }
    }
  }
  FieldSpec q = FieldSpec::rationals();
  CHECK_THROWS_AS(inverse(make(q, 2, {{1, 2}, {2, 4}})), input_error);
}

TEST_CASE("rank plus kernel dimension equals the column count") {
  std::mt19937_64 rng(11);
  for (FieldSpec field : {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 30; ++trial) {
      Matrix m = random_matrix(field, 3, rng);
      Subspace ker = kernel_basis(m);
      CHECK(rank(m) + ker.dim() == 3);
      for (std::size_t r = 0; r < ker.dim(); ++r) {
        Vector v = ker.basis().row(r);
        for (const Scalar& c : m.apply(v)) CHECK(c.is_zero());
      }
    }
  }
}

TEST_CASE("characteristic polynomial fixtures") {
  FieldSpec q = FieldSpec::rationals();
  CHECK(char_poly(make(q, 2, {{0, 1}, {1, 0}})) ==
        Polynomial(q, {Scalar(q, -1), Scalar(q, 0), Scalar(q, 1)}));
  // Companion matrix of x^3 - 2x + 5.
  Matrix comp = make(q, 3, {{0, 0, -5}, {1, 0, 2}, {0, 1, 0}});
  CHECK(char_poly(comp) ==
        Polynomial(q, {Scalar(q, 5), Scalar(q, -2), Scalar(q, 0), Scalar(q, 1)}));
  // Diagonal: product of (x - d_i).
  Matrix diag = make(q, 3, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  Polynomial expected(q, {Scalar::one(q)});
  for (std::int64_t d : {1, 2, 3}) {
    expected = expected * Polynomial(q, {Scalar(q, -d), Scalar::one(q)});
  }
  CHECK(char_poly(diag) == expected);
  FieldSpec f2 = FieldSpec::gf(2);
  CHECK(char_poly(make(f2, 2, {{0, 1}, {1, 0}})) ==
        Polynomial(f2, {Scalar(f2, 1), Scalar(f2, 0), Scalar(f2, 1)}));
}

TEST_CASE("division-free characteristic polynomial matches the cofactor oracle") {
  std::mt19937_64 rng(13);
  for (FieldSpec field : {FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::gf(5),
                          FieldSpec::rationals()}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 8; ++trial) {
        Matrix m = random_matrix(field, n, rng);
        CHECK(char_poly(m) == testsupport::charpoly_cofactor(m));
      }
    }
  }
}

TEST_CASE("full-column-rank solve distinguishes consistent from inconsistent") {
  FieldSpec q = FieldSpec::rationals();
  Matrix a = make(q, 3, {{1, 0}, {0, 1}, {1, 1}});
  Vector b = {Scalar(q, 2), Scalar(q, 3), Scalar(q, 5)};
  auto x = solve_full_column_rank(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Scalar(q, 2));
  CHECK((*x)[1] == Scalar(q, 3));
  Vector bad = {Scalar(q, 2), Scalar(q, 3), Scalar(q, 6)};
  CHECK_FALSE(solve_full_column_rank(a, bad).has_value());
  // Rank-deficient coefficient matrix violates the precondition.
  Matrix low = make(q, 2, {{1, 2}, {2, 4}});
  Vector rhs = {Scalar(q, 1), Scalar(q, 2)};
  CHECK_THROWS_AS(solve_full_column_rank(low, rhs), input_error);
}

TEST_CASE("dimension mismatches are input errors") {
  FieldSpec q = FieldSpec::rationals();
  Matrix a = make(q, 2, {{1, 2}, {3, 4}});
  Matrix b = make(q, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(a * b, input_error);
  Vector v = {Scalar(q, 1)};
  CHECK_THROWS_AS(a.apply(v), input_error);
}
