#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helly/helly.hpp"

using namespace helly;

namespace {

Vector vec(const FieldSpec& field, std::vector<std::int64_t> entries) {
  Vector v;
  for (std::int64_t e : entries) v.emplace_back(field, e);
  return v;
}

Matrix make(const FieldSpec& field, std::vector<std::vector<std::int64_t>> rows) {
  std::vector<Vector> rv;
  for (auto& r : rows) rv.push_back(vec(field, r));
  return Matrix::from_rows(field, rv, rows[0].size());
}

Subspace random_subspace(const FieldSpec& field, std::size_t dim, std::size_t gens,
                         std::mt19937_64& rng) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < gens; ++i) {
    Vector v;
    for (std::size_t j = 0; j < dim; ++j) {
      if (field.is_prime_field()) {
        v.emplace_back(field, bigint(rng() % static_cast<std::uint64_t>(field.modulus())));
      } else {
        v.emplace_back(field, static_cast<std::int64_t>(rng() % 7) - 3);
      }
    }
    rows.push_back(std::move(v));
  }
  return Subspace::span(field, dim, rows);
}

}  // namespace

TEST_CASE("span canonicalizes generators") {
  FieldSpec q = FieldSpec::rationals();
  Subspace a = Subspace::span(q, 2, {vec(q, {2, 0}), vec(q, {0, 3})});
  CHECK(a.is_full());
  Subspace b = Subspace::span(q, 3, {vec(q, {1, 1, 0}), vec(q, {2, 2, 0})});
  CHECK(b.dim() == 1);
  CHECK(b.basis().row(0) == vec(q, {1, 1, 0}));
  // Generator order and scaling do not matter.
  Subspace c1 = Subspace::span(q, 3, {vec(q, {1, 2, 3}), vec(q, {0, 1, 1})});
  Subspace c2 = Subspace::span(q, 3, {vec(q, {0, -2, -2}), vec(q, {2, 4, 6})});
  CHECK(c1 == c2);
  CHECK(Subspace::zero(q, 3).dim() == 0);
  CHECK_FALSE(Subspace::zero(q, 3).is_non_trivial());
  CHECK_FALSE(Subspace::full(q, 3).is_non_trivial());
  CHECK(b.is_non_trivial());
}

TEST_CASE("membership and coordinates") {
  FieldSpec q = FieldSpec::rationals();
  Subspace s = Subspace::span(q, 3, {vec(q, {1, 0, 1}), vec(q, {0, 1, 1})});
  CHECK(s.contains(vec(q, {2, 3, 5})));
  CHECK_FALSE(s.contains(vec(q, {1, 0, 0})));
  auto coords = s.coordinates(vec(q, {2, 3, 5}));
  REQUIRE(coords.has_value());
  Vector rebuilt(3, Scalar::zero(q));
  for (std::size_t i = 0; i < coords->size(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      rebuilt[j] += (*coords)[i] * s.basis().at(i, j);
    }
  }
  CHECK(rebuilt == vec(q, {2, 3, 5}));
  CHECK_FALSE(s.coordinates(vec(q, {1, 0, 0})).has_value());
  CHECK(s.contains(Subspace::span(q, 3, {vec(q, {1, 1, 2})})));
  CHECK_FALSE(s.contains(Subspace::full(q, 3)));
}

TEST_CASE("sum and intersection satisfy the dimension formula") {
  std::mt19937_64 rng(3);
  for (FieldSpec field : {FieldSpec::gf(2), FieldSpec::gf(5), FieldSpec::rationals()}) {
    for (int trial = 0; trial < 40; ++trial) {
      Subspace u = random_subspace(field, 4, rng() % 4, rng);
      Subspace w = random_subspace(field, 4, rng() % 4, rng);
      Subspace sum = u.sum(w);
      Subspace meet = u.intersect(w);
      CHECK(sum.dim() + meet.dim() == u.dim() + w.dim());
      CHECK(sum.contains(u));
      CHECK(sum.contains(w));
      CHECK(u.contains(meet));
      CHECK(w.contains(meet));
    }
  }
}

TEST_CASE("intersection fixture") {
  FieldSpec q = FieldSpec::rationals();
  Subspace u = Subspace::span(q, 3, {vec(q, {1, 0, 0}), vec(q, {0, 1, 0})});
  Subspace w = Subspace::span(q, 3, {vec(q, {0, 1, 0}), vec(q, {0, 0, 1})});
  Subspace meet = u.intersect(w);
  CHECK(meet.dim() == 1);
  CHECK(meet.basis().row(0) == vec(q, {0, 1, 0}));
}

TEST_CASE("invariance and operator restriction") {
  FieldSpec q = FieldSpec::rationals();
  Matrix a = make(q, {{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
  Subspace e12 = Subspace::span(q, 3, {vec(q, {1, 0, 0}), vec(q, {0, 1, 0})});
  Subspace e13 = Subspace::span(q, 3, {vec(q, {1, 0, 0}), vec(q, {0, 0, 1})});
  CHECK(is_invariant(a, e12));
  CHECK(is_invariant(a, e13));
  CHECK_FALSE(is_invariant(a, Subspace::span(q, 3, {vec(q, {0, 1, 0})})));
  Matrix r = restrict_operator(a, e12);
  CHECK(r == make(q, {{1, 1}, {0, 1}}));
  CHECK_THROWS_AS(restrict_operator(a, Subspace::span(q, 3, {vec(q, {0, 1, 0})})),
                  input_error);
}

TEST_CASE("eigenvector detection returns the eigenvalue") {
  FieldSpec q = FieldSpec::rationals();
  Matrix a = make(q, {{2, 0}, {0, 3}});
  auto lam = is_eigenvector(a, vec(q, {1, 0}));
  REQUIRE(lam.has_value());
  CHECK(*lam == Scalar(q, 2));
  CHECK_FALSE(is_eigenvector(a, vec(q, {1, 1})).has_value());
  CHECK_THROWS_AS(is_eigenvector(a, vec(q, {0, 0})), input_error);
}

TEST_CASE("eigenspace decomposition in the field") {
  FieldSpec q = FieldSpec::rationals();
  auto diag = eigen_decomposition_in_field(make(q, {{1, 0}, {0, 2}}));
  REQUIRE(diag.size() == 2);
  CHECK(diag[0].first == Scalar(q, 1));
  CHECK(diag[0].second.basis().row(0) == vec(q, {1, 0}));
  CHECK(diag[1].first == Scalar(q, 2));
  // Jordan block: one eigenvalue, one line.
  auto jordan = eigen_decomposition_in_field(make(q, {{1, 1}, {0, 1}}));
  REQUIRE(jordan.size() == 1);
  CHECK(jordan[0].first == Scalar(q, 1));
  CHECK(jordan[0].second.dim() == 1);
  // Rotation: nothing over Q, two lines over GF(5).
  CHECK(eigen_decomposition_in_field(make(q, {{0, -1}, {1, 0}})).empty());
  FieldSpec f5 = FieldSpec::gf(5);
  auto rot = eigen_decomposition_in_field(make(f5, {{0, -1}, {1, 0}}));
  CHECK(rot.size() == 2);
  for (const auto& [value, space] : rot) {
    CHECK(is_eigenvector(make(f5, {{0, -1}, {1, 0}}), space.basis().row(0)).value() == value);
  }
}

TEST_CASE("eigenspaces are actual eigenspaces on random operators") {
  std::mt19937_64 rng(17);
  for (FieldSpec field : {FieldSpec::gf(2), FieldSpec::gf(3)}) {
    for (int trial = 0; trial < 25; ++trial) {
      Matrix a(field, 3, 3);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          a.at(i, j) = Scalar(field, bigint(rng() % static_cast<std::uint64_t>(field.modulus())));
        }
      }
      for (const auto& [value, space] : eigen_decomposition_in_field(a)) {
        CHECK(space.dim() >= 1);
        for (std::size_t r = 0; r < space.dim(); ++r) {
          Vector v = space.basis().row(r);
          Vector av = a.apply(v);
          for (std::size_t j = 0; j < 3; ++j) CHECK(av[j] == value * v[j]);
        }
        // Maximality: the eigenspace is the full kernel of a - value*I.
        Matrix shifted = a;
        for (std::size_t j = 0; j < 3; ++j) shifted.at(j, j) -= value;
        CHECK(kernel_basis(shifted) == space);
      }
    }
  }
}
