#pragma once

// Test-only helpers: independent oracles (cofactor characteristic
// polynomial, brute-force set-family scans), projective enumeration of a
// subspace, and structured instance generators for the combination
// procedures.  Everything here is deliberately written against different
// algorithms than the library uses.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helly/helly.hpp"

namespace testsupport {

using namespace helly;

/// det(xI - a) by recursive cofactor expansion over polynomial entries.
/// Exponential, test-only; independent of the Berkowitz implementation.
inline Polynomial charpoly_cofactor(const Matrix& a) {
  const FieldSpec& field = a.field();
  const std::size_t n = a.rows();
  const Polynomial zero(field, {});
  const Polynomial x(field, {Scalar::zero(field), Scalar::one(field)});

  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial entry(field, {-a.at(i, j)});
      if (i == j) entry = entry + x;
      m[i][j] = entry;
    }
  }

  auto det = [&](auto&& self, const std::vector<std::vector<Polynomial>>& mat) -> Polynomial {
    const std::size_t k = mat.size();
    if (k == 0) return Polynomial(field, {Scalar::one(field)});
    if (k == 1) return mat[0][0];
    Polynomial acc(field, {});
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::vector<Polynomial>> minor;
      for (std::size_t r = 1; r < k; ++r) {
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < k; ++c) {
          if (c != j) row.push_back(mat[r][c]);
        }
        minor.push_back(std::move(row));
      }
      Polynomial term = mat[0][j] * self(self, minor);
      if (j % 2 == 1) term = term * Scalar(field, -1);
      acc = acc + term;
    }
    return acc;
  };
  return det(det, m);
}

/// All non-empty subsets of [p] as ascending element lists in true
/// lexicographic order ({1} < {1,2} < {1,3} < {2} ...), built by sorting.
inline std::vector<std::vector<int>> all_subsets_lex(int p) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    std::vector<int> elems;
    for (int i = 0; i < p; ++i) {
      if (mask >> i & 1) elems.push_back(i + 1);
    }
    out.push_back(std::move(elems));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool subset_violates(const SetFamily& fam, const std::vector<int>& index_set) {
  SetMask uni = 0;
  for (int i : index_set) uni |= fam.members()[i - 1];
  if (uni == full_mask(fam.q())) return false;
  for (int skip : index_set) {
    SetMask partial = 0;
    for (int i : index_set) {
      if (i != skip) partial |= fam.members()[i - 1];
    }
    if (partial != uni) return false;
  }
  return true;
}

/// Oracle for lemma_condition_holds: first violating subset in the sorted
/// lexicographic list, or nullopt.
inline std::optional<std::vector<int>> first_violating_lex(const SetFamily& fam) {
  for (const auto& subset : all_subsets_lex(static_cast<int>(fam.size()))) {
    if (subset_violates(fam, subset)) return subset;
  }
  return std::nullopt;
}

/// Oracle for find_redundant_union_witness: first violating subset by
/// (size, lex) order, generated recursively.
inline std::optional<std::vector<int>> first_violating_by_size(const SetFamily& fam) {
  const int p = static_cast<int>(fam.size());
  std::vector<int> chosen;
  std::optional<std::vector<int>> found;
  auto rec = [&](auto&& self, int next, int remaining) -> void {
    if (found) return;
    if (remaining == 0) {
      if (subset_violates(fam, chosen)) found = chosen;
      return;
    }
    for (int i = next; i + remaining - 1 <= p; ++i) {
      chosen.push_back(i);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
      if (found) return;
    }
  };
  for (int size = 1; size <= p && !found; ++size) rec(rec, 1, size);
  return found;
}

inline std::vector<int> witness_elements(SetMask mask) { return mask_elements(mask); }

/// All projective points lying inside a subspace, as canonical vectors
/// (first nonzero coordinate 1), sorted by their formatted text.
inline std::vector<std::string> projective_points_in(const Subspace& s) {
  const FieldSpec& field = s.field();
  const std::int64_t p = field.modulus();
  std::vector<std::string> out;
  std::vector<std::int64_t> digits(s.dim(), 0);
  auto format = [](const Vector& v) {
    std::string t;
    for (const Scalar& c : v) t += c.format() + ",";
    return t;
  };
  if (s.dim() == 0) return out;
  while (true) {
    Vector v(s.ambient_dim(), Scalar::zero(field));
    for (std::size_t r = 0; r < s.dim(); ++r) {
      Scalar c(field, digits[r]);
      for (std::size_t j = 0; j < s.ambient_dim(); ++j) {
        v[j] += c * s.basis().at(r, j);
      }
    }
    std::size_t lead = v.size();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) { lead = j; break; }
    }
    if (lead != v.size()) {
      Scalar inv = v[lead].inv();
      for (Scalar& c : v) c *= inv;
      out.push_back(format(v));
    }
    bool advanced = false;
    std::size_t t = digits.size();
    while (t-- > 0) {
      if (digits[t] + 1 < p) {
        ++digits[t];
        for (std::size_t u = t + 1; u < digits.size(); ++u) digits[u] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::string> format_points(const std::vector<Vector>& points) {
  std::vector<std::string> out;
  for (const Vector& v : points) {
    std::string t;
    for (const Scalar& c : v) t += c.format() + ",";
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// An instance for the leave-one-out combination procedure that exercises
/// the non-singleton path: the lower-bound family with its first operator
/// dropped, padded with scalar operators, conjugated by a seeded change of
/// basis and operator-permuted.  Witness for a surviving family member A_j
/// is e_{j+f(j)}; witness for a scalar operator is e_{1+f(1)}, a common
/// eigenvector of every survivor.  The pair-sum vectors e_{3i} among the
/// witnesses give supports of size two.
struct CombinationInstance {
  OperatorFamily family;
  std::vector<Vector> witnesses;
};

inline CombinationInstance make_combination_instance(std::size_t d, const FieldSpec& field,
                                                     std::size_t n, std::uint64_t seed) {
  const std::size_t threshold = 3 * d / 2 + 1;
  if (n < threshold) throw input_error("instance size below the combination threshold");
  static std::map<std::pair<std::size_t, std::int64_t>, OperatorFamily> cache;
  auto key = std::make_pair(d, field.is_prime_field() ? field.modulus() : std::int64_t{0});
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, build_sharpness_family(d, field)).first;
  }
  const OperatorFamily& base = it->second;
  SharpnessSpec spec = build_sharpness_spec(d / 2, field);  // even block of the construction

  std::mt19937_64 rng(seed);
  auto rand_scalar = [&](bool nonzero) {
    while (true) {
      Scalar s = field.is_prime_field()
                     ? Scalar(field, bigint(rng() % static_cast<std::uint64_t>(field.modulus())))
                     : Scalar(field, bigint(static_cast<std::int64_t>(rng() % 19) - 9));
      if (!nonzero || !s.is_zero()) return s;
    }
  };
  Matrix p_mat(field, d, d);
  do {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) p_mat.at(i, j) = rand_scalar(false);
    }
  } while (rank(p_mat) != d);
  Matrix p_inv = inverse(p_mat);

  // Survivors of the base family (first operator dropped) with the paper's
  // per-position witnesses, then scalar padding.
  std::vector<NamedOperator> ops;
  std::vector<Vector> raw_witnesses;
  auto e_of = [&](std::size_t j) {  // e_{j + f(j)} in ambient dimension d
    std::size_t partner = static_cast<std::size_t>(static_cast<int>(j) + SharpnessSpec::f(j));
    Vector v = spec.e[partner - 1];
    v.resize(d, Scalar::zero(field));
    return v;
  };
  const std::size_t even_count = 3 * (d / 2);
  for (std::size_t j = 2; j <= base.size(); ++j) {
    ops.push_back(base[j - 1]);
    // The odd construction appends one operator past the even block; its
    // witness is the survivors' common eigenvector e_{1+f(1)}.
    raw_witnesses.push_back(j <= even_count ? e_of(j) : e_of(1));
  }
  while (ops.size() < n) {
    Matrix scalar_op = Matrix::identity(field, d) * rand_scalar(true);
    ops.push_back({"S" + std::to_string(ops.size()), std::move(scalar_op)});
    Vector w = e_of(1);
    Scalar c = rand_scalar(true);
    for (Scalar& x : w) x *= c;
    raw_witnesses.push_back(std::move(w));
  }

  // Seeded permutation, then conjugation by P.
  std::vector<std::size_t> order(ops.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i-- > 1;) {
    std::swap(order[i], order[rng() % (i + 1)]);
  }
  std::vector<NamedOperator> final_ops;
  std::vector<Vector> final_witnesses;
  for (std::size_t i = 0; i < order.size(); ++i) {
    final_ops.push_back({"A" + std::to_string(i + 1),
                         p_mat * ops[order[i]].matrix * p_inv});
    final_witnesses.push_back(p_mat.apply(raw_witnesses[order[i]]));
  }
  return CombinationInstance{OperatorFamily(field, d, std::move(final_ops)),
                             std::move(final_witnesses)};
}

}  // namespace testsupport
