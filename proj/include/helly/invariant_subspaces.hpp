#pragma once

#include <bit>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helly/budgets.hpp"
#include "helly/errors.hpp"
#include "helly/operator_family.hpp"
#include "helly/set_family.hpp"
#include "helly/subspace.hpp"

namespace helly {

/// Eigenbasis of an operator with d pairwise distinct eigenvalues in K.
/// Such an operator's invariant subspaces are exactly the coordinate spans
/// of this basis, which is what makes support-set extraction possible.
struct DistinctSpectrumBasis {
  std::string operator_name;
  Matrix op;
  // Sorted by eigenvalue in the canonical scalar order; each eigenvector is
  // the canonical (RREF) generator of its 1-dimensional eigenspace.
  std::vector<std::pair<Scalar, Vector>> eigenpairs;
  Matrix change_of_basis;          // columns are the eigenvectors
  Matrix change_of_basis_inverse;  // maps a vector to its eigencoordinates

  std::size_t dim() const { return op.rows(); }

  /// span(v_i : i in mask), as a subspace (mask bits are 0-based here).
  Subspace coordinate_span(SetMask mask) const {
    std::vector<Vector> rows;
    for (int e : mask_elements(mask)) rows.push_back(eigenpairs[e - 1].second);
    return Subspace::span(op.field(), dim(), rows);
  }
};

/// The set of eigenbasis positions spanning an invariant subspace of a
/// distinct-spectrum operator; 1-based, stored as a bitmask compatible with
/// the set-family module.
struct SupportSet {
  SetMask mask = 0;

  std::vector<int> elements() const { return mask_elements(mask); }
  std::string to_string() const { return mask_to_string(mask); }
  bool operator==(const SupportSet& o) const { return mask == o.mask; }
};

/// Returns the eigenbasis when `a` has dim-many distinct eigenvalues in K,
/// nullopt otherwise (repeated eigenvalues or eigenvalues outside K).
inline std::optional<DistinctSpectrumBasis> distinct_spectrum_basis(
    const Matrix& a, const std::string& name = "") {
  if (!a.is_square()) throw input_error("distinct_spectrum_basis: matrix not square");
  const std::size_t d = a.rows();
  auto pairs = eigen_decomposition_in_field(a);
  if (pairs.size() != d) return std::nullopt;
  for (const auto& [value, space] : pairs) {
    if (space.dim() != 1) return std::nullopt;
  }
  DistinctSpectrumBasis basis{name, a, {}, Matrix(a.field(), d, d), Matrix(a.field(), d, d)};
  for (std::size_t j = 0; j < d; ++j) {
    Vector v = pairs[j].second.basis().row(0);
    for (std::size_t i = 0; i < d; ++i) basis.change_of_basis.at(i, j) = v[i];
    basis.eigenpairs.emplace_back(pairs[j].first, std::move(v));
  }
  basis.change_of_basis_inverse = inverse(basis.change_of_basis);
  return basis;
}

/// The unique M with h = span(v_i : i in M), found by collecting nonzero
/// eigencoordinate positions of h's basis rows.  |M| = dim h and the span
/// equality are re-verified; for a checked-invariant h their failure would
/// falsify the coordinate-span property of distinct-spectrum operators.
inline SupportSet invariant_support(const DistinctSpectrumBasis& basis, const Subspace& h) {
  if (h.ambient_dim() != basis.dim()) throw input_error("invariant_support: dimension mismatch");
  if (!h.is_non_trivial()) {
    throw input_error("invariant_support: subspace must be non-trivial");
  }
  if (!is_invariant(basis.op, h)) {
    throw input_error("invariant_support: subspace is not invariant under \"" +
                      basis.operator_name + "\"");
  }
  SetMask mask = 0;
  for (std::size_t r = 0; r < h.dim(); ++r) {
    Vector coords = basis.change_of_basis_inverse.apply(h.basis().row(r));
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!coords[i].is_zero()) mask |= SetMask{1} << i;
    }
  }
  if (static_cast<std::size_t>(std::popcount(mask)) != h.dim() ||
      basis.coordinate_span(mask) != h) {
    throw contradiction_error(
        "invariant subspace of a distinct-spectrum operator is not a "
        "coordinate span of its eigenbasis");
  }
  return SupportSet{mask};
}

/// The final step of the 2d-1 invariant-subspace theorem: given leave-one-out
/// invariant subspaces H_j (H_j invariant under every operator except the
/// j-th non-pivot one), extract their support sets over the eigenbasis of
/// the distinct-spectrum operator, find a redundant-union witness (I, M),
/// and return span(v_i : i in M).
///
/// With at least 2d-1 subspaces the witness exists by the set-family bound,
/// so a search failure there is an input-contract violation; with fewer the
/// witness may legitimately be absent, reported as witness_absent_error.
inline Subspace common_invariant_via_theorem4(const OperatorFamily& fam,
                                              std::size_t a0_index,
                                              const std::vector<Subspace>& leave_one_out,
                                              const Budgets& budgets = Budgets::from_env()) {
  if (a0_index >= fam.size()) throw input_error("a0 index out of range");
  const std::size_t d = fam.dim();
  std::optional<DistinctSpectrumBasis> basis =
      distinct_spectrum_basis(fam[a0_index].matrix, fam[a0_index].name);
  if (!basis) {
    throw input_error("operator \"" + fam[a0_index].name +
                      "\" does not have " + std::to_string(d) +
                      " distinct eigenvalues in the field");
  }
  if (leave_one_out.size() != fam.size() - 1) {
    throw input_error("need exactly one leave-one-out subspace per non-pivot operator");
  }

  // other[j] is the operator index the j-th subspace is exempt from.
  std::vector<std::size_t> other;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (i != a0_index) other.push_back(i);
  }
  for (std::size_t j = 0; j < leave_one_out.size(); ++j) {
    const Subspace& h = leave_one_out[j];
    if (!h.is_non_trivial()) {
      throw input_error("leave-one-out subspace " + std::to_string(j) + " is trivial");
    }
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (i == other[j]) continue;
      if (!is_invariant(fam[i].matrix, h)) {
        throw input_error("leave-one-out subspace " + std::to_string(j) +
                          " is not invariant under \"" + fam[i].name + "\"");
      }
    }
  }

  std::vector<SetMask> members;
  for (const Subspace& h : leave_one_out) {
    members.push_back(invariant_support(*basis, h).mask);
  }
  SetFamily sets(static_cast<int>(d), std::move(members));
  std::optional<UnionWitness> witness = find_redundant_union_witness(sets, budgets);
  if (!witness) {
    if (leave_one_out.size() >= 2 * d - 1) {
      throw input_error(
          "no redundant-union witness despite " + std::to_string(leave_one_out.size()) +
          " support sets over [" + std::to_string(d) +
          "]; inputs violate the leave-one-out contract");
    }
    throw witness_absent_error(
        "no redundant-union witness among " + std::to_string(leave_one_out.size()) +
        " support sets; the 2d-1 guarantee needs at least " + std::to_string(2 * d - 1));
  }

  Subspace result = basis->coordinate_span(witness->union_set);
  if (!result.is_non_trivial()) {
    throw contradiction_error("redundant-union span is trivial");
  }
  for (const NamedOperator& op : fam.operators()) {
    if (!is_invariant(op.matrix, result)) {
      throw contradiction_error(
          "combined subspace is not invariant under \"" + op.name +
          "\", contradicting the redundant-union argument");
    }
  }
  return result;
}

/// Greedy spanning subset of the family inside the d^2-dimensional matrix
/// space, plus the exact expansion of every member over it.  At most d^2
/// indices are selected, which is the cardinality behind the d^2 Helly
/// bound for invariant subspaces.
struct LinearBasisResult {
  std::vector<std::size_t> basis_indices;  // ascending
  std::vector<Vector> coefficients;        // one expansion per family member
};

inline LinearBasisResult operator_family_linear_basis(const OperatorFamily& fam) {
  const FieldSpec& field = fam.field();
  const std::size_t d = fam.dim();
  auto flatten = [&](const Matrix& m) {
    Vector v;
    v.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) v.push_back(m.at(i, j));
    }
    return v;
  };

  LinearBasisResult out;
  Subspace spanned = Subspace::zero(field, d * d);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    Vector v = flatten(fam[i].matrix);
    if (!spanned.contains(v)) {
      out.basis_indices.push_back(i);
      spanned = spanned.sum(Subspace::span(field, d * d, {v}));
    }
  }
  Matrix cols(field, d * d, out.basis_indices.size());
  for (std::size_t j = 0; j < out.basis_indices.size(); ++j) {
    Vector v = flatten(fam[out.basis_indices[j]].matrix);
    for (std::size_t r = 0; r < d * d; ++r) cols.at(r, j) = v[r];
  }
  for (std::size_t i = 0; i < fam.size(); ++i) {
    std::optional<Vector> c = solve_full_column_rank(cols, flatten(fam[i].matrix));
    if (!c) throw input_error("internal: family member outside greedy span");
    out.coefficients.push_back(std::move(*c));
  }
  return out;
}

/// Enumerates the canonical RREF bases of all non-trivial subspaces of
/// GF(p)^d: dimension ascending, pivot patterns lexicographic, free entries
/// lexicographic row-major.  visit(subspace) returning false stops early.
template <typename Visit>
inline void for_each_nontrivial_subspace(const FieldSpec& field, std::size_t dim, Visit visit) {
  if (field.kind() != field_kind::prime_field) {
    throw input_error("subspace enumeration requires a finite field");
  }
  const std::int64_t p = field.modulus();
  for (std::size_t k = 1; k < dim; ++k) {
    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    while (true) {
      // Free positions: (row i, col j) with j > pivots[i] and j not a pivot.
      std::vector<bool> is_pivot(dim, false);
      for (std::size_t c : pivots) is_pivot[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free_pos;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = pivots[i] + 1; j < dim; ++j) {
          if (!is_pivot[j]) free_pos.emplace_back(i, j);
        }
      }
      Matrix base(field, k, dim);
      for (std::size_t i = 0; i < k; ++i) base.at(i, pivots[i]) = Scalar::one(field);
      std::vector<std::int64_t> digits(free_pos.size(), 0);
      while (true) {
        Matrix m = base;
        for (std::size_t t = 0; t < free_pos.size(); ++t) {
          m.at(free_pos[t].first, free_pos[t].second) = Scalar(field, digits[t]);
        }
        if (!visit(Subspace::span(field, dim, m.row_list()))) return;
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
      // next pivot pattern in lexicographic order
      bool advanced = false;
      std::size_t i = k;
      while (i-- > 0) {
        if (pivots[i] != i + dim - k) {
          ++pivots[i];
          for (std::size_t j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
}

/// Oracle: first non-trivial subspace invariant under every operator, in
/// the canonical enumeration order, or nullopt when none exists.  The
/// total count of non-trivial subspaces must fit the budget.
inline std::optional<Subspace> brute_force_common_invariant(
    const OperatorFamily& fam, const Budgets& budgets = Budgets::from_env()) {
  if (fam.field().kind() != field_kind::prime_field) {
    throw input_error("brute force requires a finite field");
  }
  const std::size_t d = fam.dim();
  const bigint p = fam.field().modulus();
  // Total = sum over k of the Gaussian binomial [d choose k]_p, accumulated
  // as q-factorial ratios exactly.
  bigint total = 0;
  for (std::size_t k = 1; k < d; ++k) {
    bigint num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
      num *= pow(p, static_cast<unsigned>(d - i)) - 1;
      den *= pow(p, static_cast<unsigned>(i + 1)) - 1;
    }
    total += num / den;
  }
  if (total > budgets.subspaces) {
    throw budget_error("subspace count " + total.str() + " exceeds the budget of " +
                       std::to_string(budgets.subspaces));
  }

  std::optional<Subspace> found;
  for_each_nontrivial_subspace(fam.field(), d, [&](const Subspace& s) {
    for (const NamedOperator& op : fam.operators()) {
      if (!is_invariant(op.matrix, s)) return true;
    }
    found = s;
    return false;
  });
  return found;
}

}  // namespace helly
