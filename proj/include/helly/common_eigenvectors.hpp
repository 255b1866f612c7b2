#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helly/budgets.hpp"
#include "helly/errors.hpp"
#include "helly/operator_family.hpp"
#include "helly/subspace.hpp"

namespace helly {

/// A maximal simultaneous eigenspace: every nonzero vector of `subspace` is
/// an eigenvector of every family operator, with the eigenvalue listed per
/// operator name in family order.
struct CommonEigenLine {
  Subspace subspace;
  std::vector<std::pair<std::string, Scalar>> assignment;
};

/// Refinement: start from the full space and intersect with the eigenspaces
/// of each operator in turn, branching over eigenvalues and keeping every
/// nonzero intersection.  The family has a common eigenvector iff the
/// result is non-empty.  The result list order follows the operator order,
/// but the set of (subspace, assignment) pairs does not depend on it.
inline std::vector<CommonEigenLine> common_eigen_refinement(const OperatorFamily& fam) {
  std::vector<CommonEigenLine> branches;
  branches.push_back({Subspace::full(fam.field(), fam.dim()), {}});
  for (const NamedOperator& op : fam.operators()) {
    std::vector<CommonEigenLine> next;
    auto pairs = eigen_decomposition_in_field(op.matrix);
    for (const CommonEigenLine& branch : branches) {
      for (const auto& [value, eigenspace] : pairs) {
        Subspace refined = branch.subspace.intersect(eigenspace);
        if (refined.dim() == 0) continue;
        CommonEigenLine line{std::move(refined), branch.assignment};
        line.assignment.emplace_back(op.name, value);
        next.push_back(std::move(line));
      }
    }
    branches = std::move(next);
    if (branches.empty()) break;
  }
  return branches;
}

/// First refinement branch, or nullopt when no common eigenvector exists.
inline std::optional<CommonEigenLine> has_common_eigenvector(const OperatorFamily& fam) {
  std::vector<CommonEigenLine> lines = common_eigen_refinement(fam);
  if (lines.empty()) return std::nullopt;
  return lines.front();
}

/// Enumerates projective points of GF(p)^d in canonical order: by position
/// of the leading 1, then lexicographically in the trailing coordinates.
/// Calls visit(point) for each; stops early when visit returns false.
template <typename Visit>
inline void for_each_projective_point(const FieldSpec& field, std::size_t dim, Visit visit) {
  if (field.kind() != field_kind::prime_field) {
    throw input_error("projective enumeration requires a finite field");
  }
  const bigint p = field.modulus();
  for (std::size_t lead = 0; lead < dim; ++lead) {
    Vector point(dim, Scalar::zero(field));
    point[lead] = Scalar::one(field);
    std::size_t free_count = dim - lead - 1;
    while (true) {
      if (!visit(point)) return;
      // Increment the trailing coordinates as a base-p counter, most
      // significant first so the order is lexicographic.
      bool advanced = false;
      std::size_t i = free_count;
      while (i-- > 0) {
        std::size_t pos = lead + 1 + i;
        bigint next = point[pos].numerator() + 1;
        if (next < p) {
          point[pos] = Scalar(field, next);
          for (std::size_t j = pos + 1; j < dim; ++j) point[j] = Scalar::zero(field);
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
}

/// Oracle: all projective points of GF(p)^d that are eigenvectors of every
/// operator, in canonical enumeration order.  Exact but exponential;
/// guarded by the projective-point budget (p^d by default 10^6).
inline std::vector<Vector> brute_force_common_eigenvectors(
    const OperatorFamily& fam, const Budgets& budgets = Budgets::from_env()) {
  if (fam.field().kind() != field_kind::prime_field) {
    throw input_error("brute force requires a finite field; refine over Q instead");
  }
  bigint total = 1;
  for (std::size_t i = 0; i < fam.dim(); ++i) {
    total *= fam.field().modulus();
    if (total > budgets.projective_points) {
      throw budget_error("p^d exceeds the projective point budget of " +
                         std::to_string(budgets.projective_points));
    }
  }
  std::vector<Vector> hits;
  for_each_projective_point(fam.field(), fam.dim(), [&](const Vector& point) {
    for (const NamedOperator& op : fam.operators()) {
      if (!is_eigenvector(op.matrix, point)) return true;
    }
    hits.push_back(point);
    return true;
  });
  return hits;
}

/// The data extracted from leave-one-out witnesses before combining them:
/// a maximal linearly independent subset and the exact expansion of every
/// remaining witness over it.
struct LeaveOneOutCertificate {
  std::vector<Vector> witnesses;               // original family order
  std::vector<std::size_t> independent_block;  // witness indices, ascending
  std::vector<std::size_t> dependent;          // the rest, ascending
  // mu[i][j]: coefficient of witnesses[independent_block[j]] in the exact
  // expansion of witnesses[dependent[i]].
  std::vector<std::vector<Scalar>> mu;
  // supports[i]: positions j into independent_block with mu[i][j] != 0.
  std::vector<std::vector<std::size_t>> supports;
};

namespace detail {

inline void check_witness_shape(const OperatorFamily& fam, const std::vector<Vector>& witnesses) {
  if (witnesses.size() != fam.size()) {
    throw input_error("need exactly one witness vector per operator");
  }
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (witnesses[i].size() != fam.dim()) {
      throw input_error("witness " + std::to_string(i) + " has wrong dimension");
    }
    bool nonzero = false;
    for (const Scalar& c : witnesses[i]) {
      if (c.field() != fam.field()) throw input_error("witness entry field mismatch");
      if (!c.is_zero()) nonzero = true;
    }
    if (!nonzero) throw input_error("witness " + std::to_string(i) + " is the zero vector");
  }
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    for (std::size_t m = 0; m < fam.size(); ++m) {
      if (m == i) continue;
      if (!is_eigenvector(fam[m].matrix, witnesses[i])) {
        throw input_error("witness " + std::to_string(i) + " is not an eigenvector of \"" +
                          fam[m].name + "\"");
      }
    }
  }
}

}  // namespace detail

/// Validates the witnesses and expands each dependent one over a maximal
/// independent subset.  The subset is chosen greedily from the last witness
/// backwards, mirroring the suffix convention of the combination procedure.
inline LeaveOneOutCertificate build_leave_one_out_certificate(
    const OperatorFamily& fam, const std::vector<Vector>& witnesses) {
  detail::check_witness_shape(fam, witnesses);
  const std::size_t n = witnesses.size();

  LeaveOneOutCertificate cert;
  cert.witnesses = witnesses;
  Subspace covered = Subspace::zero(fam.field(), fam.dim());
  for (std::size_t i = n; i-- > 0;) {
    if (!covered.contains(witnesses[i])) {
      cert.independent_block.push_back(i);
      covered = covered.sum(Subspace::span(fam.field(), fam.dim(), {witnesses[i]}));
    } else {
      cert.dependent.push_back(i);
    }
  }
  std::reverse(cert.independent_block.begin(), cert.independent_block.end());
  std::reverse(cert.dependent.begin(), cert.dependent.end());

  // Columns of C are the independent witnesses; C mu_i = v_i is consistent
  // with a unique solution by maximality.
  Matrix cols(fam.field(), fam.dim(), cert.independent_block.size());
  for (std::size_t j = 0; j < cert.independent_block.size(); ++j) {
    for (std::size_t r = 0; r < fam.dim(); ++r) {
      cols.at(r, j) = witnesses[cert.independent_block[j]][r];
    }
  }
  for (std::size_t i : cert.dependent) {
    std::optional<Vector> mu = solve_full_column_rank(cols, witnesses[i]);
    if (!mu) throw input_error("internal: dependent witness outside independent span");
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < mu->size(); ++j) {
      if (!(*mu)[j].is_zero()) support.push_back(j);
    }
    cert.mu.push_back(std::move(*mu));
    cert.supports.push_back(std::move(support));
  }
  return cert;
}

/// Combines leave-one-out common eigenvectors into a common eigenvector of
/// the whole family.  witnesses[i] must be an eigenvector of every operator
/// except possibly the i-th, and the family must have at least floor(3d/2)+1
/// members; under those hypotheses the combination is guaranteed to work,
/// so any failure is reported as an input-contract violation.
inline Vector construct_from_leave_one_out(const OperatorFamily& fam,
                                           const std::vector<Vector>& witnesses) {
  const std::size_t d = fam.dim();
  const std::size_t threshold = 3 * d / 2 + 1;
  if (fam.size() < threshold) {
    throw input_error("leave-one-out combination needs at least " +
                      std::to_string(threshold) + " operators for dimension " +
                      std::to_string(d) + ", got " + std::to_string(fam.size()));
  }
  LeaveOneOutCertificate cert = build_leave_one_out_certificate(fam, witnesses);

  auto verified = [&](const Vector& w) {
    for (const NamedOperator& op : fam.operators()) {
      if (!is_eigenvector(op.matrix, w)) return false;
    }
    return true;
  };
  auto finish = [&](const Vector& w) {
    bool nonzero = false;
    for (const Scalar& c : w) nonzero = nonzero || !c.is_zero();
    if (!nonzero || !verified(w)) {
      throw input_error("hypothesis violated - input is not a genuine leave-one-out certificate");
    }
    return w;
  };

  // A witness that is independent of all the others is already checked
  // against every operator except its own; if some dependent witness has a
  // singleton support, it is a scalar multiple of an independent one and
  // the pair covers all operators.
  for (std::size_t i = 0; i < cert.dependent.size(); ++i) {
    if (cert.supports[i].empty()) {
      throw input_error("witness " + std::to_string(cert.dependent[i]) +
                        " is the zero vector");
    }
    if (cert.supports[i].size() == 1) {
      return finish(cert.witnesses[cert.independent_block[cert.supports[i][0]]]);
    }
  }

  // First pair of dependent witnesses with intersecting supports, in
  // lexicographic order over (i1, i2); the counting argument guarantees one
  // exists whenever the size threshold holds.
  for (std::size_t i1 = 0; i1 < cert.dependent.size(); ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < cert.dependent.size(); ++i2) {
      std::optional<std::size_t> l;
      for (std::size_t j : cert.supports[i1]) {
        for (std::size_t j2 : cert.supports[i2]) {
          if (j == j2) { l = j; break; }
        }
        if (l) break;
      }
      if (!l) continue;
      const std::vector<Scalar>& mu1 = cert.mu[i1];
      const std::vector<Scalar>& mu2 = cert.mu[i2];
      // X0 = { j in X1 cap X2 : mu2[l] mu1[j] = mu1[l] mu2[j] };
      // w = sum over X0 of mu2[l] mu1[j] v_j.  l lies in X0, so w != 0.
      Vector w(d, Scalar::zero(fam.field()));
      for (std::size_t j : cert.supports[i1]) {
        if (mu2[j].is_zero()) continue;
        if (mu2[*l] * mu1[j] != mu1[*l] * mu2[j]) continue;
        Scalar coeff = mu2[*l] * mu1[j];
        const Vector& vj = cert.witnesses[cert.independent_block[j]];
        for (std::size_t r = 0; r < d; ++r) w[r] += coeff * vj[r];
      }
      return finish(w);
    }
  }
  throw input_error("hypothesis violated - input is not a genuine leave-one-out certificate");
}

}  // namespace helly
