#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "helly/matrix.hpp"

namespace helly {

/// A subspace of K^d stored by its unique reduced-row-echelon basis, one
/// basis vector per row.  Canonicity makes equality, containment and
/// deduplication plain representation checks.
class Subspace {
 public:
  /// Span of arbitrary rows; the basis is canonicalized on construction.
  static Subspace span(const FieldSpec& field, std::size_t ambient_dim,
                       const std::vector<Vector>& rows) {
    return Subspace(rref(Matrix::from_rows(field, rows, ambient_dim)));
  }

  static Subspace zero(const FieldSpec& field, std::size_t ambient_dim) {
    return span(field, ambient_dim, {});
  }

  static Subspace full(const FieldSpec& field, std::size_t ambient_dim) {
    return Subspace(rref(Matrix::identity(field, ambient_dim)));
  }

  const FieldSpec& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }
  bool is_non_trivial() const { return dim() > 0 && !is_full(); }

  /// The canonical RREF basis matrix (dim x ambient_dim, no zero rows).
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  bool contains(const Vector& v) const {
    return reduce(v).second;
  }

  bool contains(const Subspace& o) const {
    check_compatible(o);
    for (std::size_t r = 0; r < o.dim(); ++r) {
      if (!contains(o.basis_.row(r))) return false;
    }
    return true;
  }

  /// Coordinates of v with respect to the canonical basis rows, or nullopt
  /// when v is outside the subspace.  With an RREF basis the coordinate of
  /// row i is just v[pivot_i].
  std::optional<Vector> coordinates(const Vector& v) const {
    auto [coords, inside] = reduce(v);
    if (!inside) return std::nullopt;
    return coords;
  }

  Subspace sum(const Subspace& o) const {
    check_compatible(o);
    std::vector<Vector> rows = basis_.row_list();
    for (const Vector& r : o.basis_.row_list()) rows.push_back(r);
    return span(field(), ambient_dim(), rows);
  }

  /// Intersection via annihilators: S cap T is the kernel of the stacked
  /// constraint system built from the kernels of both bases.
  Subspace intersect(const Subspace& o) const;

  std::string to_string() const {
    if (is_zero()) return "{0}";
    std::string out = "span{";
    for (std::size_t r = 0; r < dim(); ++r) {
      if (r) out += ", ";
      out += "(";
      for (std::size_t c = 0; c < ambient_dim(); ++c) {
        if (c) out += ", ";
        out += basis_.at(r, c).format();
      }
      out += ")";
    }
    return out + "}";
  }

 private:
  explicit Subspace(RrefResult r) : basis_(std::move(r.matrix)), pivots_(std::move(r.pivot_columns)) {
    // Drop the zero rows below the pivots.
    std::vector<Vector> rows = basis_.row_list();
    rows.resize(pivots_.size(), Vector{});
    basis_ = Matrix::from_rows(basis_.field(), rows, basis_.cols());
  }

  // Reduce v against the RREF rows; returns (coordinates, fully reduced?).
  std::pair<Vector, bool> reduce(const Vector& v) const {
    if (v.size() != ambient_dim()) throw input_error("vector/ambient dimension mismatch");
    Vector rem = v;
    Vector coords(dim(), Scalar::zero(field()));
    for (std::size_t i = 0; i < dim(); ++i) {
      Scalar c = rem[pivots_[i]];
      if (c.is_zero()) continue;
      coords[i] = c;
      for (std::size_t j = 0; j < ambient_dim(); ++j) {
        rem[j] -= c * basis_.at(i, j);
      }
    }
    for (const Scalar& x : rem) {
      if (!x.is_zero()) return {std::move(coords), false};
    }
    return {std::move(coords), true};
  }

  void check_compatible(const Subspace& o) const {
    if (field() != o.field() || ambient_dim() != o.ambient_dim()) {
      throw input_error("subspace ambient mismatch");
    }
  }

  friend Subspace kernel_basis(const Matrix& m);

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of {v : m v = 0}; dim = cols - rank.
inline Subspace kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivot_columns) is_pivot[p] = true;
  std::vector<Vector> rows;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), Scalar::zero(m.field()));
    v[f] = Scalar::one(m.field());
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
      v[r.pivot_columns[i]] = -r.matrix.at(i, f);
    }
    rows.push_back(std::move(v));
  }
  return Subspace::span(m.field(), m.cols(), rows);
}

inline Subspace Subspace::intersect(const Subspace& o) const {
  check_compatible(o);
  Subspace pa = kernel_basis(basis_);
  Subspace pb = kernel_basis(o.basis_);
  std::vector<Vector> constraints = pa.basis().row_list();
  for (const Vector& r : pb.basis().row_list()) constraints.push_back(r);
  return kernel_basis(Matrix::from_rows(field(), constraints, ambient_dim()));
}

/// True iff a maps every basis vector of s back into s.
inline bool is_invariant(const Matrix& a, const Subspace& s) {
  if (!a.is_square() || a.cols() != s.ambient_dim()) {
    throw input_error("is_invariant: dimension mismatch");
  }
  for (std::size_t r = 0; r < s.dim(); ++r) {
    if (!s.contains(a.apply(s.basis().row(r)))) return false;
  }
  return true;
}

/// The eigenvalue of v under a, when v is an eigenvector; nullopt otherwise.
/// The zero vector is rejected: eigenvectors are non-trivial.
inline std::optional<Scalar> is_eigenvector(const Matrix& a, const Vector& v) {
  if (!a.is_square() || a.cols() != v.size()) {
    throw input_error("is_eigenvector: dimension mismatch");
  }
  std::size_t lead = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) {
      lead = i;
      break;
    }
  }
  if (lead == v.size()) throw input_error("is_eigenvector: zero vector");
  Vector w = a.apply(v);
  Scalar lambda = w[lead] / v[lead];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] != lambda * v[i]) return std::nullopt;
  }
  return lambda;
}

/// Matrix of a's action on s in s's canonical basis: column i holds the
/// coordinates of a applied to basis row i.  Requires is_invariant(a, s).
inline Matrix restrict_operator(const Matrix& a, const Subspace& s) {
  if (!a.is_square() || a.cols() != s.ambient_dim()) {
    throw input_error("restrict_operator: dimension mismatch");
  }
  std::size_t k = s.dim();
  Matrix out(a.field(), k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto coords = s.coordinates(a.apply(s.basis().row(i)));
    if (!coords) throw input_error("restrict_operator: subspace is not invariant");
    for (std::size_t j = 0; j < k; ++j) out.at(j, i) = (*coords)[j];
  }
  return out;
}

/// One entry per eigenvalue of a lying in the field, in canonical scalar
/// order, with its full eigenspace.
inline std::vector<std::pair<Scalar, Subspace>> eigen_decomposition_in_field(const Matrix& a) {
  if (!a.is_square()) throw input_error("eigen decomposition: matrix not square");
  std::vector<std::pair<Scalar, Subspace>> out;
  for (const Scalar& lambda : roots_in_field(char_poly(a))) {
    Matrix shifted = a - Matrix::identity(a.field(), a.rows()) * lambda;
    out.emplace_back(lambda, kernel_basis(shifted));
  }
  return out;
}

}  // namespace helly
