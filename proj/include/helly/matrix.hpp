#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helly/polynomial.hpp"
#include "helly/scalar.hpp"

namespace helly {

/// Vectors are stored row-style as plain scalar lists; operators act on
/// them as column vectors via apply().
using Vector = std::vector<Scalar>;

/// Dense exact matrix over one field, row major.
class Matrix {
 public:
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols),
        entries_(rows * cols, Scalar::zero(field)) {}

  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols,
         std::vector<Scalar> entries)
      : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw input_error("matrix entry count does not match dimensions");
    }
    for (const Scalar& e : entries_) {
      if (e.field() != field_) throw input_error("matrix entry field mismatch");
    }
  }

  static Matrix identity(const FieldSpec& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
  }

  static Matrix from_rows(const FieldSpec& field, const std::vector<Vector>& rows,
                          std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw input_error("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  Vector row(std::size_t r) const {
    Vector v(cols_, Scalar::zero(field_));
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
  }

  std::vector<Vector> row_list() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           entries_ == o.entries_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_shape(o);
    Matrix m = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] += o.entries_[i];
    return m;
  }

  Matrix operator-(const Matrix& o) const {
    check_shape(o);
    Matrix m = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] -= o.entries_[i];
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (field_ != o.field_) throw input_error("matrix field mismatch");
    if (cols_ != o.rows_) throw input_error("matrix product shape mismatch");
    Matrix m(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& aik = at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          m.at(i, j) += aik * o.at(k, j);
        }
      }
    }
    return m;
  }

  Matrix operator*(const Scalar& s) const {
    Matrix m = *this;
    for (Scalar& e : m.entries_) e *= s;
    return m;
  }

  Matrix transpose() const {
    Matrix m(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    }
    return m;
  }

  /// Operator application: (*this) * v with v read as a column vector.
  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw input_error("apply: vector length mismatch");
    Vector out(rows_, Scalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
      }
    }
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i == 0 ? "[" : " ";
      out += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += at(i, j).format();
      }
      out += "]";
      out += i + 1 == rows_ ? "]" : "\n";
    }
    return out;
  }

 private:
  void check_shape(const Matrix& o) const {
    if (field_ != o.field_ || rows_ != o.rows_ || cols_ != o.cols_) {
      throw input_error("matrix shape or field mismatch");
    }
  }

  FieldSpec field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> entries_;
};

struct RrefResult {
  Matrix matrix;
  std::size_t rank;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by Gauss-Jordan elimination with the first
/// nonzero entry in each column as pivot.  Exact and deterministic.
inline RrefResult rref(const Matrix& input) {
  Matrix m = input;
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t pivot_row = lead;
    while (pivot_row < m.rows() && m.at(pivot_row, col).is_zero()) ++pivot_row;
    if (pivot_row == m.rows()) continue;
    if (pivot_row != lead) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::swap(m.at(pivot_row, c), m.at(lead, c));
      }
    }
    Scalar inv = m.at(lead, col).inv();
    for (std::size_t c = col; c < m.cols(); ++c) m.at(lead, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m.at(r, col).is_zero()) continue;
      Scalar factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) -= factor * m.at(lead, c);
      }
    }
    pivots.push_back(col);
    ++lead;
  }
  return RrefResult{std::move(m), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Inverse via elimination on [A | I]; input_error when singular.
inline Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw input_error("inverse: matrix not square");
  std::size_t n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Scalar::one(a.field());
  }
  RrefResult r = rref(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= r.pivot_columns.size() || r.pivot_columns[i] != i) {
      throw input_error("inverse: matrix is singular");
    }
  }
  Matrix out(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = r.matrix.at(i, n + j);
  }
  return out;
}

/// Solves a x = b for a matrix with linearly independent columns; nullopt
/// when the system is inconsistent.  The solution is unique when it exists.
inline std::optional<Vector> solve_full_column_rank(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw input_error("solve: right-hand side length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(aug);
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivot_columns[i] == a.cols()) return std::nullopt;
  }
  if (r.rank != a.cols()) throw input_error("solve: columns are not independent");
  Vector x(a.cols(), Scalar::zero(a.field()));
  for (std::size_t i = 0; i < r.rank; ++i) {
    x[r.pivot_columns[i]] = r.matrix.at(i, a.cols());
  }
  return x;
}

/// Characteristic polynomial det(xI - a), monic, by the Berkowitz
/// algorithm.  Division-free, so it is correct over every field including
/// characteristic p <= dimension, where schemes that divide by 1..d fail.
///
/// Iterates over trailing principal submatrices: for the r x r block
/// [[a, R], [C, M]] the coefficient vector transforms through the Toeplitz
/// column (1, -a, -RC, -RMC, -RM^2C, ...).
inline Polynomial char_poly(const Matrix& a) {
  if (!a.is_square()) throw input_error("char_poly: matrix not square");
  const FieldSpec& field = a.field();
  std::size_t n = a.rows();
  const Scalar zero = Scalar::zero(field);
  const Scalar one = Scalar::one(field);
  if (n == 0) return Polynomial(field, {one});

  // Coefficients in descending power order, starting from the 1x1 trailing
  // submatrix: x - a_{nn}.
  std::vector<Scalar> p = {one, -a.at(n - 1, n - 1)};
  for (std::size_t r = 2; r <= n; ++r) {
    std::size_t base = n - r;  // top-left index of the trailing r x r block
    // Toeplitz column s of length r + 1.
    std::vector<Scalar> s(r + 1, zero);
    s[0] = one;
    s[1] = -a.at(base, base);
    Vector u(r - 1, zero);  // u = M^k C
    for (std::size_t i = 0; i < r - 1; ++i) u[i] = a.at(base + 1 + i, base);
    for (std::size_t k = 2; k <= r; ++k) {
      Scalar dot = zero;  // R . u
      for (std::size_t i = 0; i < r - 1; ++i) {
        dot += a.at(base, base + 1 + i) * u[i];
      }
      s[k] = -dot;
      if (k == r) break;
      Vector next(r - 1, zero);
      for (std::size_t i = 0; i < r - 1; ++i) {
        for (std::size_t j = 0; j < r - 1; ++j) {
          next[i] += a.at(base + 1 + i, base + 1 + j) * u[j];
        }
      }
      u = std::move(next);
    }
    // p_new = T * p with T the lower-triangular Toeplitz matrix of s.
    std::vector<Scalar> np(r + 1, zero);
    for (std::size_t i = 0; i <= r; ++i) {
      for (std::size_t j = 0; j < r && j <= i; ++j) {
        np[i] += s[i - j] * p[j];
      }
    }
    p = std::move(np);
  }

  std::vector<Scalar> ascending(p.rbegin(), p.rend());
  return Polynomial(field, std::move(ascending)).monic();
}

}  // namespace helly
