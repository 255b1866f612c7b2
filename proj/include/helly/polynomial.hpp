#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "helly/scalar.hpp"

namespace helly {

/// Dense univariate polynomial over one field, coefficients lowest degree
/// first with trailing zeros trimmed.  The zero polynomial has an empty
/// coefficient list.
class Polynomial {
 public:
  explicit Polynomial(const FieldSpec& field) : field_(field) {}

  Polynomial(const FieldSpec& field, std::vector<Scalar> coeffs)
      : field_(field), coeffs_(std::move(coeffs)) {
    for (const Scalar& c : coeffs_) {
      if (c.field() != field_) throw input_error("polynomial coefficient field mismatch");
    }
    trim();
  }

  const FieldSpec& field() const { return field_; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Scalar& coefficient(std::size_t i) const { return coeffs_[i]; }

  Scalar leading_coefficient() const {
    if (is_zero()) throw input_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  Scalar evaluate(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<Scalar> c(std::max(coeffs_.size(), o.coeffs_.size()),
                          Scalar::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Polynomial(field_, std::move(c));
  }

  Polynomial operator-(const Polynomial& o) const {
    std::vector<Scalar> c(std::max(coeffs_.size(), o.coeffs_.size()),
                          Scalar::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
    return Polynomial(field_, std::move(c));
  }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial(field_);
    std::vector<Scalar> c(coeffs_.size() + o.coeffs_.size() - 1,
                          Scalar::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
        c[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    return Polynomial(field_, std::move(c));
  }

  Polynomial operator*(const Scalar& s) const {
    std::vector<Scalar> c = coeffs_;
    for (Scalar& x : c) x *= s;
    return Polynomial(field_, std::move(c));
  }

  bool operator==(const Polynomial& o) const {
    return field_ == o.field_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial monic() const {
    if (is_zero()) throw input_error("cannot normalize the zero polynomial");
    return *this * leading_coefficient().inv();
  }

  /// Synthetic division by (x - r).  Requires r to be a root; the division
  /// is exact and the remainder is checked to vanish.
  Polynomial divide_by_root(const Scalar& r) const {
    if (is_zero()) throw input_error("cannot divide the zero polynomial");
    std::vector<Scalar> q(coeffs_.size() - 1, Scalar::zero(field_));
    Scalar carry = Scalar::zero(field_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      Scalar v = coeffs_[i] + carry;
      if (i == 0) {
        if (!v.is_zero()) throw input_error("divide_by_root: not a root");
      } else {
        q[i - 1] = v;
        carry = v * r;
      }
    }
    return Polynomial(field_, std::move(q));
  }

  /// "x^2 - 5x + 6" style rendering for reports.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      if (i == 0) {
        out += coeffs_[i].format();
      } else {
        if (!coeffs_[i].is_one()) out += coeffs_[i].format() + "*";
        out += i == 1 ? "x" : "x^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  FieldSpec field_;
  std::vector<Scalar> coeffs_;
};

/// All roots of `poly` lying in its own field, each once, in canonical
/// scalar order.  Over GF(p) this evaluates at every field element; over Q
/// it clears denominators and tests the rational-root candidates.
inline std::vector<Scalar> roots_in_field(const Polynomial& poly) {
  if (poly.is_zero()) {
    throw input_error("roots_in_field: zero polynomial (every element is a root)");
  }
  const FieldSpec& field = poly.field();
  std::vector<Scalar> roots;

  if (field.is_prime_field()) {
    for (std::int64_t r = 0; r < field.modulus(); ++r) {
      Scalar x(field, r);
      if (poly.evaluate(x).is_zero()) roots.push_back(x);
    }
    return roots;  // residue order is already canonical
  }

  // Clear denominators to integer coefficients.
  bigint scale = 1;
  for (const Scalar& c : poly.coefficients()) {
    scale = boost::multiprecision::lcm(scale, c.denominator());
  }
  std::vector<bigint> ic;
  for (const Scalar& c : poly.coefficients()) {
    ic.push_back(c.numerator() * (scale / c.denominator()));
  }

  // Strip powers of x; 0 is a root iff the constant term vanishes.
  std::size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  if (low > 0) roots.push_back(Scalar::zero(field));
  if (low + 1 == ic.size()) {  // only c*x^k remains
    std::sort(roots.begin(), roots.end(),
              [](const Scalar& a, const Scalar& b) { return canonical_less(a, b); });
    return roots;
  }

  auto divisors = [](const bigint& n) {
    std::vector<bigint> out;
    bigint a = boost::multiprecision::abs(n);
    for (bigint d = 1; d * d <= a; ++d) {
      if (a % d == 0) {
        out.push_back(d);
        if (d * d != a) out.push_back(a / d);
      }
    }
    return out;
  };

  // Candidates +-p/q with p | constant term and q | leading coefficient,
  // each verified by exact evaluation.
  for (const bigint& p : divisors(ic[low])) {
    for (const bigint& q : divisors(ic.back())) {
      for (int sign : {1, -1}) {
        Scalar cand(field, sign * p, q);
        if (poly.evaluate(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end()) {
          roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const Scalar& a, const Scalar& b) { return canonical_less(a, b); });
  return roots;
}

/// Roots paired with multiplicities, computed by repeated synthetic division.
inline std::vector<std::pair<Scalar, int>> roots_with_multiplicity(const Polynomial& poly) {
  std::vector<std::pair<Scalar, int>> out;
  for (const Scalar& r : roots_in_field(poly)) {
    int mult = 0;
    Polynomial q = poly;
    while (!q.is_zero() && q.degree() >= 1 && q.evaluate(r).is_zero()) {
      q = q.divide_by_root(r);
      ++mult;
    }
    out.emplace_back(r, mult);
  }
  return out;
}

}  // namespace helly
