#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "helly/errors.hpp"

namespace helly {

using bigint = boost::multiprecision::cpp_int;

enum class field_kind { rationals, prime_field };

/// Descriptor of the coefficient field: the rationals Q or a prime field
/// GF(p).  Construction validates primality, so a FieldSpec in hand is
/// always a genuine field.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(field_kind::rationals, 0); }

  static FieldSpec gf(std::int64_t p) {
    if (!is_prime(p)) {
      throw input_error("GF(" + std::to_string(p) + "): modulus is not prime");
    }
    return FieldSpec(field_kind::prime_field, p);
  }

  field_kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == field_kind::rationals; }
  bool is_prime_field() const { return kind_ == field_kind::prime_field; }

  /// Modulus of a prime field; only meaningful when is_prime_field().
  std::int64_t modulus() const { return p_; }

  bool operator==(const FieldSpec& other) const = default;

  std::string to_string() const {
    return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
  }

  static bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) return false;
    }
    return true;
  }

 private:
  FieldSpec(field_kind kind, std::int64_t p) : kind_(kind), p_(p) {}

  field_kind kind_;
  std::int64_t p_;
};

/// An exact element of Q or GF(p), always stored canonically:
///   - Q: gcd(num, den) = 1 and den > 0,
///   - GF(p): den = 1 and 0 <= num < p.
/// Equality is therefore plain representation equality.
class Scalar {
 public:
  Scalar() : field_(FieldSpec::rationals()), num_(0), den_(1) {}

  /// Integer literal in the given field (reduced mod p for GF(p)).
  Scalar(const FieldSpec& field, bigint value)
      : field_(field), num_(std::move(value)), den_(1) {
    if (field_.is_prime_field()) num_ = mod_p(num_);
  }

  /// Fraction num/den; in GF(p) this means num * den^{-1}.
  Scalar(const FieldSpec& field, bigint num, bigint den)
      : field_(field), num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw input_error("scalar denominator is zero");
    if (field_.is_prime_field()) {
      bigint inv = mod_inverse(mod_p(den_));
      num_ = mod_p(mod_p(num_) * inv);
      den_ = 1;
    } else {
      reduce();
    }
  }

  static Scalar zero(const FieldSpec& field) { return Scalar(field, 0); }
  static Scalar one(const FieldSpec& field) { return Scalar(field, 1); }

  const FieldSpec& field() const { return field_; }
  const bigint& numerator() const { return num_; }
  const bigint& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  bool operator==(const Scalar& other) const {
    return field_ == other.field_ && num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(const Scalar& other) const { return !(*this == other); }

  Scalar operator+(const Scalar& o) const {
    check_same_field(o);
    if (field_.is_prime_field()) return from_residue(field_, mod_p(num_ + o.num_));
    return Scalar(field_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }

  Scalar operator-(const Scalar& o) const {
    check_same_field(o);
    if (field_.is_prime_field()) return from_residue(field_, mod_p(num_ - o.num_));
    return Scalar(field_, num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }

  Scalar operator*(const Scalar& o) const {
    check_same_field(o);
    if (field_.is_prime_field()) return from_residue(field_, mod_p(num_ * o.num_));
    return Scalar(field_, num_ * o.num_, den_ * o.den_);
  }

  Scalar operator/(const Scalar& o) const {
    check_same_field(o);
    if (o.is_zero()) throw input_error("division by zero");
    if (field_.is_prime_field()) {
      return from_residue(field_, mod_p(num_ * o.mod_inverse(o.num_)));
    }
    return Scalar(field_, num_ * o.den_, den_ * o.num_);
  }

  Scalar operator-() const {
    if (field_.is_prime_field()) return from_residue(field_, mod_p(-num_));
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Scalar inv() const {
    if (is_zero()) throw input_error("inverse of zero");
    if (field_.is_prime_field()) return from_residue(field_, mod_inverse(num_));
    return Scalar(field_, den_, num_);
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// "a" or "a/b" with decimal integers, the format used in JSON files.
  std::string format() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

  /// Parse "a" or "a/b" (optional leading minus on either integer).
  static Scalar parse(const std::string& text, const FieldSpec& field) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      return Scalar(field, parse_integer(text));
    }
    bigint num = parse_integer(text.substr(0, slash));
    bigint den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw input_error("scalar literal \"" + text + "\": denominator is zero");
    return Scalar(field, num, den);
  }

 private:
  static Scalar from_residue(const FieldSpec& field, bigint residue) {
    Scalar s;
    s.field_ = field;
    s.num_ = std::move(residue);
    s.den_ = 1;
    return s;
  }

  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    bigint g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  bigint mod_p(const bigint& x) const {
    bigint r = x % field_.modulus();
    if (r < 0) r += field_.modulus();
    return r;
  }

  bigint mod_inverse(const bigint& x) const {
    bigint r = mod_p(x);
    if (r == 0) throw input_error("division by zero in " + field_.to_string());
    // p is prime, so x^{p-2} = x^{-1}.
    return boost::multiprecision::powm(r, bigint(field_.modulus() - 2),
                                       bigint(field_.modulus()));
  }

  void check_same_field(const Scalar& o) const {
    if (field_ != o.field_) {
      throw input_error("field mismatch: " + field_.to_string() + " vs " +
                        o.field_.to_string());
    }
  }

  static bigint parse_integer(const std::string& text) {
    if (text.empty()) throw input_error("empty scalar literal");
    std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size()) throw input_error("malformed scalar literal \"" + text + "\"");
    for (std::size_t i = start; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') {
        throw input_error("malformed scalar literal \"" + text + "\"");
      }
    }
    return bigint(text);
  }

  FieldSpec field_;
  bigint num_;
  bigint den_;
};

/// Deterministic total order used wherever scalars must be enumerated in a
/// reproducible sequence (eigenvalue branch order, eigenpair sorting).
/// Over Q it is lexicographic on the canonical (numerator, denominator)
/// pair, over GF(p) it is residue order.
inline bool canonical_less(const Scalar& a, const Scalar& b) {
  if (a.numerator() != b.numerator()) return a.numerator() < b.numerator();
  return a.denominator() < b.denominator();
}

/// Elementwise canonical order on equal-length scalar vectors.
inline bool canonical_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return canonical_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

}  // namespace helly
