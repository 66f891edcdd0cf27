#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qes::sym {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Backed by GMP's mpq_class; every constructor and arithmetic result is
/// canonicalized, so structural equality is value equality and zero is
/// always 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value);  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double value);

  /// Accepts "p", "p/q" and plain decimals such as "-2.5".
  /// Throws std::invalid_argument on malformed text or zero denominator.
  static Rational parse(std::string_view text);

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] std::string str() const { return value_.get_str(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }
  [[nodiscard]] Rational abs() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& value);

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  mpq_class value_{0};
};

}  // namespace qes::sym
