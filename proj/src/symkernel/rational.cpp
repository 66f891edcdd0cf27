#include "qes/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace qes::sym {

Rational::Rational(long value) : value_(value) {}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("Rational::from_double: non-finite value");
  }
  return Rational(mpq_class(value));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  bool negative = false;
  std::string_view body = strip_sign(text, negative);
  mpq_class result;

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den)};
    if (d == 0) {
      throw std::invalid_argument("Rational::parse: zero denominator");
    }
    result = mpq_class(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = mpq_class(mpz_class(digits), scale);
  } else {
    if (!all_digits(body)) {
      throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
    }
    result = mpq_class(mpz_class(std::string(body)));
  }
  result.canonicalize();
  if (negative) result = -result;
  return Rational(result);
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("Rational: division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& value) { return Rational(mpq_class(-value.value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace qes::sym
