#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qes/rational.hpp"

namespace qes::sym {

/// Variables of the symbolic layer. `x` is the differentiation variable; the
/// others are the parameters of the scaled radial equation.
enum class Var : std::uint8_t { x = 0, n, beta, x0, b, c };

inline constexpr std::size_t kNumVars = 6;

using Exponents = std::array<std::uint16_t, kNumVars>;

/// Name used in renderings and substitution maps ("x", "n", "beta", "x0", "b", "c").
std::string_view var_name(Var v);

/// Throws std::invalid_argument for names outside the variable set.
Var var_from_name(std::string_view name);

/// Orders monomials by descending total degree, then descending exponent
/// vector (x first). `begin()` of a term map is therefore the leading term.
struct TermOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

using Bindings = std::map<std::string, Rational, std::less<>>;

/// Per-variable values for floating-point evaluation, indexed by Var.
using NumericValues = std::array<double, kNumVars>;

/// Sparse multivariate polynomial over Q in the fixed variable set.
///
/// Zero coefficients are never stored, so equal polynomials have identical
/// term maps and `==` is structural.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, TermOrder>;

  MultiPoly() = default;
  MultiPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(long constant) : MultiPoly(Rational(constant)) {}  // NOLINT

  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Rational& coeff, const Exponents& exps);
  /// coeff * x^power
  static MultiPoly x_power(unsigned power, const Rational& coeff = Rational(1));
  /// Σ coeffs[k] x^k with parameter-valued coefficients.
  static MultiPoly from_x_coeffs(const std::vector<MultiPoly>& coeffs);

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  /// Constant term's value; throws std::logic_error when not constant.
  [[nodiscard]] Rational constant_value() const;

  /// Degree in one variable; -1 for the zero polynomial.
  [[nodiscard]] int degree(Var v) const;
  [[nodiscard]] int total_degree() const;
  /// Coefficient of x^k as a polynomial in the parameters.
  [[nodiscard]] MultiPoly coeff_x(unsigned k) const;
  [[nodiscard]] std::vector<MultiPoly> x_coeffs() const;
  [[nodiscard]] bool depends_on(Var v) const { return degree(v) > 0; }

  [[nodiscard]] MultiPoly dx() const;
  /// k-th derivative in x.
  [[nodiscard]] MultiPoly dx(unsigned k) const;

  /// Replace the named variables by rationals. Unknown names throw.
  [[nodiscard]] MultiPoly subst(const Bindings& values) const;
  /// Full evaluation; throws std::invalid_argument if a variable is left unbound.
  [[nodiscard]] Rational eval(const Bindings& values) const;

  [[nodiscard]] double evaluate(const NumericValues& values) const;
  /// Σ |coeff| Π |magnitudes|^e : an upper bound for |evaluate| used to scale residuals.
  [[nodiscard]] double magnitude(const NumericValues& magnitudes) const;

  /// Quotient and remainder of division in x by a divisor whose leading
  /// x-coefficient is a nonzero rational constant.
  [[nodiscard]] std::pair<MultiPoly, MultiPoly> divmod_x(const MultiPoly& divisor) const;

  [[nodiscard]] std::string str() const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Exponents& exps, const Rational& coeff);

  TermMap terms_;
};

MultiPoly pow(const MultiPoly& base, unsigned exponent);

}  // namespace qes::sym
