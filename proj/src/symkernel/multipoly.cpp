#include "qes/multipoly.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qes::sym {

namespace {

constexpr std::array<std::string_view, kNumVars> kVarNames{"x", "n", "beta", "x0", "b", "c"};

int total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

Var var_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (kVarNames[i] == name) return static_cast<Var>(i);
  }
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

bool TermOrder::operator()(const Exponents& a, const Exponents& b) const {
  int ta = total(a);
  int tb = total(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

MultiPoly::MultiPoly(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Exponents{}, constant);
}

MultiPoly MultiPoly::variable(Var v) {
  Exponents e{};
  e[static_cast<std::size_t>(v)] = 1;
  return monomial(Rational(1), e);
}

MultiPoly MultiPoly::monomial(const Rational& coeff, const Exponents& exps) {
  MultiPoly p;
  p.add_term(exps, coeff);
  return p;
}

MultiPoly MultiPoly::x_power(unsigned power, const Rational& coeff) {
  Exponents e{};
  e[0] = static_cast<std::uint16_t>(power);
  return monomial(coeff, e);
}

MultiPoly MultiPoly::from_x_coeffs(const std::vector<MultiPoly>& coeffs) {
  MultiPoly result;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    result += coeffs[k] * x_power(static_cast<unsigned>(k));
  }
  return result;
}

void MultiPoly::add_term(const Exponents& exps, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) {
    throw std::logic_error("MultiPoly::constant_value on non-constant " + str());
  }
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int MultiPoly::degree(Var v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, _] : terms_) d = std::max<int>(d, e[static_cast<std::size_t>(v)]);
  return d;
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : total(terms_.begin()->first);
}

MultiPoly MultiPoly::coeff_x(unsigned k) const {
  MultiPoly result;
  for (const auto& [e, coeff] : terms_) {
    if (e[0] != k) continue;
    Exponents rest = e;
    rest[0] = 0;
    result.add_term(rest, coeff);
  }
  return result;
}

std::vector<MultiPoly> MultiPoly::x_coeffs() const {
  int d = degree(Var::x);
  std::vector<MultiPoly> out(d < 0 ? 0 : static_cast<std::size_t>(d) + 1);
  for (const auto& [e, coeff] : terms_) {
    Exponents rest = e;
    rest[0] = 0;
    out[e[0]].add_term(rest, coeff);
  }
  return out;
}

MultiPoly MultiPoly::dx() const {
  MultiPoly result;
  for (const auto& [e, coeff] : terms_) {
    if (e[0] == 0) continue;
    Exponents lowered = e;
    --lowered[0];
    result.add_term(lowered, coeff * Rational(e[0]));
  }
  return result;
}

MultiPoly MultiPoly::dx(unsigned k) const {
  MultiPoly result = *this;
  for (unsigned i = 0; i < k && !result.is_zero(); ++i) result = result.dx();
  return result;
}

MultiPoly MultiPoly::subst(const Bindings& values) const {
  std::array<const Rational*, kNumVars> bound{};
  for (const auto& [name, value] : values) {
    bound[static_cast<std::size_t>(var_from_name(name))] = &value;
  }
  MultiPoly result;
  for (const auto& [e, coeff] : terms_) {
    Exponents rest = e;
    Rational c = coeff;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (bound[i] == nullptr || e[i] == 0) continue;
      for (unsigned p = 0; p < e[i]; ++p) c *= *bound[i];
      rest[i] = 0;
    }
    result.add_term(rest, c);
  }
  return result;
}

Rational MultiPoly::eval(const Bindings& values) const {
  MultiPoly reduced = subst(values);
  if (!reduced.is_constant()) {
    throw std::invalid_argument("MultiPoly::eval: unbound variables in " + reduced.str());
  }
  return reduced.constant_value();
}

double MultiPoly::evaluate(const NumericValues& values) const {
  double sum = 0.0;
  for (const auto& [e, coeff] : terms_) {
    double t = coeff.to_double();
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] != 0) t *= std::pow(values[i], e[i]);
    }
    sum += t;
  }
  return sum;
}

double MultiPoly::magnitude(const NumericValues& magnitudes) const {
  double sum = 0.0;
  for (const auto& [e, coeff] : terms_) {
    double t = std::abs(coeff.to_double());
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] != 0) t *= std::pow(std::abs(magnitudes[i]), e[i]);
    }
    sum += t;
  }
  return sum;
}

std::pair<MultiPoly, MultiPoly> MultiPoly::divmod_x(const MultiPoly& divisor) const {
  const int dd = divisor.degree(Var::x);
  if (dd < 0) throw std::domain_error("MultiPoly::divmod_x: zero divisor");
  const MultiPoly lead = divisor.coeff_x(static_cast<unsigned>(dd));
  if (!lead.is_constant()) {
    throw std::invalid_argument("MultiPoly::divmod_x: leading x-coefficient must be constant");
  }
  const Rational inv_lead = Rational(1) / lead.constant_value();

  MultiPoly quotient;
  MultiPoly remainder = *this;
  for (int rd = remainder.degree(Var::x); rd >= dd; rd = remainder.degree(Var::x)) {
    MultiPoly step = remainder.coeff_x(static_cast<unsigned>(rd)) * MultiPoly(inv_lead) *
                     x_power(static_cast<unsigned>(rd - dd));
    quotient += step;
    remainder -= step * divisor;
  }
  return {quotient, remainder};
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, coeff] : terms_) {
    const bool negative = coeff.sign() < 0;
    const Rational mag = coeff.abs();
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += kVarNames[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  for (const auto& [e, coeff] : rhs.terms_) add_term(e, coeff);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  for (const auto& [e, coeff] : rhs.terms_) add_term(e, -coeff);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly result;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e{};
      for (std::size_t i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      result.add_term(e, ca * cb);
    }
  }
  return result;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly result;
  for (const auto& [e, coeff] : a.terms()) result.add_term(e, -coeff);
  return result;
}

MultiPoly pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly result(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace qes::sym
