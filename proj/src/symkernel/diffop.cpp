#include "qes/diffop.hpp"

namespace qes::sym {

namespace {

Rational binomial(unsigned n, unsigned k) {
  Rational r(1);
  for (unsigned i = 1; i <= k; ++i) {
    r *= Rational(static_cast<long>(n - k + i), static_cast<long>(i));
  }
  return r;
}

}  // namespace

DiffOp DiffOp::term(const MultiPoly& coeff, unsigned order) {
  DiffOp op;
  op.add_summand(order, coeff);
  return op;
}

void DiffOp::add_summand(unsigned order, const MultiPoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = summands_.try_emplace(order, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) summands_.erase(it);
  }
}

int DiffOp::order() const {
  return summands_.empty() ? -1 : static_cast<int>(summands_.rbegin()->first);
}

MultiPoly DiffOp::coeff(unsigned k) const {
  auto it = summands_.find(k);
  return it == summands_.end() ? MultiPoly() : it->second;
}

MultiPoly DiffOp::apply(const MultiPoly& v) const {
  MultiPoly result;
  for (const auto& [k, p] : summands_) result += p * v.dx(k);
  return result;
}

DiffOp DiffOp::subst(const Bindings& values) const {
  DiffOp result;
  for (const auto& [k, p] : summands_) result.add_summand(k, p.subst(values));
  return result;
}

std::string DiffOp::str() const {
  if (summands_.empty()) return "0";
  std::string out;
  for (auto it = summands_.rbegin(); it != summands_.rend(); ++it) {
    const auto& [k, p] = *it;
    std::string d = k == 0 ? "" : (k == 1 ? "d" : "d^" + std::to_string(k));
    std::string piece;
    if (d.empty()) {
      piece = "(" + p.str() + ")";
    } else if (p == MultiPoly(1)) {
      piece = d;
    } else {
      piece = "(" + p.str() + ")*" + d;
    }
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& rhs) {
  for (const auto& [k, p] : rhs.summands_) add_summand(k, p);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& rhs) {
  for (const auto& [k, p] : rhs.summands_) add_summand(k, -p);
  return *this;
}

DiffOp operator-(const DiffOp& a) {
  DiffOp result;
  for (const auto& [k, p] : a.summands_) result.add_summand(k, -p);
  return result;
}

DiffOp operator*(const MultiPoly& p, const DiffOp& a) {
  DiffOp result;
  for (const auto& [k, q] : a.summands_) result.add_summand(k, p * q);
  return result;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  DiffOp result;
  for (const auto& [i, p] : a.summands()) {
    for (const auto& [j, q] : b.summands()) {
      for (unsigned k = 0; k <= i; ++k) {
        MultiPoly dq = q.dx(k);
        if (dq.is_zero()) break;
        result += DiffOp::term(MultiPoly(binomial(i, k)) * p * dq, i - k + j);
      }
    }
  }
  return result;
}

DiffOp bracket(const DiffOp& a, const DiffOp& b, Bracket kind) {
  DiffOp ab = compose(a, b);
  DiffOp ba = compose(b, a);
  return kind == Bracket::commutator ? ab - ba : ab + ba;
}

}  // namespace qes::sym
