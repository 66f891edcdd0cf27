#include "qes/matop.hpp"

namespace qes::sym {

MatOp MatOp::identity() { return diag(DiffOp::multiply(1), DiffOp::multiply(1)); }

MatOp MatOp::diag(DiffOp upper, DiffOp lower) { return {std::move(upper), {}, {}, std::move(lower)}; }

MatOp MatOp::lower_left(DiffOp op) { return {{}, {}, std::move(op), {}}; }

bool MatOp::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

PolyPair MatOp::apply(const PolyPair& v) const {
  return {at(0, 0).apply(v.first) + at(0, 1).apply(v.second),
          at(1, 0).apply(v.first) + at(1, 1).apply(v.second)};
}

MatOp MatOp::subst(const Bindings& values) const {
  MatOp result;
  for (std::size_t i = 0; i < 4; ++i) result.entries_[i] = entries_[i].subst(values);
  return result;
}

std::string MatOp::str() const {
  return "[[" + at(0, 0).str() + ", " + at(0, 1).str() + "], [" + at(1, 0).str() + ", " +
         at(1, 1).str() + "]]";
}

MatOp& MatOp::operator+=(const MatOp& rhs) {
  for (std::size_t i = 0; i < 4; ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

MatOp& MatOp::operator-=(const MatOp& rhs) {
  for (std::size_t i = 0; i < 4; ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

MatOp operator-(const MatOp& a) {
  MatOp result;
  for (std::size_t i = 0; i < 4; ++i) result.entries_[i] = -a.entries_[i];
  return result;
}

MatOp operator*(const MatOp& a, const MatOp& b) {
  MatOp result;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      result.at(r, c) = compose(a.at(r, 0), b.at(0, c)) + compose(a.at(r, 1), b.at(1, c));
    }
  }
  return result;
}

MatOp operator*(const MultiPoly& p, const MatOp& a) {
  MatOp result;
  for (std::size_t i = 0; i < 4; ++i) result.entries_[i] = p * a.entries_[i];
  return result;
}

MatOp bracket(const MatOp& a, const MatOp& b, Bracket kind) {
  MatOp ab = a * b;
  MatOp ba = b * a;
  return kind == Bracket::commutator ? ab - ba : ab + ba;
}

bool mat_equal(const MatOp& a, const MatOp& b) { return (a - b).is_zero(); }

}  // namespace qes::sym
