#pragma once

#include <map>
#include <string>

#include "qes/multipoly.hpp"

namespace qes::sym {

enum class Bracket { commutator, anticommutator };

/// Differential operator Σ_k p_k · ∂_x^k with polynomial coefficients.
///
/// Summands with zero coefficient are never stored; the zero operator has
/// no summands.
class DiffOp {
 public:
  using Summands = std::map<unsigned, MultiPoly>;

  DiffOp() = default;

  /// p · ∂^order
  static DiffOp term(const MultiPoly& coeff, unsigned order);
  /// Multiplication by p (order 0).
  static DiffOp multiply(const MultiPoly& p) { return term(p, 0); }
  /// ∂^order
  static DiffOp d(unsigned order = 1) { return term(MultiPoly(1), order); }

  [[nodiscard]] const Summands& summands() const { return summands_; }
  [[nodiscard]] bool is_zero() const { return summands_.empty(); }
  /// Highest order present, -1 for the zero operator.
  [[nodiscard]] int order() const;
  /// Coefficient of ∂^k (zero polynomial if absent).
  [[nodiscard]] MultiPoly coeff(unsigned k) const;

  /// Apply to a polynomial: Σ p_k · d^k v / dx^k.
  [[nodiscard]] MultiPoly apply(const MultiPoly& v) const;
  [[nodiscard]] DiffOp subst(const Bindings& values) const;
  [[nodiscard]] std::string str() const;

  DiffOp& operator+=(const DiffOp& rhs);
  DiffOp& operator-=(const DiffOp& rhs);

  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator-(const DiffOp& a);
  /// Left multiplication by a polynomial: p·(Σ q_k ∂^k) = Σ (p q_k) ∂^k.
  friend DiffOp operator*(const MultiPoly& p, const DiffOp& a);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.summands_ == b.summands_; }

 private:
  void add_summand(unsigned order, const MultiPoly& coeff);

  Summands summands_;
};

/// a∘b, normalized with the Leibniz rule ∂^i∘q = Σ_k C(i,k) q^{(k)} ∂^{i-k}.
DiffOp compose(const DiffOp& a, const DiffOp& b);

/// a∘b − b∘a or a∘b + b∘a.
DiffOp bracket(const DiffOp& a, const DiffOp& b, Bracket kind);

}  // namespace qes::sym
