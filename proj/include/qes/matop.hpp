#pragma once

#include <array>
#include <string>
#include <utility>

#include "qes/diffop.hpp"

namespace qes::sym {

/// Two-component polynomial function (upper, lower).
using PolyPair = std::pair<MultiPoly, MultiPoly>;

/// 2×2 matrix of differential operators acting on column vectors.
/// In a product A·B the right factor acts first.
class MatOp {
 public:
  MatOp() = default;
  MatOp(DiffOp a00, DiffOp a01, DiffOp a10, DiffOp a11)
      : entries_{std::move(a00), std::move(a01), std::move(a10), std::move(a11)} {}

  static MatOp zero() { return {}; }
  static MatOp identity();
  static MatOp diag(DiffOp upper, DiffOp lower);
  /// [[0,0],[op,0]]
  static MatOp lower_left(DiffOp op);

  [[nodiscard]] const DiffOp& at(int row, int col) const { return entries_[index(row, col)]; }
  DiffOp& at(int row, int col) { return entries_[index(row, col)]; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] PolyPair apply(const PolyPair& v) const;
  [[nodiscard]] MatOp subst(const Bindings& values) const;
  [[nodiscard]] std::string str() const;

  MatOp& operator+=(const MatOp& rhs);
  MatOp& operator-=(const MatOp& rhs);

  friend MatOp operator+(MatOp a, const MatOp& b) { return a += b; }
  friend MatOp operator-(MatOp a, const MatOp& b) { return a -= b; }
  friend MatOp operator-(const MatOp& a);
  friend MatOp operator*(const MatOp& a, const MatOp& b);
  /// Entrywise left multiplication by a polynomial scalar.
  friend MatOp operator*(const MultiPoly& p, const MatOp& a);
  friend bool operator==(const MatOp& a, const MatOp& b) { return a.entries_ == b.entries_; }

 private:
  static constexpr std::size_t index(int row, int col) { return static_cast<std::size_t>(2 * row + col); }

  std::array<DiffOp, 4> entries_{};
};

MatOp bracket(const MatOp& a, const MatOp& b, Bracket kind);

/// Exact equality after canonicalization (A − B is the zero matrix).
bool mat_equal(const MatOp& a, const MatOp& b);

}  // namespace qes::sym
