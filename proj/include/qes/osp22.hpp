#pragma once

#include <string>
#include <vector>

#include "qes/matop.hpp"

namespace qes::osp {

using sym::MatOp;
using sym::MultiPoly;

/// The eight 2×2 differential-matrix generators of osp(2,2) acting on
/// pairs (q_n, p_{n+1}). `nparam` is either the symbol n or a rational.
struct GeneratorSet {
  MultiPoly nparam;
  MatOp t_plus;
  MatOp t_zero;
  MatOp t_minus;
  MatOp j;
  MatOp q1;
  MatOp q2;
  MatOp qbar1;
  MatOp qbar2;
};

GeneratorSet make_generators(const MultiPoly& nparam);
inline GeneratorSet make_symbolic_generators() { return make_generators(MultiPoly::variable(sym::Var::n)); }

enum class EntryKind {
  relation,       ///< required identity
  supplementary,  ///< extra consistency check not printed with the relations
  info,           ///< documented fact that is checked, reported separately
};

struct RelationEntry {
  std::string name;
  std::string lhs;  ///< rendering of the evaluated left-hand side
  bool pass = false;
  EntryKind kind = EntryKind::relation;
};

struct RelationReport {
  std::vector<RelationEntry> entries;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::size_t count(EntryKind kind) const;
  void add(std::string name, const MatOp& lhs, const MatOp& rhs, EntryKind kind = EntryKind::relation);
};

/// Which statement of [Qb2,T+] to check. The literature form `printed` reads
/// [Qb2,T+] = Qb1; the super-Jacobi identity applied to {Q1,Qb2} = -T- and
/// T+ forces [Qb2,T+] = -Qb1 whenever J + T0 != 0, which `corrected` uses.
enum class RelationSet { printed, corrected };

/// The 26 (anti)commutation relations in their customary order, followed by
/// six supplementary nilpotency checks. In `printed` mode an extra info
/// entry records the sign-corrected [Qb2,T+].
RelationReport verify_osp_relations(const GeneratorSet& g, RelationSet set = RelationSet::printed);

/// The seven generator products used to assemble T_Q (six printed lines).
RelationReport verify_structure_identities(const GeneratorSet& g);

/// Parameters of the scaled radial operator, symbolic or rational.
struct TqParams {
  MultiPoly n;
  MultiPoly beta;
  MultiPoly x0;
  MultiPoly b;
  MultiPoly c;

  static TqParams symbolic();
};

/// [[0,0],[T_Q,0]] with T_Q exactly in its printed closed form.
MatOp build_tq_printed(const TqParams& p);

/// [[0,0],[T,0]] where T is the master radial operator multiplied through by
/// x(x+x0) with ε := n. The multiplication and the exact cancellation of the
/// denominators x and x+x0 are performed by the polynomial engine.
MatOp build_tq_from_d6(const TqParams& p);

enum class DecompositionMode { faithful, corrected };

/// Linear combination of generator products. `faithful` uses 2β on Q₂T⁻ as
/// printed; `corrected` uses 2β−1, which reproduces build_tq_from_d6.
MatOp build_tq_algebraic(const GeneratorSet& g, const TqParams& p, DecompositionMode mode);

/// Three checks: faithful ≡ printed, corrected ≡ from_d6 and
/// from_d6 − printed = [[0,0],[−x∂,0]] (the latter tagged info).
RelationReport verify_decomposition(const GeneratorSet& g, const TqParams& p);

/// For integer n ≥ 0, every generator maps every basis vector of the
/// (2n+3)-dimensional space {(q, p): deg q ≤ n, deg p ≤ n+1} into itself.
/// One report entry per generator.
RelationReport subspace_image_check(int nval);

}  // namespace qes::osp
