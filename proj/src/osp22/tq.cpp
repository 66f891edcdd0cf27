#include <stdexcept>
#include <vector>

#include "qes/osp22.hpp"

namespace qes::osp {

using sym::DiffOp;
using sym::Var;

TqParams TqParams::symbolic() {
  return {MultiPoly::variable(Var::n), MultiPoly::variable(Var::beta), MultiPoly::variable(Var::x0),
          MultiPoly::variable(Var::b), MultiPoly::variable(Var::c)};
}

MatOp build_tq_printed(const TqParams& p) {
  const MultiPoly x = MultiPoly::variable(Var::x);
  const MultiPoly x2 = x * x;
  const MultiPoly two_beta = MultiPoly(2) * p.beta;

  DiffOp t = DiffOp::term(x2 + p.x0 * x, 2) +
             DiffOp::term(-(x2 * x) - p.x0 * x2 + two_beta * x + two_beta * p.x0, 1) +
             DiffOp::multiply(p.n * x2 + (p.n * p.x0 + p.b - p.c) * x + p.b * p.x0);
  return MatOp::lower_left(std::move(t));
}

namespace {

/// numerator / denominator · ∂^order
struct FractionTerm {
  unsigned order;
  MultiPoly numerator;
  MultiPoly denominator;
};

}  // namespace

MatOp build_tq_from_d6(const TqParams& p) {
  const MultiPoly x = MultiPoly::variable(Var::x);
  const MultiPoly shifted = x + p.x0;

  // ∂² + (2β/x − x − 1/(x+x0))∂ + ε + b/x − c/(x+x0), with ε = n.
  const std::vector<FractionTerm> master = {
      {2, MultiPoly(1), MultiPoly(1)},
      {1, MultiPoly(2) * p.beta, x},
      {1, -x, MultiPoly(1)},
      {1, MultiPoly(-1), shifted},
      {0, p.n, MultiPoly(1)},
      {0, p.b, x},
      {0, -p.c, shifted},
  };

  const MultiPoly multiplier = x * shifted;
  DiffOp t;
  for (const auto& term : master) {
    auto [quotient, remainder] = (term.numerator * multiplier).divmod_x(term.denominator);
    if (!remainder.is_zero()) {
      throw std::logic_error("build_tq_from_d6: denominator " + term.denominator.str() + " does not cancel");
    }
    t += DiffOp::term(quotient, term.order);
  }
  return MatOp::lower_left(std::move(t));
}

MatOp build_tq_algebraic(const GeneratorSet& g, const TqParams& p, DecompositionMode mode) {
  const MultiPoly two(2);
  const MultiPoly q2tm_coeff =
      mode == DecompositionMode::faithful ? two * p.beta : two * p.beta - MultiPoly(1);

  const MatOp q2t0 = g.q2 * g.t_zero;
  const MatOp q1tp = g.q1 * g.t_plus;
  return (two * (q2t0 * g.t_minus) - q1tp * g.t_minus)   //
         + p.x0 * (g.q2 * g.t_minus * g.t_minus)         //
         - g.q2 * g.t_plus                               //
         - p.x0 * (two * q2t0 - q1tp)                    //
         + q2tm_coeff * (g.q2 * g.t_minus)               //
         + (two * p.beta * p.x0) * (g.q1 * g.t_minus)    //
         + (two * p.x0) * (q2t0 - q1tp)                  //
         + (p.b - p.c) * g.q2                            //
         + (p.b * p.x0) * g.q1;
}

RelationReport verify_decomposition(const GeneratorSet& g, const TqParams& p) {
  const MatOp printed = build_tq_printed(p);
  const MatOp from_d6 = build_tq_from_d6(p);
  const MatOp faithful = build_tq_algebraic(g, p, DecompositionMode::faithful);
  const MatOp corrected = build_tq_algebraic(g, p, DecompositionMode::corrected);
  const MultiPoly x = MultiPoly::variable(Var::x);

  RelationReport r;
  r.add("faithful generator combination = printed T_Q", faithful, printed);
  r.add("corrected generator combination (2beta-1 on Q2 T-) = T from master equation", corrected, from_d6);
  r.add("faithful - corrected = [[0,0],[x d,0]]", faithful - corrected, MatOp::lower_left(DiffOp::term(x, 1)));
  r.add("T from master equation - printed T_Q = [[0,0],[-x d,0]]", from_d6 - printed,
        MatOp::lower_left(DiffOp::term(-x, 1)), EntryKind::info);
  return r;
}

}  // namespace qes::osp
