#include "qes/osp22.hpp"

namespace qes::osp {

using sym::DiffOp;
using sym::Rational;
using sym::Var;

GeneratorSet make_generators(const MultiPoly& nparam) {
  const MultiPoly x = MultiPoly::variable(Var::x);
  const MultiPoly x2 = x * x;
  const MultiPoly n1 = nparam + MultiPoly(1);
  const MultiPoly half(Rational(1, 2));
  const DiffOp d = DiffOp::d();

  GeneratorSet g;
  g.nparam = nparam;
  g.t_plus = MatOp::diag(DiffOp::term(x2, 1) - DiffOp::multiply(nparam * x),
                         DiffOp::term(x2, 1) - DiffOp::multiply(n1 * x));
  g.t_zero = MatOp::diag(DiffOp::term(x, 1) - DiffOp::multiply(half * nparam),
                         DiffOp::term(x, 1) - DiffOp::multiply(half * n1));
  g.t_minus = MatOp::diag(d, d);
  g.j = MatOp::diag(DiffOp::multiply(-half * (nparam + MultiPoly(2))), DiffOp::multiply(-half * n1));
  g.q1 = MatOp::lower_left(DiffOp::multiply(1));
  g.q2 = MatOp::lower_left(DiffOp::multiply(x));
  g.qbar1 = MatOp({}, DiffOp::term(x, 1) - DiffOp::multiply(n1), {}, {});
  g.qbar2 = MatOp({}, -d, {}, {});
  return g;
}

}  // namespace qes::osp
