#include <algorithm>
#include <stdexcept>
#include <string_view>

#include "qes/osp22.hpp"

namespace qes::osp {

using sym::Bracket;
using sym::DiffOp;
using sym::PolyPair;
using sym::Rational;
using sym::Var;

bool RelationReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const RelationEntry& e) { return e.pass; });
}

std::size_t RelationReport::count(EntryKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [kind](const RelationEntry& e) { return e.kind == kind; }));
}

void RelationReport::add(std::string name, const MatOp& lhs, const MatOp& rhs, EntryKind kind) {
  entries.push_back({std::move(name), lhs.str(), sym::mat_equal(lhs, rhs), kind});
}

namespace {

MatOp comm(const MatOp& a, const MatOp& b) { return sym::bracket(a, b, Bracket::commutator); }
MatOp anti(const MatOp& a, const MatOp& b) { return sym::bracket(a, b, Bracket::anticommutator); }

const MultiPoly kHalf(Rational(1, 2));

}  // namespace

RelationReport verify_osp_relations(const GeneratorSet& g, RelationSet set) {
  RelationReport r;
  const MatOp zero;

  r.add("[T0,T+] = T+", comm(g.t_zero, g.t_plus), g.t_plus);
  r.add("[T0,T-] = -T-", comm(g.t_zero, g.t_minus), -g.t_minus);
  r.add("[T+,T-] = -2T0", comm(g.t_plus, g.t_minus), MultiPoly(-2) * g.t_zero);
  r.add("[J,T0] = 0", comm(g.j, g.t_zero), zero);
  r.add("[J,T+] = 0", comm(g.j, g.t_plus), zero);
  r.add("[J,T-] = 0", comm(g.j, g.t_minus), zero);

  r.add("{Q1,Qb2} = -T-", anti(g.q1, g.qbar2), -g.t_minus);
  r.add("{Q2,Qb1} = T+", anti(g.q2, g.qbar1), g.t_plus);
  r.add("({Qb1,Q1}+{Qb2,Q2})/2 = J", kHalf * (anti(g.qbar1, g.q1) + anti(g.qbar2, g.q2)), g.j);
  r.add("({Qb1,Q1}-{Qb2,Q2})/2 = T0", kHalf * (anti(g.qbar1, g.q1) - anti(g.qbar2, g.q2)), g.t_zero);

  r.add("[Q1,T+] = Q2", comm(g.q1, g.t_plus), g.q2);
  r.add("[Q2,T+] = 0", comm(g.q2, g.t_plus), zero);
  r.add("[Q1,T-] = 0", comm(g.q1, g.t_minus), zero);
  r.add("[Q2,T-] = -Q1", comm(g.q2, g.t_minus), -g.q1);

  r.add("[Qb1,T+] = 0", comm(g.qbar1, g.t_plus), zero);
  if (set == RelationSet::printed) {
    r.add("[Qb2,T+] = Qb1", comm(g.qbar2, g.t_plus), g.qbar1);
  } else {
    r.add("[Qb2,T+] = -Qb1 (sign-corrected)", comm(g.qbar2, g.t_plus), -g.qbar1);
  }
  r.add("[Qb1,T-] = Qb2", comm(g.qbar1, g.t_minus), g.qbar2);
  r.add("[Qb2,T-] = 0", comm(g.qbar2, g.t_minus), zero);

  r.add("[Q1,T0] = Q1/2", comm(g.q1, g.t_zero), kHalf * g.q1);
  r.add("[Q2,T0] = -Q2/2", comm(g.q2, g.t_zero), -(kHalf * g.q2));
  r.add("[Qb1,T0] = -Qb1/2", comm(g.qbar1, g.t_zero), -(kHalf * g.qbar1));
  r.add("[Qb2,T0] = Qb2/2", comm(g.qbar2, g.t_zero), kHalf * g.qbar2);

  r.add("[Q1,J] = -Q1/2", comm(g.q1, g.j), -(kHalf * g.q1));
  r.add("[Q2,J] = -Q2/2", comm(g.q2, g.j), -(kHalf * g.q2));
  r.add("[Qb1,J] = Qb1/2", comm(g.qbar1, g.j), kHalf * g.qbar1);
  r.add("[Qb2,J] = Qb2/2", comm(g.qbar2, g.j), kHalf * g.qbar2);

  constexpr auto supp = EntryKind::supplementary;
  r.add("{Q1,Q1} = 0", anti(g.q1, g.q1), zero, supp);
  r.add("{Q2,Q2} = 0", anti(g.q2, g.q2), zero, supp);
  r.add("{Q1,Q2} = 0", anti(g.q1, g.q2), zero, supp);
  r.add("{Qb1,Qb1} = 0", anti(g.qbar1, g.qbar1), zero, supp);
  r.add("{Qb2,Qb2} = 0", anti(g.qbar2, g.qbar2), zero, supp);
  r.add("{Qb1,Qb2} = 0", anti(g.qbar1, g.qbar2), zero, supp);

  if (set == RelationSet::printed) {
    r.add("[Qb2,T+] = -Qb1 (sign-corrected)", comm(g.qbar2, g.t_plus), -g.qbar1, EntryKind::info);
  }
  return r;
}

RelationReport verify_structure_identities(const GeneratorSet& g) {
  const MultiPoly x = MultiPoly::variable(Var::x);
  const MultiPoly x2 = x * x;
  const MultiPoly two(2);
  RelationReport r;

  r.add("2 Q2 T0 T- - Q1 T+ T- = [[0,0],[x^2 d^2,0]]",
        two * (g.q2 * g.t_zero * g.t_minus) - g.q1 * g.t_plus * g.t_minus,
        MatOp::lower_left(DiffOp::term(x2, 2)));
  r.add("Q2 T- T- = [[0,0],[x d^2,0]]", g.q2 * g.t_minus * g.t_minus, MatOp::lower_left(DiffOp::term(x, 2)));
  r.add("Q2 T+ = [[0,0],[x^3 d - n x^2,0]]", g.q2 * g.t_plus,
        MatOp::lower_left(DiffOp::term(x2 * x, 1) - DiffOp::multiply(g.nparam * x2)));
  r.add("2 Q2 T0 - Q1 T+ = [[0,0],[x^2 d,0]]", two * (g.q2 * g.t_zero) - g.q1 * g.t_plus,
        MatOp::lower_left(DiffOp::term(x2, 1)));
  r.add("2 (Q2 T0 - Q1 T+) = [[0,0],[n x,0]]", two * (g.q2 * g.t_zero - g.q1 * g.t_plus),
        MatOp::lower_left(DiffOp::multiply(g.nparam * x)));
  r.add("Q2 T- = [[0,0],[x d,0]]", g.q2 * g.t_minus, MatOp::lower_left(DiffOp::term(x, 1)));
  r.add("Q1 T- = [[0,0],[d,0]]", g.q1 * g.t_minus, MatOp::lower_left(DiffOp::d()));
  return r;
}

RelationReport subspace_image_check(int nval) {
  if (nval < 0) throw std::invalid_argument("subspace_image_check: n must be non-negative");
  const GeneratorSet g = make_generators(MultiPoly(nval));
  const std::pair<std::string_view, const MatOp*> gens[] = {
      {"T+", &g.t_plus}, {"T0", &g.t_zero}, {"T-", &g.t_minus}, {"J", &g.j},
      {"Q1", &g.q1},     {"Q2", &g.q2},     {"Qb1", &g.qbar1},  {"Qb2", &g.qbar2},
  };

  std::vector<PolyPair> basis;
  for (int k = 0; k <= nval; ++k) basis.emplace_back(MultiPoly::x_power(static_cast<unsigned>(k)), MultiPoly());
  for (int k = 0; k <= nval + 1; ++k) basis.emplace_back(MultiPoly(), MultiPoly::x_power(static_cast<unsigned>(k)));

  RelationReport r;
  for (const auto& [name, op] : gens) {
    bool ok = true;
    std::string worst;
    for (const auto& v : basis) {
      const PolyPair image = op->apply(v);
      const bool in_space = image.first.degree(Var::x) <= nval && image.second.degree(Var::x) <= nval + 1 &&
                            !image.first.depends_on(Var::n) && !image.second.depends_on(Var::n);
      if (!in_space && ok) {
        ok = false;
        worst = "(" + image.first.str() + ", " + image.second.str() + ")";
      }
    }
    r.entries.push_back({std::string(name) + " preserves P^" + std::to_string(nval) + "_" +
                             std::to_string(nval + 1) + " (dim " + std::to_string(2 * nval + 3) + ")",
                         ok ? "in subspace" : worst, ok, EntryKind::relation});
  }
  return r;
}

}  // namespace qes::osp
