#include "csup/axioms.hpp"

namespace csup {

namespace {

void push(AxiomSuite& suite, const std::string& name, TermPtr lhs, TermPtr rhs) {
  suite.equations.push_back(
      {name, make_equation(std::move(lhs), std::move(rhs), suite.variety)});
}

void push_le(AxiomSuite& suite, const std::string& name, TermPtr a, TermPtr b) {
  suite.equations.push_back({name, ineq_to_eq(std::move(a), std::move(b), suite.variety)});
}

/// The two family shapes at which the countable-sup schemas are instantiated.
std::vector<std::pair<std::string, FamilyPtr>> schema_families() {
  TermPtr f1 = var("f1"), f2 = var("f2"), f3 = var("f3"), f4 = var("f4");
  FamilyPtr ec = family_ec({f1, f2, f3}, f4);
  FamilyPtr pl = family_pl(meet(add(nat_scale(IndexExpr{1, 0}, f1), f2), f3));
  return {{"ec", ec}, {"pl", pl}};
}

void push_group_and_lattice(AxiomSuite& suite) {
  TermPtr a = var("a"), b = var("b"), c = var("c");
  push(suite, "add-assoc", add(add(a, b), c), add(a, add(b, c)));
  push(suite, "add-comm", add(a, b), add(b, a));
  push(suite, "add-zero", add(a, zero()), a);
  push(suite, "add-inverse", add(a, neg(a)), zero());
  push(suite, "meet-comm", meet(a, b), meet(b, a));
  push(suite, "join-comm", join(a, b), join(b, a));
  push(suite, "meet-assoc", meet(meet(a, b), c), meet(a, meet(b, c)));
  push(suite, "join-assoc", join(join(a, b), c), join(a, join(b, c)));
  push(suite, "absorb-join", join(a, meet(a, b)), a);
  push(suite, "absorb-meet", meet(a, join(a, b)), a);
  push(suite, "meet-idem", meet(a, a), a);
  push(suite, "join-idem", join(a, a), a);
  push(suite, "add-distributes-over-meet", add(a, meet(b, c)), meet(add(a, b), add(a, c)));
}

void push_csup_axioms(AxiomSuite& suite) {
  TermPtr g = var("g"), h = var("h");
  for (const auto& [tag, fam] : schema_families()) {
    // Meeting every member with the bound leaves the sup unchanged.
    push(suite, "csup-absorbs-bound-" + tag, csup_of(g, fam), csup_of(g, family_meet(fam, g)));
    // The sup splits off its first member.
    push(suite, "csup-peels-head-" + tag, csup_of(g, fam),
         join(meet(family_member(fam, 1), g), csup_of(g, shift_family(fam, 1))));
    // A sup of members meeting h stays below h.
    push_le(suite, "csup-meet-below-cap-" + tag, csup_of(g, family_meet(fam, h)), h);
  }
}

void push_unit_axiom(AxiomSuite& suite) {
  // |f| is recovered by saturating the unit: sup_n (|f| /\ n*1) = |f|.
  TermPtr af = abs_of(var("f"));
  FamilyPtr fam = family_pl(meet(af, nat_scale(IndexExpr{1, 0}, one())));
  push(suite, "unit-saturation", csup_of(af, fam), af);
}

void push_scalar_axioms(AxiomSuite& suite) {
  TermPtr a = var("a"), b = var("b");
  Rat p(3, 4), q(-5, 2), r(5, 2);
  push(suite, "scalar-distributes-over-add", scalar_mul(q, add(a, b)),
       add(scalar_mul(q, a), scalar_mul(q, b)));
  push(suite, "scalar-sum-splits", scalar_mul(p + q, a),
       add(scalar_mul(p, a), scalar_mul(q, a)));
  push(suite, "scalar-composes", scalar_mul(p * q, a), scalar_mul(p, scalar_mul(q, a)));
  push(suite, "scalar-identity", scalar_mul(Rat(1), a), a);
  push(suite, "positive-scalar-distributes-over-join", scalar_mul(r, join(a, b)),
       join(scalar_mul(r, a), scalar_mul(r, b)));
}

}  // namespace

AxiomSuite axiom_suite(Signature sig) {
  AxiomSuite suite;
  suite.variety = sig;
  push_group_and_lattice(suite);
  push_csup_axioms(suite);
  if (allows_scalar(sig)) push_scalar_axioms(suite);
  if (allows_one(sig)) push_unit_axiom(suite);
  return suite;
}

}  // namespace csup
