#include "csup/gen.hpp"

namespace csup {

Rat random_small_rat(Rng& rng) {
  static const long long dens[] = {1, 2, 3, 4};
  return Rat(rng.range(-12, 12), dens[rng.below(4)]);
}

namespace {
TermPtr random_leaf(Rng& rng, Signature sig, const std::vector<std::string>& vars) {
  long long pick = rng.below(vars.empty() ? 2 : 8);
  if (!vars.empty() && pick >= 2) return var(vars[rng.below((long long)vars.size())]);
  if (pick == 1 && allows_one(sig)) return one();
  return zero();
}
}  // namespace

TermPtr random_term(Rng& rng, Signature sig, const std::vector<std::string>& vars, int depth,
                    bool allow_csup) {
  if (depth <= 0) return random_leaf(rng, sig, vars);
  switch (rng.below(10)) {
    case 0:
      return random_leaf(rng, sig, vars);
    case 1:
      return neg(random_term(rng, sig, vars, depth - 1, allow_csup));
    case 2:
    case 3:
      return add(random_term(rng, sig, vars, depth - 1, allow_csup),
                 random_term(rng, sig, vars, depth - 1, allow_csup));
    case 4:
    case 5:
      return meet(random_term(rng, sig, vars, depth - 1, allow_csup),
                  random_term(rng, sig, vars, depth - 1, allow_csup));
    case 6:
    case 7:
      return join(random_term(rng, sig, vars, depth - 1, allow_csup),
                  random_term(rng, sig, vars, depth - 1, allow_csup));
    case 8:
      if (allows_scalar(sig)) {
        Rat q = random_small_rat(rng);
        if (q.is_zero()) q = Rat(1, 2);
        return scalar_mul(q, random_term(rng, sig, vars, depth - 1, allow_csup));
      }
      return sub(random_term(rng, sig, vars, depth - 1, allow_csup),
                 random_term(rng, sig, vars, depth - 1, allow_csup));
    default:
      if (allow_csup) {
        TermPtr bound = random_term(rng, sig, vars, depth - 1, false);
        return csup_of(bound, random_family(rng, sig, vars));
      }
      return random_leaf(rng, sig, vars);
  }
}

TermPtr random_pl_body(Rng& rng, Signature sig, const std::vector<std::string>& vars,
                       int depth) {
  if (depth <= 0) {
    if (rng.below(3) == 0) {
      // An index factor over an index-free leaf.
      IndexExpr e{rng.range(0, 3), rng.range(0, 3)};
      if (e.alpha + e.beta < 1) e.beta = 1 - e.alpha + rng.range(0, 2);
      return nat_scale(e, random_leaf(rng, sig, vars));
    }
    return random_leaf(rng, sig, vars);
  }
  switch (rng.below(8)) {
    case 0: {
      IndexExpr e{rng.range(0, 3), rng.range(0, 3)};
      if (e.alpha + e.beta < 1) e.beta = 1 - e.alpha + rng.range(0, 2);
      // random_term never emits a free index, so the operand is index-free.
      return nat_scale(e, random_term(rng, sig, vars, 1, false));
    }
    case 1:
      return neg(random_pl_body(rng, sig, vars, depth - 1));
    case 2:
    case 3:
      return add(random_pl_body(rng, sig, vars, depth - 1),
                 random_pl_body(rng, sig, vars, depth - 1));
    case 4:
      return meet(random_pl_body(rng, sig, vars, depth - 1),
                  random_pl_body(rng, sig, vars, depth - 1));
    case 5:
      return join(random_pl_body(rng, sig, vars, depth - 1),
                  random_pl_body(rng, sig, vars, depth - 1));
    case 6:
      if (allows_scalar(sig)) {
        Rat q = random_small_rat(rng);
        if (q.is_zero()) q = Rat(1, 2);
        return scalar_mul(q, random_pl_body(rng, sig, vars, depth - 1));
      }
      return random_pl_body(rng, sig, vars, depth - 1);
    default:
      return random_pl_body(rng, sig, vars, depth - 1);
  }
}

FamilyPtr random_family(Rng& rng, Signature sig, const std::vector<std::string>& vars) {
  if (rng.coin()) {
    std::vector<TermPtr> prefix;
    long long m = rng.range(0, 3);
    for (long long i = 0; i < m; ++i)
      prefix.push_back(random_term(rng, sig, vars, 2, false));
    return family_ec(std::move(prefix), random_term(rng, sig, vars, 2, false));
  }
  return family_pl(random_pl_body(rng, sig, vars, 2));
}

QuasiEquation random_quasi(Rng& rng, Signature sig, const std::vector<std::string>& vars,
                           int max_finite, bool with_indexed) {
  QuasiEquation qe;
  qe.sig = sig;
  long long m = rng.range(0, max_finite);
  for (long long i = 0; i < m; ++i)
    qe.finite_premises.emplace_back(random_term(rng, sig, vars, 2, false),
                                    random_term(rng, sig, vars, 2, false));
  if (with_indexed)
    qe.indexed_premises = {random_pl_body(rng, sig, vars, 2),
                           random_pl_body(rng, sig, vars, 2)};
  qe.conclusion = {random_term(rng, sig, vars, 2, false),
                   random_term(rng, sig, vars, 2, false)};
  return qe;
}

}  // namespace csup
