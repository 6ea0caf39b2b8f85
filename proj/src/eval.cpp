#include "csup/eval.hpp"

namespace csup {

namespace {
Rat eval_csup(const TermPtr& t, const Valuation& v);
}

Rat eval(const TermPtr& t, const Valuation& v) {
  if (!t) throw EvalError("null term");
  switch (t->op) {
    case Op::Zero: return Rat(0);
    case Op::One: return Rat(1);
    case Op::Var: {
      auto it = v.find(t->name);
      if (it == v.end()) throw EvalError("unbound variable '" + t->name + "'");
      return it->second;
    }
    case Op::Neg: return -eval(t->a, v);
    case Op::Add: return eval(t->a, v) + eval(t->b, v);
    case Op::Meet: return min(eval(t->a, v), eval(t->b, v));
    case Op::Join: return max(eval(t->a, v), eval(t->b, v));
    case Op::ScalarMul: return t->scalar * eval(t->a, v);
    case Op::NatScale: throw EvalError("free index in term");
    case Op::CSup: return eval_csup(t, v);
  }
  throw EvalError("unknown operation");
}

PLFunction1 pl_of_index(const TermPtr& body, const Valuation& v) {
  if (!body) throw EvalError("null body");
  switch (body->op) {
    case Op::Zero: return PLFunction1::constant(Rat(0));
    case Op::One: return PLFunction1::constant(Rat(1));
    case Op::Var: return PLFunction1::constant(eval(body, v));
    case Op::Neg: return pl_of_index(body->a, v).negate();
    case Op::Add: return pl_add(pl_of_index(body->a, v), pl_of_index(body->b, v));
    case Op::Meet: return pl_min(pl_of_index(body->a, v), pl_of_index(body->b, v));
    case Op::Join: return pl_max(pl_of_index(body->a, v), pl_of_index(body->b, v));
    case Op::ScalarMul: return pl_of_index(body->a, v).scale(body->scalar);
    case Op::NatScale: {
      // (alpha*nu + beta) * c is affine in nu.
      Rat c = eval(body->a, v);
      return PLFunction1::affine(Rat(body->index.alpha) * c, Rat(body->index.beta) * c);
    }
    case Op::CSup: throw EvalError("csup inside an indexed family body");
  }
  throw EvalError("unknown operation");
}

SupWitness sup_over_integers_w(const PLFunction1& p, const Rat& cap) {
  PLFunction1::IntSup s = p.sup_integers();
  if (s.bounded && s.value <= cap) return {s.value, s.witness};
  // The family exceeds (or is) the cap somewhere, so the capped sup is cap.
  auto n = p.first_integer_above(cap, false);
  if (!n) {
    // Unbounded tail that has not reached cap at any integer yet cannot
    // happen: positive slope reaches every rational.
    throw EvalError("internal: unbounded family below its cap");
  }
  return {cap, *n};
}

Rat sup_over_integers(const PLFunction1& p, const Rat& cap) {
  return sup_over_integers_w(p, cap).value;
}

PositivityWitness exists_positive(const PLFunction1& p) {
  auto n = p.first_integer_above(Rat(0), true);
  if (n) return {true, *n};
  return {false, 0};
}

namespace {
// Shared evaluation for double-indexed data: values of the finite head list
// plus the indexed body, capped by cap. Preconditions checked exactly.
Rat double_sup_impl(const std::vector<TermPtr>& heads, const TermPtr& body, const Rat& cap,
                    const Valuation& v) {
  if (cap.is_negative()) throw EvalError("double-indexed cap must be nonnegative");
  bool positive = false;
  for (size_t i = 0; i < heads.size(); ++i) {
    Rat c = eval(heads[i], v);
    if (c.is_negative())
      throw EvalError("double-indexed member must be nonnegative; index " +
                      std::to_string(i + 1));
    if (c.is_positive()) positive = true;
  }
  if (body) {
    PLFunction1 p = pl_of_index(body, v);
    PositivityWitness neg = exists_positive(p.negate());
    if (neg.found)
      throw EvalError("double-indexed member must be nonnegative; index " +
                      std::to_string(heads.size() + static_cast<size_t>(neg.witness)));
    if (!positive) positive = exists_positive(p).found;
  }
  // sup_{k} min(k*c, cap) is cap for any c > 0 and 0 for c = 0.
  return positive ? cap : Rat(0);
}

Rat eval_csup(const TermPtr& t, const Valuation& v) {
  Rat cap = eval(t->a, v);
  const FamilySpec& f = *t->family;
  switch (f.kind) {
    case FamilySpec::Kind::EventuallyConstant: {
      Rat best = min(eval(f.tail, v), cap);
      for (const auto& p : f.prefix) best = max(best, min(eval(p, v), cap));
      return best;
    }
    case FamilySpec::Kind::IndexedPL:
      return sup_over_integers(pl_of_index(f.body, v), cap);
    case FamilySpec::Kind::DoubleIndexed:
      return double_sup_impl(f.prefix, f.body, cap, v);
  }
  throw EvalError("unknown family kind");
}
}  // namespace

Rat double_sup(const TermPtr& body, const TermPtr& cap_term, const Valuation& v) {
  return double_sup_impl({}, body, eval(cap_term, v), v);
}

Rat truncated_sup(const TermPtr& t, const Valuation& v, long long N) {
  if (!t || t->op != Op::CSup) throw EvalError("truncated_sup requires a csup term");
  if (N < 1) throw EvalError("truncation bound must be >= 1");
  Rat cap = eval(t->a, v);
  const FamilySpec& f = *t->family;
  if (f.kind == FamilySpec::Kind::DoubleIndexed) {
    Rat best = min(eval(family_member2(t->family, 1, 1), v), cap);
    for (long long n = 1; n <= N; ++n)
      for (long long k = 1; k <= N; ++k)
        best = max(best, min(eval(family_member2(t->family, n, k), v), cap));
    return best;
  }
  Rat best = min(eval(family_member(t->family, 1), v), cap);
  for (long long n = 2; n <= N; ++n)
    best = max(best, min(eval(family_member(t->family, n), v), cap));
  return best;
}

}  // namespace csup
