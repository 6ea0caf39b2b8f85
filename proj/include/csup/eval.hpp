#pragma once

#include <map>
#include <string>

#include "csup/pl_function.hpp"
#include "csup/term.hpp"

namespace csup {

using Valuation = std::map<std::string, Rat>;

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exact value of a signature-valid term at a rational point. Countable sups
/// are computed exactly per family form: eventually-constant families reduce
/// to a finite max, indexed families to piecewise-linear analysis, and
/// double-indexed families to the positivity test below.
Rat eval(const TermPtr& t, const Valuation& v);

/// The member value as a function of the index: n |-> eval(body at n, v),
/// extended to real arguments >= 1. Exact, since every body construct is
/// piecewise linear in the index at a fixed valuation.
PLFunction1 pl_of_index(const TermPtr& body, const Valuation& v);

/// sup over integers n >= 1 of min(p(n), cap). The supremum is always either
/// attained at an integer or equal to cap; witness is the smallest integer
/// where min(p(n), cap) reaches the returned value.
struct SupWitness {
  Rat value;
  long long witness;
};
SupWitness sup_over_integers_w(const PLFunction1& p, const Rat& cap);
Rat sup_over_integers(const PLFunction1& p, const Rat& cap);

/// Is p(n) > 0 for some integer n >= 1? Witness: the smallest such n.
struct PositivityWitness {
  bool found;
  long long witness;
};
PositivityWitness exists_positive(const PLFunction1& p);

/// sup over n,k >= 1 of min(k * c(n), cap) where c(n) = eval(body at n, v)
/// and cap = eval(cap_term, v). Requires cap >= 0 and c(n) >= 0 for all n;
/// equals cap when some c(n) > 0, else 0.
Rat double_sup(const TermPtr& body, const TermPtr& cap_term, const Valuation& v);

/// Independent oracle: max over member indices <= N of eval(member /\ bound).
/// Monotone nondecreasing in N and bounded by eval(t, v). Double-indexed
/// families truncate both indices at N. Uses only member expansion plus
/// finitary evaluation, no piecewise-linear analysis.
Rat truncated_sup(const TermPtr& t, const Valuation& v, long long N);

}  // namespace csup
