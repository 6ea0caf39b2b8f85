#include "csup/term.hpp"

#include <sstream>

namespace csup {

const char* signature_name(Signature s) {
  switch (s) {
    case Signature::LG: return "lg";
    case Signature::LGu: return "lgu";
    case Signature::RS: return "rs";
    case Signature::RSu: return "rsu";
  }
  return "?";
}

std::optional<Signature> signature_from_name(const std::string& name) {
  if (name == "lg") return Signature::LG;
  if (name == "lgu") return Signature::LGu;
  if (name == "rs") return Signature::RS;
  if (name == "rsu") return Signature::RSu;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace {
TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

TermPtr zero() {
  static const TermPtr z = make({Op::Zero, "", Rat(), {}, nullptr, nullptr, nullptr});
  return z;
}

TermPtr one() {
  static const TermPtr o = make({Op::One, "", Rat(), {}, nullptr, nullptr, nullptr});
  return o;
}

TermPtr var(std::string name) {
  if (name.empty()) throw TermError("variable with empty name");
  return make({Op::Var, std::move(name), Rat(), {}, nullptr, nullptr, nullptr});
}

TermPtr neg(TermPtr t) {
  return make({Op::Neg, "", Rat(), {}, std::move(t), nullptr, nullptr});
}

TermPtr add(TermPtr a, TermPtr b) {
  return make({Op::Add, "", Rat(), {}, std::move(a), std::move(b), nullptr});
}

TermPtr sub(TermPtr a, TermPtr b) { return add(std::move(a), neg(std::move(b))); }

TermPtr meet(TermPtr a, TermPtr b) {
  return make({Op::Meet, "", Rat(), {}, std::move(a), std::move(b), nullptr});
}

TermPtr join(TermPtr a, TermPtr b) {
  return make({Op::Join, "", Rat(), {}, std::move(a), std::move(b), nullptr});
}

TermPtr scalar_mul(Rat q, TermPtr t) {
  return make({Op::ScalarMul, "", q, {}, std::move(t), nullptr, nullptr});
}

TermPtr nat_scale(IndexExpr e, TermPtr t) {
  if (e.alpha < 0 || e.alpha + e.beta < 1)
    throw TermError("index expression must be positive for every index >= 1");
  return make({Op::NatScale, "", Rat(), e, std::move(t), nullptr, nullptr});
}

TermPtr csup_of(TermPtr bound, FamilyPtr family) {
  return make({Op::CSup, "", Rat(), {}, std::move(bound), nullptr, std::move(family)});
}

TermPtr abs_of(TermPtr t) { return join(t, neg(t)); }
TermPtr pos_part(TermPtr t) { return join(std::move(t), zero()); }
TermPtr neg_part(TermPtr t) { return join(neg(std::move(t)), zero()); }

TermPtr times(long long m, TermPtr t) {
  if (m < 1) throw TermError("times requires a positive multiplier");
  TermPtr acc = t;
  for (long long i = 1; i < m; ++i) acc = add(acc, t);
  return acc;
}

FamilyPtr family_constant(TermPtr t) { return family_ec({}, std::move(t)); }

FamilyPtr family_ec(std::vector<TermPtr> prefix, TermPtr tail) {
  if (!tail) throw TermError("eventually constant family requires a tail");
  return std::make_shared<const FamilySpec>(
      FamilySpec{FamilySpec::Kind::EventuallyConstant, std::move(prefix), std::move(tail), nullptr});
}

FamilyPtr family_pl(TermPtr body) {
  if (!body) throw TermError("indexed family requires a body");
  return std::make_shared<const FamilySpec>(
      FamilySpec{FamilySpec::Kind::IndexedPL, {}, nullptr, std::move(body)});
}

FamilyPtr family_double(std::vector<TermPtr> head, TermPtr body) {
  if (!body) throw TermError("double-indexed family requires a body");
  return std::make_shared<const FamilySpec>(
      FamilySpec{FamilySpec::Kind::DoubleIndexed, std::move(head), nullptr, std::move(body)});
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool term_equal(const TermPtr& x, const TermPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->op != y->op) return false;
  switch (x->op) {
    case Op::Zero:
    case Op::One: return true;
    case Op::Var: return x->name == y->name;
    case Op::Neg: return term_equal(x->a, y->a);
    case Op::Add:
    case Op::Meet:
    case Op::Join: return term_equal(x->a, y->a) && term_equal(x->b, y->b);
    case Op::ScalarMul: return x->scalar == y->scalar && term_equal(x->a, y->a);
    case Op::NatScale: return x->index == y->index && term_equal(x->a, y->a);
    case Op::CSup: return term_equal(x->a, y->a) && family_equal(x->family, y->family);
  }
  return false;
}

bool family_equal(const FamilyPtr& x, const FamilyPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  if (x->prefix.size() != y->prefix.size()) return false;
  for (size_t i = 0; i < x->prefix.size(); ++i)
    if (!term_equal(x->prefix[i], y->prefix[i])) return false;
  return term_equal(x->tail, y->tail) && term_equal(x->body, y->body);
}

// ---------------------------------------------------------------------------
// Free index occurrences
// ---------------------------------------------------------------------------

// A NatScale node refers to the index of the nearest enclosing indexed family
// body; outside of such a body the occurrence is free. Family bodies bind the
// index, eventually-constant members and double-index heads do not.
bool uses_index(const TermPtr& t) {
  if (!t) return false;
  switch (t->op) {
    case Op::Zero:
    case Op::One:
    case Op::Var: return false;
    case Op::NatScale: return true;
    case Op::Neg:
    case Op::ScalarMul: return uses_index(t->a);
    case Op::Add:
    case Op::Meet:
    case Op::Join: return uses_index(t->a) || uses_index(t->b);
    case Op::CSup: {
      if (uses_index(t->a)) return true;
      const FamilySpec& f = *t->family;
      for (const auto& p : f.prefix)
        if (uses_index(p)) return true;
      if (f.tail && uses_index(f.tail)) return true;
      // f.body binds the index; nothing in it is free.
      return false;
    }
  }
  return false;
}

bool contains_csup(const TermPtr& t) {
  if (!t) return false;
  switch (t->op) {
    case Op::Zero:
    case Op::One:
    case Op::Var: return false;
    case Op::Neg:
    case Op::ScalarMul:
    case Op::NatScale: return contains_csup(t->a);
    case Op::Add:
    case Op::Meet:
    case Op::Join: return contains_csup(t->a) || contains_csup(t->b);
    case Op::CSup: return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

namespace {
void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  switch (t->op) {
    case Op::Zero:
    case Op::One: return;
    case Op::Var: out.insert(t->name); return;
    case Op::Neg:
    case Op::ScalarMul:
    case Op::NatScale: collect_vars(t->a, out); return;
    case Op::Add:
    case Op::Meet:
    case Op::Join:
      collect_vars(t->a, out);
      collect_vars(t->b, out);
      return;
    case Op::CSup: {
      collect_vars(t->a, out);
      const FamilySpec& f = *t->family;
      for (const auto& p : f.prefix) collect_vars(p, out);
      collect_vars(f.tail, out);
      collect_vars(f.body, out);
      return;
    }
  }
}
}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {
struct ValidateCtx {
  Signature sig;
  bool in_body;     // inside an indexed family body: NatScale legal here
  bool allow_csup;  // false inside indexed family bodies and NatScale operands
};

void validate_rec(const TermPtr& t, const ValidateCtx& ctx) {
  if (!t) throw TermError("null term");
  switch (t->op) {
    case Op::Zero:
      return;
    case Op::One:
      if (!allows_one(ctx.sig))
        throw SignatureError(std::string("constant one is not in signature ") +
                             signature_name(ctx.sig));
      return;
    case Op::Var:
      return;
    case Op::Neg:
      validate_rec(t->a, ctx);
      return;
    case Op::Add:
    case Op::Meet:
    case Op::Join:
      validate_rec(t->a, ctx);
      validate_rec(t->b, ctx);
      return;
    case Op::ScalarMul:
      if (!allows_scalar(ctx.sig))
        throw SignatureError(std::string("scalar multiplication is not in signature ") +
                             signature_name(ctx.sig));
      validate_rec(t->a, ctx);
      return;
    case Op::NatScale: {
      if (!ctx.in_body)
        throw TermError("index expression outside an indexed family body");
      if (t->index.alpha < 0 || t->index.alpha + t->index.beta < 1)
        throw TermError("index expression must be positive for every index >= 1");
      ValidateCtx inner{ctx.sig, false, false};
      validate_rec(t->a, inner);
      if (uses_index(t->a)) throw TermError("scaled operand must be index-free");
      return;
    }
    case Op::CSup: {
      if (!ctx.allow_csup)
        throw TermError("csup is not allowed inside an indexed family body");
      if (!t->family) throw TermError("csup without a family");
      ValidateCtx outer{ctx.sig, false, true};
      validate_rec(t->a, outer);
      if (uses_index(t->a)) throw TermError("csup bound must be index-free");
      const FamilySpec& f = *t->family;
      switch (f.kind) {
        case FamilySpec::Kind::EventuallyConstant:
          for (const auto& p : f.prefix) validate_rec(p, outer);
          if (!f.tail) throw TermError("eventually constant family requires a tail");
          validate_rec(f.tail, outer);
          for (const auto& p : f.prefix)
            if (uses_index(p)) throw TermError("family member must be index-free");
          if (uses_index(f.tail)) throw TermError("family tail must be index-free");
          return;
        case FamilySpec::Kind::IndexedPL:
          if (!f.body) throw TermError("indexed family requires a body");
          validate_rec(f.body, ValidateCtx{ctx.sig, true, false});
          return;
        case FamilySpec::Kind::DoubleIndexed:
          for (const auto& h : f.prefix) {
            validate_rec(h, outer);
            if (uses_index(h)) throw TermError("family head entry must be index-free");
          }
          if (!f.body) throw TermError("double-indexed family requires a body");
          validate_rec(f.body, ValidateCtx{ctx.sig, true, false});
          return;
      }
      return;
    }
  }
}
}  // namespace

void validate(const TermPtr& t, Signature sig) {
  validate_rec(t, ValidateCtx{sig, false, true});
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {
TermPtr subst_rec(const TermPtr& t, const std::map<std::string, TermPtr>& env,
                  bool need_index_free) {
  if (!t) return t;
  switch (t->op) {
    case Op::Zero:
    case Op::One:
      return t;
    case Op::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) return t;
      if (need_index_free && uses_index(it->second))
        throw TermError("cannot substitute an index-dependent term inside a family body");
      return it->second;
    }
    case Op::Neg: {
      TermPtr a = subst_rec(t->a, env, need_index_free);
      return a == t->a ? t : neg(a);
    }
    case Op::Add:
    case Op::Meet:
    case Op::Join: {
      TermPtr a = subst_rec(t->a, env, need_index_free);
      TermPtr b = subst_rec(t->b, env, need_index_free);
      if (a == t->a && b == t->b) return t;
      return t->op == Op::Add ? add(a, b) : t->op == Op::Meet ? meet(a, b) : join(a, b);
    }
    case Op::ScalarMul: {
      TermPtr a = subst_rec(t->a, env, need_index_free);
      return a == t->a ? t : scalar_mul(t->scalar, a);
    }
    case Op::NatScale: {
      TermPtr a = subst_rec(t->a, env, true);
      return a == t->a ? t : nat_scale(t->index, a);
    }
    case Op::CSup: {
      TermPtr bound = subst_rec(t->a, env, need_index_free);
      const FamilySpec& f = *t->family;
      bool changed = (bound != t->a);
      std::vector<TermPtr> prefix;
      prefix.reserve(f.prefix.size());
      for (const auto& p : f.prefix) {
        prefix.push_back(subst_rec(p, env, need_index_free));
        changed = changed || prefix.back() != p;
      }
      TermPtr tail = f.tail ? subst_rec(f.tail, env, need_index_free) : nullptr;
      TermPtr body = f.body ? subst_rec(f.body, env, true) : nullptr;
      changed = changed || tail != f.tail || body != f.body;
      if (!changed) return t;
      FamilyPtr nf;
      switch (f.kind) {
        case FamilySpec::Kind::EventuallyConstant: nf = family_ec(std::move(prefix), tail); break;
        case FamilySpec::Kind::IndexedPL: nf = family_pl(body); break;
        case FamilySpec::Kind::DoubleIndexed: nf = family_double(std::move(prefix), body); break;
      }
      return csup_of(bound, nf);
    }
  }
  return t;
}
}  // namespace

TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& env) {
  return subst_rec(t, env, false);
}

// ---------------------------------------------------------------------------
// Family combinators
// ---------------------------------------------------------------------------

namespace {
// Substitute nu := nu + k in every IndexExpr of a family body.
TermPtr shift_index(const TermPtr& t, long long k) {
  if (!t) return t;
  switch (t->op) {
    case Op::Zero:
    case Op::One:
    case Op::Var:
      return t;
    case Op::Neg: {
      TermPtr a = shift_index(t->a, k);
      return a == t->a ? t : neg(a);
    }
    case Op::Add:
    case Op::Meet:
    case Op::Join: {
      TermPtr a = shift_index(t->a, k);
      TermPtr b = shift_index(t->b, k);
      if (a == t->a && b == t->b) return t;
      return t->op == Op::Add ? add(a, b) : t->op == Op::Meet ? meet(a, b) : join(a, b);
    }
    case Op::ScalarMul: {
      TermPtr a = shift_index(t->a, k);
      return a == t->a ? t : scalar_mul(t->scalar, a);
    }
    case Op::NatScale: {
      IndexExpr e{t->index.alpha, t->index.beta + t->index.alpha * k};
      return nat_scale(e, t->a);
    }
    case Op::CSup:
      // A body never contains csup; unreachable for validated families.
      throw TermError("csup inside an indexed family body");
  }
  return t;
}

// Expand NatScale(e, t) to the (e at j)-fold sum of t.
TermPtr expand_at(const TermPtr& t, long long j) {
  if (!t) return t;
  switch (t->op) {
    case Op::Zero:
    case Op::One:
    case Op::Var:
      return t;
    case Op::Neg: {
      TermPtr a = expand_at(t->a, j);
      return a == t->a ? t : neg(a);
    }
    case Op::Add:
    case Op::Meet:
    case Op::Join: {
      TermPtr a = expand_at(t->a, j);
      TermPtr b = expand_at(t->b, j);
      if (a == t->a && b == t->b) return t;
      return t->op == Op::Add ? add(a, b) : t->op == Op::Meet ? meet(a, b) : join(a, b);
    }
    case Op::ScalarMul: {
      TermPtr a = expand_at(t->a, j);
      return a == t->a ? t : scalar_mul(t->scalar, a);
    }
    case Op::NatScale:
      return times(t->index.at(j), expand_at(t->a, j));
    case Op::CSup:
      throw TermError("csup inside an indexed family body");
  }
  return t;
}
}  // namespace

FamilyPtr shift_family(const FamilyPtr& fam, long long k) {
  if (!fam) throw TermError("null family");
  if (k < 0) throw TermError("shift requires a nonnegative offset");
  if (k == 0) return fam;
  switch (fam->kind) {
    case FamilySpec::Kind::EventuallyConstant: {
      size_t drop = std::min<size_t>(fam->prefix.size(), static_cast<size_t>(k));
      std::vector<TermPtr> prefix(fam->prefix.begin() + static_cast<long>(drop),
                                  fam->prefix.end());
      return family_ec(std::move(prefix), fam->tail);
    }
    case FamilySpec::Kind::IndexedPL:
      return family_pl(shift_index(fam->body, k));
    case FamilySpec::Kind::DoubleIndexed:
      throw TermError("cannot shift a double-indexed family");
  }
  throw TermError("unknown family kind");
}

FamilyPtr family_meet(const FamilyPtr& fam, const TermPtr& h) {
  if (!fam) throw TermError("null family");
  if (uses_index(h)) throw TermError("meet operand must be index-free");
  switch (fam->kind) {
    case FamilySpec::Kind::EventuallyConstant: {
      std::vector<TermPtr> prefix;
      prefix.reserve(fam->prefix.size());
      for (const auto& p : fam->prefix) prefix.push_back(meet(p, h));
      return family_ec(std::move(prefix), meet(fam->tail, h));
    }
    case FamilySpec::Kind::IndexedPL:
      return family_pl(meet(fam->body, h));
    case FamilySpec::Kind::DoubleIndexed:
      throw TermError("cannot meet a double-indexed family");
  }
  throw TermError("unknown family kind");
}

TermPtr family_member(const FamilyPtr& fam, long long j) {
  if (!fam) throw TermError("null family");
  if (j < 1) throw TermError("family index must be >= 1");
  switch (fam->kind) {
    case FamilySpec::Kind::EventuallyConstant:
      if (static_cast<size_t>(j) <= fam->prefix.size()) return fam->prefix[j - 1];
      return fam->tail;
    case FamilySpec::Kind::IndexedPL:
      return expand_at(fam->body, j);
    case FamilySpec::Kind::DoubleIndexed:
      throw TermError("double-indexed family member requires two indices");
  }
  throw TermError("unknown family kind");
}

TermPtr family_member2(const FamilyPtr& fam, long long n, long long k) {
  if (!fam || fam->kind != FamilySpec::Kind::DoubleIndexed)
    throw TermError("two-index member requires a double-indexed family");
  if (n < 1 || k < 1) throw TermError("family indices must be >= 1");
  long long m = static_cast<long long>(fam->prefix.size());
  TermPtr base = n <= m ? fam->prefix[n - 1] : expand_at(fam->body, n - m);
  return times(k, base);
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {
// Binding levels: 0 = +, 1 = \/, 2 = /\, 3 = prefix (-, q*, index*), 4 = atom.
int level_of(const Term& t) {
  switch (t.op) {
    case Op::Add: return 0;
    case Op::Join: return 1;
    case Op::Meet: return 2;
    case Op::Neg:
    case Op::ScalarMul:
    case Op::NatScale: return 3;
    default: return 4;
  }
}

void print_rec(const TermPtr& t, std::ostringstream& os);

void print_child(const TermPtr& t, int min_level, std::ostringstream& os) {
  if (level_of(*t) < min_level) {
    os << '(';
    print_rec(t, os);
    os << ')';
  } else {
    print_rec(t, os);
  }
}

void print_family(const FamilySpec& f, std::ostringstream& os) {
  switch (f.kind) {
    case FamilySpec::Kind::EventuallyConstant: {
      os << '[';
      for (size_t i = 0; i < f.prefix.size(); ++i) {
        if (i) os << ", ";
        print_rec(f.prefix[i], os);
      }
      os << "] ~ ";
      print_rec(f.tail, os);
      return;
    }
    case FamilySpec::Kind::IndexedPL:
      os << "n : ";
      print_rec(f.body, os);
      return;
    case FamilySpec::Kind::DoubleIndexed: {
      os << "n,k : [";
      for (size_t i = 0; i < f.prefix.size(); ++i) {
        if (i) os << ", ";
        print_rec(f.prefix[i], os);
      }
      os << "] ~ ";
      print_rec(f.body, os);
      return;
    }
  }
}

void print_index_factor(const IndexExpr& e, std::ostringstream& os) {
  if (e.alpha == 1 && e.beta == 0) {
    os << "n*";
    return;
  }
  os << '(';
  if (e.alpha == 1) {
    os << 'n';
  } else {
    os << e.alpha << "*n";
  }
  if (e.beta > 0)
    os << '+' << e.beta;
  else if (e.beta < 0)
    os << '-' << -e.beta;
  os << ")*";
}

void print_rec(const TermPtr& t, std::ostringstream& os) {
  switch (t->op) {
    case Op::Zero: os << '0'; return;
    case Op::One: os << "one"; return;
    case Op::Var: os << t->name; return;
    case Op::Neg:
      os << '-';
      print_child(t->a, 4, os);
      return;
    case Op::Add:
      print_child(t->a, 0, os);
      os << " + ";
      print_child(t->b, 1, os);
      return;
    case Op::Join:
      // Resugared forms keep the printed output close to the written one.
      if (t->b->op == Op::Neg && term_equal(t->a, t->b->a)) {
        os << "abs(";
        print_rec(t->a, os);
        os << ')';
        return;
      }
      if (t->a->op == Op::Neg && t->b->op == Op::Zero) {
        os << "neg(";
        print_rec(t->a->a, os);
        os << ')';
        return;
      }
      if (t->b->op == Op::Zero) {
        os << "pos(";
        print_rec(t->a, os);
        os << ')';
        return;
      }
      print_child(t->a, 1, os);
      os << " \\/ ";
      print_child(t->b, 2, os);
      return;
    case Op::Meet:
      print_child(t->a, 2, os);
      os << " /\\ ";
      print_child(t->b, 3, os);
      return;
    case Op::ScalarMul:
      os << t->scalar.str() << '*';
      print_child(t->a, 3, os);
      return;
    case Op::NatScale:
      print_index_factor(t->index, os);
      print_child(t->a, 3, os);
      return;
    case Op::CSup:
      os << "csup[";
      print_rec(t->a, os);
      os << "](";
      print_family(*t->family, os);
      os << ')';
      return;
  }
}
}  // namespace

std::string print(const TermPtr& t) {
  std::ostringstream os;
  print_rec(t, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

Equation make_equation(TermPtr lhs, TermPtr rhs, Signature sig) {
  validate(lhs, sig);
  validate(rhs, sig);
  return Equation{std::move(lhs), std::move(rhs), sig};
}

Equation ineq_to_eq(TermPtr a, TermPtr b, Signature sig) {
  TermPtr lhs = meet(a, b);
  return make_equation(std::move(lhs), std::move(a), sig);
}

std::string print(const Equation& eq) {
  return print(eq.lhs) + " = " + print(eq.rhs);
}

std::set<std::string> free_vars(const Equation& eq) {
  std::set<std::string> out = free_vars(eq.lhs);
  auto r = free_vars(eq.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

void validate(const QuasiEquation& qe) {
  for (const auto& [l, r] : qe.finite_premises) {
    validate(l, qe.sig);
    validate(r, qe.sig);
  }
  if (qe.indexed_premises) {
    // The two sides are family bodies over the shared index.
    ValidateCtx body_ctx{qe.sig, true, false};
    validate_rec(qe.indexed_premises->first, body_ctx);
    validate_rec(qe.indexed_premises->second, body_ctx);
  }
  validate(qe.conclusion.first, qe.sig);
  validate(qe.conclusion.second, qe.sig);
}

std::string print(const QuasiEquation& qe) {
  std::ostringstream os;
  os << "sig: " << signature_name(qe.sig) << '\n';
  for (const auto& [l, r] : qe.finite_premises)
    os << "premise: " << print(l) << " = " << print(r) << '\n';
  if (qe.indexed_premises)
    os << "indexed: " << print(qe.indexed_premises->first) << " = "
       << print(qe.indexed_premises->second) << '\n';
  os << "conclusion: " << print(qe.conclusion.first) << " = " << print(qe.conclusion.second)
     << '\n';
  return os.str();
}

std::set<std::string> free_vars(const QuasiEquation& qe) {
  std::set<std::string> out;
  auto take = [&out](const TermPtr& t) {
    auto s = free_vars(t);
    out.insert(s.begin(), s.end());
  };
  for (const auto& [l, r] : qe.finite_premises) {
    take(l);
    take(r);
  }
  if (qe.indexed_premises) {
    take(qe.indexed_premises->first);
    take(qe.indexed_premises->second);
  }
  take(qe.conclusion.first);
  take(qe.conclusion.second);
  return out;
}

}  // namespace csup
