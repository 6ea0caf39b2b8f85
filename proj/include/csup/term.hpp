#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "csup/rational.hpp"

namespace csup {

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

/// The four operation sets: lattice-ordered groups (LG), with a designated
/// unit constant (LGu), with rational scalar multiples (RS), or both (RSu).
/// All four share {0, +, -, /\, \/} and the countable-sup operation csup.
enum class Signature { LG, LGu, RS, RSu };

inline bool allows_one(Signature s) { return s == Signature::LGu || s == Signature::RSu; }
inline bool allows_scalar(Signature s) { return s == Signature::RS || s == Signature::RSu; }
const char* signature_name(Signature s);
std::optional<Signature> signature_from_name(const std::string& name);

class SignatureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class TermError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class Op { Zero, One, Var, Neg, Add, Meet, Join, ScalarMul, NatScale, CSup };

/// alpha*nu + beta over the family index nu. alpha + beta >= 1, so the value
/// is a positive integer for every index nu >= 1.
struct IndexExpr {
  long long alpha = 0;
  long long beta = 0;
  long long at(long long nu) const { return alpha * nu + beta; }
  bool operator==(const IndexExpr& o) const { return alpha == o.alpha && beta == o.beta; }
};

struct Term;
struct FamilySpec;
using TermPtr = std::shared_ptr<const Term>;
using FamilyPtr = std::shared_ptr<const FamilySpec>;

/// Immutable AST node. Shared freely; never mutated after construction.
struct Term {
  Op op;
  std::string name;   // Var
  Rat scalar;         // ScalarMul
  IndexExpr index;    // NatScale
  TermPtr a, b;       // operands; for CSup, a is the bound
  FamilyPtr family;   // CSup
};

/// A countable family (f_n), n >= 1, in one of three closed forms.
///
///  - EventuallyConstant: members prefix[0..m-1] then the tail forever.
///  - IndexedPL: member n is body with every NatScale(alpha*nu+beta, t)
///    read at nu = n. Piecewise linear in n at any fixed valuation.
///  - DoubleIndexed: a family over pairs (n, k), member k * M(n) where
///    M(n) = prefix[n-1] for n <= |prefix| and body at nu = n - |prefix|
///    otherwise. Produced by the quasi-equation compiler.
struct FamilySpec {
  enum class Kind { EventuallyConstant, IndexedPL, DoubleIndexed };
  Kind kind;
  std::vector<TermPtr> prefix;  // EventuallyConstant prefix / DoubleIndexed head
  TermPtr tail;                 // EventuallyConstant
  TermPtr body;                 // IndexedPL / DoubleIndexed
};

// Constructors. These only assemble nodes; use validate() for the full
// signature and well-formedness check.
TermPtr zero();
TermPtr one();
TermPtr var(std::string name);
TermPtr neg(TermPtr t);
TermPtr add(TermPtr a, TermPtr b);
TermPtr sub(TermPtr a, TermPtr b);  // a + (-b)
TermPtr meet(TermPtr a, TermPtr b);
TermPtr join(TermPtr a, TermPtr b);
TermPtr scalar_mul(Rat q, TermPtr t);
TermPtr nat_scale(IndexExpr e, TermPtr t);
TermPtr csup_of(TermPtr bound, FamilyPtr family);

// Parse-time sugar, expanded immediately.
TermPtr abs_of(TermPtr t);    // t \/ -t
TermPtr pos_part(TermPtr t);  // t \/ 0
TermPtr neg_part(TermPtr t);  // (-t) \/ 0

/// m-fold sum t + ... + t, m >= 1. Natural scaling without leaving the
/// group signature.
TermPtr times(long long m, TermPtr t);

FamilyPtr family_constant(TermPtr t);
FamilyPtr family_ec(std::vector<TermPtr> prefix, TermPtr tail);
FamilyPtr family_pl(TermPtr body);
FamilyPtr family_double(std::vector<TermPtr> head, TermPtr body);

bool term_equal(const TermPtr& x, const TermPtr& y);
bool family_equal(const FamilyPtr& x, const FamilyPtr& y);

/// True when the term mentions the family index (contains a NatScale node).
bool uses_index(const TermPtr& t);

/// True when the term contains a countable sup anywhere (including inside
/// family members).
bool contains_csup(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);

/// Full well-formedness check: signature membership of every constructor,
/// NatScale confined to family bodies, no nested csup under a family body,
/// index-free bounds, IndexExpr invariant. Throws SignatureError/TermError.
void validate(const TermPtr& t, Signature sig);

/// Capture-free substitution of free variables. The family index is the only
/// binder; replacement terms must be index-free wherever they land under a
/// family body (TermError otherwise).
TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& env);

/// The family (f_{n+k}). EventuallyConstant drops k prefix entries
/// (saturating into the tail); IndexedPL substitutes nu := nu + k.
/// DoubleIndexed is rejected.
FamilyPtr shift_family(const FamilyPtr& fam, long long k);

/// The family (f_n /\ h) for index-free h.
FamilyPtr family_meet(const FamilyPtr& fam, const TermPtr& h);

/// Member term at index j >= 1 (EventuallyConstant / IndexedPL). NatScale
/// nodes are expanded into repeated addition so the result is an ordinary
/// index-free term.
TermPtr family_member(const FamilyPtr& fam, long long j);

/// Member term of a DoubleIndexed family at pair (n, k).
TermPtr family_member2(const FamilyPtr& fam, long long n, long long k);

std::string print(const TermPtr& t);

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Equation {
  TermPtr lhs, rhs;
  Signature sig;
};

/// Validates both sides against the signature.
Equation make_equation(TermPtr lhs, TermPtr rhs, Signature sig);

/// a <= b stored as a /\ b = a.
Equation ineq_to_eq(TermPtr a, TermPtr b, Signature sig);

std::string print(const Equation& eq);
std::set<std::string> free_vars(const Equation& eq);

/// Countably many premises: a finite list plus at most one indexed family
/// of premises lhs_n = rhs_n given by a pair of IndexedPL bodies.
struct QuasiEquation {
  std::vector<std::pair<TermPtr, TermPtr>> finite_premises;
  std::optional<std::pair<TermPtr, TermPtr>> indexed_premises;
  std::pair<TermPtr, TermPtr> conclusion;
  Signature sig;
};

void validate(const QuasiEquation& qe);
std::string print(const QuasiEquation& qe);
std::set<std::string> free_vars(const QuasiEquation& qe);

}  // namespace csup
