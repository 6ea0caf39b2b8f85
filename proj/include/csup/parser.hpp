#pragma once

#include <string>
#include <variant>

#include "csup/term.hpp"

namespace csup {

/// Syntax or signature error with 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, int line, int col);
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& raw() const { return raw_; }

private:
  std::string raw_;
  int line_;
  int col_;
};

/// Term syntax (ASCII):
///   term   := sum; sum := j {("+"|"-") j}; j := m {"\/" m}; m := f {"/\" f}
///   f      := rational "*" f | index "*" f | "-" f | atom
///   atom   := "0" | "one" | "1" | ident | "(" sum ")"
///           | "abs(" sum ")" | "pos(" sum ")" | "neg(" sum ")"
///           | "csup[" sum "](" family ")"
///   family := "n :" sum | "[" [sum {"," sum}] "] ~" sum
///           | "n,k :" "[" [sum {"," sum}] "] ~" sum
///   index  := "n" | "(" ["int" "*"] "n" [("+"|"-") int] ")"   (family bodies only)
///   rational := ["-"] int ["/" int]
/// "1" denotes the unit constant (same as "one"); bare integers otherwise are
/// rejected. "a - b" abbreviates "a + (-b)". "n" and "k" are reserved.
TermPtr parse_term(const std::string& text, Signature sig);

/// One statement: "term", "term = term", or "term <= term" (desugared to
/// lhs /\ rhs = lhs).
std::variant<TermPtr, Equation> parse_statement(const std::string& text, Signature sig);

/// Multi-line quasi-equation:
///   sig: lg|lgu|rs|rsu          (optional, overrides the argument)
///   premise: term (=|<=) term   (zero or more)
///   indexed: body (=|<=) body   (at most one; bodies over the index "n")
///   conclusion: term (=|<=) term
/// '#' starts a comment; blank lines ignored.
QuasiEquation parse_quasi(const std::string& text, Signature sig);

}  // namespace csup
