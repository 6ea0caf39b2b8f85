#include "csup/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace csup {

ParseError::ParseError(std::string msg, int line, int col)
    : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                         ": " + msg),
      raw_(std::move(msg)),
      line_(line),
      col_(col) {}

namespace {

enum class Tok {
  Int, Ident, Plus, Minus, Star, Div, Meet, Join, LParen, RParen,
  LBracket, RBracket, Comma, Tilde, Colon, Eq, Le, End
};

struct Token {
  Tok kind;
  std::string text;  // Ident
  long long value = 0;  // Int
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) {
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, int l, int c, std::string s = "", long long v = 0) {
      tokens_.push_back(Token{k, std::move(s), v, l, c});
    };
    while (i < text.size()) {
      char ch = text[i];
      if (ch == '\n') { ++line; col = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(ch))) { ++col; ++i; continue; }
      int l = line, c = col;
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        std::string digits = text.substr(i, j - i);
        long long v = 0;
        try {
          v = std::stoll(digits);
        } catch (const std::out_of_range&) {
          throw ParseError("integer literal out of range", l, c);
        }
        push(Tok::Int, l, c, digits, v);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        size_t j = i;
        while (j < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
          ++j;
        push(Tok::Ident, l, c, text.substr(i, j - i));
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      auto two = [&](char a, char b) {
        return ch == a && i + 1 < text.size() && text[i + 1] == b;
      };
      if (two('/', '\\')) { push(Tok::Meet, l, c); i += 2; col += 2; continue; }
      if (two('\\', '/')) { push(Tok::Join, l, c); i += 2; col += 2; continue; }
      if (two('<', '=')) { push(Tok::Le, l, c); i += 2; col += 2; continue; }
      Tok k;
      switch (ch) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Div; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case ',': k = Tok::Comma; break;
        case '~': k = Tok::Tilde; break;
        case ':': k = Tok::Colon; break;
        case '=': k = Tok::Eq; break;
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
      push(k, l, c);
      ++i;
      ++col;
    }
    tokens_.push_back(Token{Tok::End, "", 0, line, col});
  }

  const std::vector<Token>& tokens() const { return tokens_; }

private:
  std::vector<Token> tokens_;
};

class Parser {
public:
  Parser(const std::string& text, Signature sig) : lexer_(text), sig_(sig) {}

  TermPtr parse_full_term() {
    TermPtr t = parse_sum();
    expect_end();
    check(t);
    return t;
  }

  std::variant<TermPtr, Equation> parse_full_statement() {
    TermPtr lhs = parse_sum();
    if (at(Tok::Eq)) {
      advance();
      TermPtr rhs = parse_sum();
      expect_end();
      return checked_equation(lhs, rhs);
    }
    if (at(Tok::Le)) {
      advance();
      TermPtr rhs = parse_sum();
      expect_end();
      check(lhs);
      check(rhs);
      return ineq_to_eq(lhs, rhs, sig_);
    }
    expect_end();
    check(lhs);
    return lhs;
  }

  // "body = body" or "body <= body" over the index "n"; validated as part of
  // the enclosing quasi-equation.
  std::pair<TermPtr, TermPtr> parse_body_line() {
    in_body_ = true;
    TermPtr lhs = parse_sum();
    if (at(Tok::Le)) {
      advance();
      TermPtr rhs = parse_sum();
      expect_end();
      return {meet(lhs, rhs), lhs};
    }
    expect(Tok::Eq, "expected '=' or '<='");
    TermPtr rhs = parse_sum();
    expect_end();
    return {lhs, rhs};
  }

  std::pair<TermPtr, TermPtr> parse_equation_line() {
    TermPtr lhs = parse_sum();
    if (at(Tok::Le)) {
      advance();
      TermPtr rhs = parse_sum();
      expect_end();
      check(lhs);
      check(rhs);
      return {meet(lhs, rhs), lhs};
    }
    expect(Tok::Eq, "expected '=' or '<='");
    TermPtr rhs = parse_sum();
    expect_end();
    check(lhs);
    check(rhs);
    return {lhs, rhs};
  }

private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    const auto& ts = lexer_.tokens();
    return i < ts.size() ? ts[i] : ts.back();
  }
  bool at(Tok k, size_t ahead = 0) const { return peek(ahead).kind == k; }
  const Token& advance() { return lexer_.tokens()[pos_++]; }
  void expect(Tok k, const char* msg) {
    if (!at(k)) fail(msg);
    advance();
  }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.col);
  }

  void check(const TermPtr& t) {
    try {
      validate(t, sig_);
    } catch (const std::runtime_error& e) {
      throw ParseError(e.what(), peek().line, peek().col);
    }
  }

  Equation checked_equation(TermPtr lhs, TermPtr rhs) {
    try {
      return make_equation(std::move(lhs), std::move(rhs), sig_);
    } catch (const std::runtime_error& e) {
      throw ParseError(e.what(), peek().line, peek().col);
    }
  }

  TermPtr parse_sum() {
    TermPtr t = parse_join();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = at(Tok::Minus);
      advance();
      TermPtr r = parse_join();
      t = minus ? sub(t, r) : add(t, r);
    }
    return t;
  }

  TermPtr parse_join() {
    TermPtr t = parse_meet();
    while (at(Tok::Join)) {
      advance();
      t = join(t, parse_meet());
    }
    return t;
  }

  TermPtr parse_meet() {
    TermPtr t = parse_factor();
    while (at(Tok::Meet)) {
      advance();
      t = meet(t, parse_factor());
    }
    return t;
  }

  // Token-pattern lookahead for "q*" with q a (possibly negative) rational.
  // Returns the number of tokens consumed or 0 if the pattern is absent.
  size_t scalar_factor_len() const {
    size_t i = 0;
    if (at(Tok::Minus, i)) ++i;
    if (!at(Tok::Int, i)) return 0;
    ++i;
    if (at(Tok::Div, i)) {
      if (!at(Tok::Int, i + 1)) return 0;
      i += 2;
    }
    return at(Tok::Star, i) ? i + 1 : 0;
  }

  // Lookahead for an index factor: "n*", "(n)*", "(n+b)*", "(a*n)*",
  // "(a*n+b)*" (also with '-'). Fills e and returns tokens consumed, else 0.
  size_t index_factor_len(IndexExpr& e) const {
    if (at(Tok::Ident) && peek().text == "n" && at(Tok::Star, 1)) {
      e = {1, 0};
      return 2;
    }
    if (!at(Tok::LParen)) return 0;
    size_t i = 1;
    long long alpha = 1;
    if (at(Tok::Int, i) && at(Tok::Star, i + 1)) {
      alpha = peek(i).value;
      i += 2;
    }
    if (!(at(Tok::Ident, i) && peek(i).text == "n")) return 0;
    ++i;
    long long beta = 0;
    if (at(Tok::Plus, i) || at(Tok::Minus, i)) {
      if (!at(Tok::Int, i + 1)) return 0;
      beta = peek(i + 1).value * (at(Tok::Minus, i) ? -1 : 1);
      i += 2;
    }
    if (!at(Tok::RParen, i) || !at(Tok::Star, i + 1)) return 0;
    e = {alpha, beta};
    return i + 2;
  }

  TermPtr parse_factor() {
    if (size_t len = scalar_factor_len()) {
      size_t i = 0;
      bool negated = at(Tok::Minus);
      if (negated) i = 1;
      long long num = peek(i).value;
      long long den = 1;
      if (len - (negated ? 1 : 0) == 4) den = peek(i + 2).value;
      const Token& tok = peek();
      pos_ += len;
      if (den == 0) throw ParseError("zero denominator", tok.line, tok.col);
      Rat q;
      try {
        q = Rat(negated ? -num : num, den);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), tok.line, tok.col);
      }
      return scalar_mul(q, parse_factor());
    }
    if (in_body_) {
      IndexExpr e;
      if (size_t len = index_factor_len(e)) {
        const Token& tok = peek();
        pos_ += len;
        try {
          return nat_scale(e, parse_factor());
        } catch (const TermError& err) {
          throw ParseError(err.what(), tok.line, tok.col);
        }
      }
    }
    if (at(Tok::Minus)) {
      advance();
      return neg(parse_factor());
    }
    return parse_atom();
  }

  TermPtr parse_atom() {
    if (at(Tok::Int)) {
      const Token& t = advance();
      if (t.value == 0) return zero();
      if (t.value == 1) return one();
      throw ParseError("bare integer constant; scalars require '*'", t.line, t.col);
    }
    if (at(Tok::LParen)) {
      advance();
      TermPtr t = parse_sum();
      expect(Tok::RParen, "expected ')'");
      return t;
    }
    if (at(Tok::Ident)) {
      const Token& t = advance();
      if (t.text == "one") return one();
      if (t.text == "csup") return parse_csup();
      if ((t.text == "abs" || t.text == "pos" || t.text == "neg") && at(Tok::LParen)) {
        advance();
        TermPtr inner = parse_sum();
        expect(Tok::RParen, "expected ')'");
        if (t.text == "abs") return abs_of(inner);
        if (t.text == "pos") return pos_part(inner);
        return neg_part(inner);
      }
      if (t.text == "n" || t.text == "k")
        throw ParseError("'" + t.text + "' is reserved for family indices", t.line, t.col);
      return var(t.text);
    }
    fail("expected a term");
  }

  TermPtr parse_csup() {
    expect(Tok::LBracket, "expected '[' after csup");
    bool saved = in_body_;
    in_body_ = false;
    TermPtr bound = parse_sum();
    expect(Tok::RBracket, "expected ']'");
    expect(Tok::LParen, "expected '('");
    FamilyPtr fam = parse_family();
    expect(Tok::RParen, "expected ')'");
    in_body_ = saved;
    return csup_of(bound, fam);
  }

  FamilyPtr parse_family() {
    if (at(Tok::Ident) && peek().text == "n") {
      if (at(Tok::Comma, 1)) {
        // "n,k : [heads] ~ body" with member (n,k) = k * merged(n)
        if (!(at(Tok::Ident, 2) && peek(2).text == "k"))
          fail("expected 'k' after 'n,'");
        if (!at(Tok::Colon, 3)) fail("expected ':' after 'n,k'");
        pos_ += 4;
        expect(Tok::LBracket, "expected '['");
        std::vector<TermPtr> heads;
        if (!at(Tok::RBracket)) {
          heads.push_back(parse_sum());
          while (at(Tok::Comma)) {
            advance();
            heads.push_back(parse_sum());
          }
        }
        expect(Tok::RBracket, "expected ']'");
        expect(Tok::Tilde, "expected '~'");
        in_body_ = true;
        TermPtr body = parse_sum();
        in_body_ = false;
        return family_double(std::move(heads), body);
      }
      if (at(Tok::Colon, 1)) {
        pos_ += 2;
        in_body_ = true;
        TermPtr body = parse_sum();
        in_body_ = false;
        return family_pl(body);
      }
    }
    if (at(Tok::LBracket)) {
      advance();
      std::vector<TermPtr> prefix;
      if (!at(Tok::RBracket)) {
        prefix.push_back(parse_sum());
        while (at(Tok::Comma)) {
          advance();
          prefix.push_back(parse_sum());
        }
      }
      expect(Tok::RBracket, "expected ']'");
      expect(Tok::Tilde, "expected '~'");
      TermPtr tail = parse_sum();
      return family_ec(std::move(prefix), tail);
    }
    fail("expected a family: 'n : body', '[t, ...] ~ tail', or 'n,k : [..] ~ body'");
  }

  Lexer lexer_;
  Signature sig_;
  size_t pos_ = 0;
  bool in_body_ = false;
};

// Parse one "lhs (=|<=) rhs" fragment, reporting errors at file line ln.
std::pair<TermPtr, TermPtr> statement_at(const std::string& text, Signature sig, int ln,
                                         bool as_body) {
  try {
    Parser p(text, sig);
    return as_body ? p.parse_body_line() : p.parse_equation_line();
  } catch (const ParseError& e) {
    throw ParseError(e.raw(), ln, e.col());
  }
}

}  // namespace

TermPtr parse_term(const std::string& text, Signature sig) {
  return Parser(text, sig).parse_full_term();
}

std::variant<TermPtr, Equation> parse_statement(const std::string& text, Signature sig) {
  return Parser(text, sig).parse_full_statement();
}

QuasiEquation parse_quasi(const std::string& text, Signature sig) {
  QuasiEquation qe;
  qe.sig = sig;
  bool have_conclusion = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  // Two passes so a "sig:" line applies to every statement regardless of order.
  std::vector<std::pair<int, std::string>> statements;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string body = line.substr(b, e - b + 1);
    auto colon = body.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'premise:', 'indexed:', 'conclusion:' or 'sig:'", lineno, 1);
    std::string key = body.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key == "sig") {
      std::string name = body.substr(colon + 1);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      auto s = signature_from_name(name);
      if (!s) throw ParseError("unknown signature '" + name + "'", lineno, 1);
      qe.sig = *s;
      continue;
    }
    statements.emplace_back(lineno, std::move(body));
  }
  for (auto& [ln, body] : statements) {
    auto colon = body.find(':');
    std::string key = body.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string rest = body.substr(colon + 1);
    if (key == "premise") {
      qe.finite_premises.push_back(statement_at(rest, qe.sig, ln, false));
    } else if (key == "indexed") {
      if (qe.indexed_premises)
        throw ParseError("at most one indexed premise family", ln, 1);
      qe.indexed_premises = statement_at(rest, qe.sig, ln, true);
    } else if (key == "conclusion") {
      if (have_conclusion) throw ParseError("duplicate conclusion", ln, 1);
      qe.conclusion = statement_at(rest, qe.sig, ln, false);
      have_conclusion = true;
    } else {
      throw ParseError("unknown line kind '" + key + "'", ln, 1);
    }
  }
  if (!have_conclusion) throw ParseError("missing conclusion", lineno, 1);
  try {
    validate(qe);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what(), lineno, 1);
  }
  return qe;
}

}  // namespace csup
