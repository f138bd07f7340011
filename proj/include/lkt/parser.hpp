#pragma once

// Text syntax for terms, formulae and problem files.
//
//   term     ::= sum
//   sum      ::= product ('+' product)*               left associative
//   product  ::= INT '*' primary | primary
//   primary  ::= INT | IDENT | IDENT '(' term,* ')' | '(' term ')'
//   literal  ::= ['~'] IDENT ['(' term,* ')']
//   formula  ::= ('forall'|'exists') IDENT '.' formula | disj
//   disj     ::= conj [OR (disj | quantified)]         right associative
//   conj     ::= unit [AND (conj | quantified)]
//   unit     ::= literal | '(' formula ')'
//
// AND is one of `/\+`, `/\-`, `/\`; OR is one of `\/+`, `\/-`, `\/`. The unsigned
// forms are `auto` connectives whose polarity is resolved against the signature.
//
// A problem file is a sequence of declarations and one goal:
//   pred NAME ARITY (+|-)     fun NAME ARITY     const NAME     goal FORMULA
// `#` starts a comment running to the end of the line.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lkt/syntax.hpp"

namespace lkt {

enum class SurfacePolarity { positive, negative, automatic };

/// A formula as written by the user; connectives may carry the `auto` polarity.
struct SurfaceFormula {
  enum class Kind { literal, conj, disj, exists, forall };

  Kind kind = Kind::literal;
  SurfacePolarity polarity = SurfacePolarity::positive;
  Literal lit;
  std::string var;
  std::vector<SurfaceFormula> sub;

  friend bool operator==(const SurfaceFormula& a, const SurfaceFormula& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::literal) return a.lit == b.lit;
    return a.polarity == b.polarity && a.var == b.var && a.sub == b.sub;
  }
};

/// Resolves `auto` connectives: an auto connective takes the polarity of its
/// (resolved) left operand.
inline Formula resolve(const SurfaceFormula& s, const PolarityTable& tbl) {
  using SK = SurfaceFormula::Kind;
  switch (s.kind) {
    case SK::literal:
      tbl.predicate(s.lit.pred);
      return Formula::atom(s.lit);
    case SK::exists:
      return Formula::exists(s.var, resolve(s.sub[0], tbl));
    case SK::forall:
      return Formula::forall(s.var, resolve(s.sub[0], tbl));
    case SK::conj:
    case SK::disj: {
      Formula l = resolve(s.sub[0], tbl);
      Formula r = resolve(s.sub[1], tbl);
      bool pos = s.polarity == SurfacePolarity::automatic ? is_positive(l, tbl)
                                                          : s.polarity == SurfacePolarity::positive;
      Formula::Kind k = s.kind == SK::conj ? (pos ? Formula::Kind::and_pos : Formula::Kind::and_neg)
                                           : (pos ? Formula::Kind::or_pos : Formula::Kind::or_neg);
      return Formula::binary(k, std::move(l), std::move(r));
    }
  }
  return {};
}

/// The surface form of a fully annotated formula.
inline SurfaceFormula to_surface(const Formula& f) {
  SurfaceFormula s;
  using K = Formula::Kind;
  switch (f.kind) {
    case K::literal:
      s.lit = f.lit;
      return s;
    case K::exists:
    case K::forall:
      s.kind = f.kind == K::exists ? SurfaceFormula::Kind::exists : SurfaceFormula::Kind::forall;
      s.var = f.var;
      s.sub = {to_surface(f.body())};
      return s;
    default:
      s.kind = (f.kind == K::and_pos || f.kind == K::and_neg) ? SurfaceFormula::Kind::conj
                                                               : SurfaceFormula::Kind::disj;
      s.polarity = (f.kind == K::and_pos || f.kind == K::or_pos) ? SurfacePolarity::positive
                                                                 : SurfacePolarity::negative;
      s.sub = {to_surface(f.left()), to_surface(f.right())};
      return s;
  }
}

inline std::string to_string(const SurfaceFormula& s) {
  using SK = SurfaceFormula::Kind;
  if (s.kind == SK::literal) return to_string(s.lit);
  if (s.kind == SK::exists || s.kind == SK::forall)
    return std::string(s.kind == SK::forall ? "forall " : "exists ") + s.var + ". " + to_string(s.sub[0]);
  auto level = [](const SurfaceFormula& g) {
    switch (g.kind) {
      case SK::exists:
      case SK::forall: return 0;
      case SK::disj: return 1;
      case SK::conj: return 2;
      case SK::literal: break;
    }
    return 3;
  };
  int me = level(s);
  int ll = level(s.sub[0]);
  int rl = level(s.sub[1]);
  auto wrap = [](const SurfaceFormula& g, bool parens) {
    return parens ? "(" + to_string(g) + ")" : to_string(g);
  };
  std::string op = s.kind == SK::conj ? "/\\" : "\\/";
  if (s.polarity == SurfacePolarity::positive) op += "+";
  if (s.polarity == SurfacePolarity::negative) op += "-";
  return wrap(s.sub[0], ll <= me) + " " + op + " " + wrap(s.sub[1], rl < me || rl == 0);
}

struct ProblemFile {
  PolarityTable table;
  SurfaceFormula goal;

  Formula goal_formula() const { return resolve(goal, table); }

  friend bool operator==(const ProblemFile& a, const ProblemFile& b) {
    return a.table == b.table && a.goal == b.goal;
  }
};

namespace detail {

struct Token {
  enum class Kind { ident, integer, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::Kind::ident;
      t.text = std::string(src.substr(start, j - start));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::integer;
      t.text = std::string(src.substr(start, j - start));
      advance(j - i);
    } else if ((c == '/' && i + 1 < src.size() && src[i + 1] == '\\') ||
               (c == '\\' && i + 1 < src.size() && src[i + 1] == '/')) {
      std::size_t n = 2;
      if (i + 2 < src.size() && (src[i + 2] == '+' || src[i + 2] == '-')) n = 3;
      t.kind = Token::Kind::symbol;
      t.text = std::string(src.substr(start, n));
      advance(n);
    } else if (std::string_view("(),.~+-*").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::symbol;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

[[noreturn]] inline void throw_at(const Token& t, const std::string& msg) {
  throw ParseError(msg, t.line, t.column);
}

inline bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "pred" || s == "fun" || s == "const" || s == "goal";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const PolarityTable& tbl) : toks_(std::move(toks)), tbl_(tbl) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool at_symbol(std::string_view s) const {
    return peek().kind == Token::Kind::symbol && peek().text == s;
  }
  bool at_ident(std::string_view s) const {
    return peek().kind == Token::Kind::ident && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
    take();
  }
  std::string expect_ident() {
    if (peek().kind != Token::Kind::ident || is_keyword(peek().text)) fail("expected identifier");
    return take().text;
  }

  Term term() {
    Term t = product();
    while (at_symbol("+")) {
      take();
      t = Term::plus(std::move(t), product());
    }
    return t;
  }

  Term product() {
    if (peek().kind == Token::Kind::integer && peek(1).kind == Token::Kind::symbol &&
        peek(1).text == "*") {
      BigInt c(take().text);
      take();
      return Term::scale(std::move(c), primary());
    }
    return primary();
  }

  Term primary() {
    if (peek().kind == Token::Kind::integer) return Term::integer(BigInt(take().text));
    if (at_symbol("(")) {
      take();
      Term t = term();
      expect_symbol(")");
      return t;
    }
    const Token& tok = peek();
    std::string name = expect_ident();
    if (at_symbol("(")) {
      if (!tbl_.has_function(name))
        throw ParseError("undeclared function symbol '" + name + "'", tok.line, tok.column);
      std::vector<Term> args = arguments();
      if (args.size() != tbl_.function_arity(name))
        throw ParseError("arity mismatch for '" + name + "'", tok.line, tok.column);
      return Term::app(name, std::move(args));
    }
    if (tbl_.has_function(name)) {
      if (tbl_.function_arity(name) != 0)
        throw ParseError("arity mismatch for '" + name + "'", tok.line, tok.column);
      return Term::app(name);
    }
    if (tbl_.has_predicate(name))
      throw ParseError("predicate '" + name + "' used as a term", tok.line, tok.column);
    return Term::var(name);
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    expect_symbol("(");
    if (!at_symbol(")")) {
      args.push_back(term());
      while (at_symbol(",")) {
        take();
        args.push_back(term());
      }
    }
    expect_symbol(")");
    return args;
  }

  Literal literal() {
    Literal l;
    if (at_symbol("~")) {
      take();
      l.negated = true;
      if (at_symbol("(") || at_symbol("~")) fail("negation only on atoms");
    }
    const Token& tok = peek();
    l.pred = expect_ident();
    if (!tbl_.has_predicate(l.pred))
      throw ParseError("undeclared predicate symbol '" + l.pred + "'", tok.line, tok.column);
    if (at_symbol("(")) l.args = arguments();
    if (l.args.size() != tbl_.predicate(l.pred).arity)
      throw ParseError("arity mismatch for '" + l.pred + "'", tok.line, tok.column);
    return l;
  }

  bool at_quantifier() const { return at_ident("forall") || at_ident("exists"); }

  SurfaceFormula formula() {
    if (at_quantifier()) {
      SurfaceFormula s;
      s.kind = take().text == "forall" ? SurfaceFormula::Kind::forall : SurfaceFormula::Kind::exists;
      s.var = expect_ident();
      if (tbl_.declares(s.var)) fail("bound variable '" + s.var + "' clashes with a declared symbol");
      expect_symbol(".");
      s.sub = {formula()};
      return s;
    }
    return disjunction();
  }

  std::optional<SurfacePolarity> connective(std::string_view stem) {
    if (peek().kind != Token::Kind::symbol || peek().text.substr(0, 2) != stem) return std::nullopt;
    std::string t = take().text;
    if (t.size() == 2) return SurfacePolarity::automatic;
    return t[2] == '+' ? SurfacePolarity::positive : SurfacePolarity::negative;
  }

  SurfaceFormula disjunction() {
    SurfaceFormula l = conjunction();
    if (auto pol = connective("\\/")) {
      SurfaceFormula s;
      s.kind = SurfaceFormula::Kind::disj;
      s.polarity = *pol;
      s.sub = {std::move(l), at_quantifier() ? formula() : disjunction()};
      return s;
    }
    return l;
  }

  SurfaceFormula conjunction() {
    SurfaceFormula l = unit();
    if (auto pol = connective("/\\")) {
      SurfaceFormula s;
      s.kind = SurfaceFormula::Kind::conj;
      s.polarity = *pol;
      s.sub = {std::move(l), at_quantifier() ? formula() : conjunction()};
      return s;
    }
    return l;
  }

  SurfaceFormula unit() {
    if (at_symbol("(")) {
      take();
      SurfaceFormula f = formula();
      expect_symbol(")");
      return f;
    }
    SurfaceFormula s;
    s.lit = literal();
    return s;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input '" + peek().text + "'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const PolarityTable& tbl_;
};

}  // namespace detail

inline Term parse_term(std::string_view text, const PolarityTable& tbl) {
  detail::Parser p(detail::tokenize(text), tbl);
  Term t = p.term();
  p.expect_end();
  return t;
}

inline Literal parse_literal(std::string_view text, const PolarityTable& tbl) {
  detail::Parser p(detail::tokenize(text), tbl);
  Literal l = p.literal();
  p.expect_end();
  return l;
}

inline SurfaceFormula parse_surface_formula(std::string_view text, const PolarityTable& tbl) {
  detail::Parser p(detail::tokenize(text), tbl);
  SurfaceFormula f = p.formula();
  p.expect_end();
  return f;
}

/// Parses a formula, resolving `auto` connectives. Free variables are allowed.
inline Formula parse_formula(std::string_view text, const PolarityTable& tbl) {
  return resolve(parse_surface_formula(text, tbl), tbl);
}

inline ProblemFile parse_problem(std::string_view text) {
  using detail::Token;
  std::vector<Token> toks = detail::tokenize(text);
  ProblemFile out;
  auto fail_at = [](const Token& t, const std::string& msg) { detail::throw_at(t, msg); };

  // First pass: declarations. The goal's tokens are set aside and parsed once
  // every symbol is known.
  std::vector<Token> goal_tokens;
  bool have_goal = false;
  Token goal_kw;
  std::size_t i = 0;
  auto is_kw = [&](std::size_t k) {
    return toks[k].kind == Token::Kind::ident &&
           (toks[k].text == "pred" || toks[k].text == "fun" || toks[k].text == "const" ||
            toks[k].text == "goal");
  };
  auto name_at = [&](std::size_t k) -> std::string {
    if (toks[k].kind != Token::Kind::ident || detail::is_keyword(toks[k].text))
      detail::throw_at(toks[k], "expected identifier");
    return toks[k].text;
  };
  auto arity_at = [&](std::size_t k) -> std::size_t {
    if (toks[k].kind != Token::Kind::integer || toks[k].text[0] == '-')
      detail::throw_at(toks[k], "expected arity");
    return std::stoul(toks[k].text);
  };
  auto declare = [&](const Token& at, auto&& fn) {
    try {
      fn();
    } catch (const DeclarationError& e) {
      throw ParseError(e.what(), at.line, at.column);
    }
  };
  while (toks[i].kind != Token::Kind::end) {
    if (!is_kw(i)) fail_at(toks[i], "expected a declaration or 'goal'");
    const Token kw = toks[i];
    if (kw.text == "pred") {
      std::string name = name_at(i + 1);
      std::size_t arity = arity_at(i + 2);
      const Token& pol = toks[i + 3];
      if (pol.kind != Token::Kind::symbol || (pol.text != "+" && pol.text != "-"))
        fail_at(pol, "expected polarity '+' or '-'");
      declare(kw, [&] {
        out.table.declare_predicate(name, arity,
                                    pol.text == "+" ? Polarity::positive : Polarity::negative);
      });
      i += 4;
    } else if (kw.text == "fun") {
      std::string name = name_at(i + 1);
      std::size_t arity = arity_at(i + 2);
      declare(kw, [&] { out.table.declare_function(name, arity); });
      i += 3;
    } else if (kw.text == "const") {
      std::string name = name_at(i + 1);
      declare(kw, [&] { out.table.declare_function(name, 0); });
      i += 2;
    } else {
      if (have_goal) fail_at(kw, "duplicate goal");
      have_goal = true;
      goal_kw = kw;
      ++i;
      while (toks[i].kind != Token::Kind::end && !is_kw(i)) goal_tokens.push_back(toks[i++]);
      Token end;
      end.line = toks[i].line;
      end.column = toks[i].column;
      goal_tokens.push_back(end);
    }
  }
  if (!have_goal) throw ParseError("missing goal", toks.back().line, toks.back().column);
  detail::Parser p(std::move(goal_tokens), out.table);
  out.goal = p.formula();
  p.expect_end();
  Formula g = out.goal_formula();
  VarSet fv = free_vars(g);
  if (!fv.empty())
    throw ParseError("goal has free variable '" + *fv.begin() + "'", goal_kw.line, goal_kw.column);
  return out;
}

inline std::string to_string(const ProblemFile& pf) {
  std::string s;
  for (const auto& [name, decl] : pf.table.predicates())
    s += "pred " + name + " " + std::to_string(decl.arity) + " " + std::string(to_string(decl.polarity)) + "\n";
  for (const auto& [name, arity] : pf.table.functions())
    s += "fun " + name + " " + std::to_string(arity) + "\n";
  s += "goal " + to_string(pf.goal) + "\n";
  return s;
}

}  // namespace lkt
