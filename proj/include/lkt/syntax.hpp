#pragma once

// First-order terms, literals and polarized formulae in negation normal form.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lkt/error.hpp"

namespace lkt {

using BigInt = boost::multiprecision::cpp_int;

enum class Polarity { positive, negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::positive ? Polarity::negative : Polarity::positive;
}

inline std::string_view to_string(Polarity p) { return p == Polarity::positive ? "+" : "-"; }

// ---------------------------------------------------------------------------
// Terms

struct Term {
  enum class Kind { var, app, integer, plus, scale };

  Kind kind = Kind::var;
  std::string name;        // variable name or function symbol
  std::vector<Term> args;  // app: arguments; plus: {left, right}; scale: {body}
  BigInt value;            // integer: value; scale: coefficient

  static Term var(std::string n) {
    Term t;
    t.kind = Kind::var;
    t.name = std::move(n);
    return t;
  }
  static Term app(std::string f, std::vector<Term> a = {}) {
    Term t;
    t.kind = Kind::app;
    t.name = std::move(f);
    t.args = std::move(a);
    return t;
  }
  static Term integer(BigInt v) {
    Term t;
    t.kind = Kind::integer;
    t.value = std::move(v);
    return t;
  }
  static Term plus(Term l, Term r) {
    Term t;
    t.kind = Kind::plus;
    t.args = {std::move(l), std::move(r)};
    return t;
  }
  static Term scale(BigInt c, Term body) {
    Term t;
    t.kind = Kind::scale;
    t.value = std::move(c);
    t.args = {std::move(body)};
    return t;
  }

  bool is_var() const { return kind == Kind::var; }
  bool is_arith() const {
    return kind == Kind::integer || kind == Kind::plus || kind == Kind::scale;
  }
};

struct Literal {
  bool negated = false;
  std::string pred;
  std::vector<Term> args;
};

inline Literal negate(Literal l) {
  l.negated = !l.negated;
  return l;
}

struct Formula {
  enum class Kind { literal, and_pos, and_neg, or_pos, or_neg, exists, forall };

  Kind kind = Kind::literal;
  Literal lit;
  std::string var;           // bound variable of a quantifier
  std::vector<Formula> sub;  // two children for connectives, one body for quantifiers

  static Formula atom(Literal l) {
    Formula f;
    f.lit = std::move(l);
    return f;
  }
  static Formula binary(Kind k, Formula a, Formula b) {
    Formula f;
    f.kind = k;
    f.sub = {std::move(a), std::move(b)};
    return f;
  }
  static Formula and_pos(Formula a, Formula b) { return binary(Kind::and_pos, std::move(a), std::move(b)); }
  static Formula and_neg(Formula a, Formula b) { return binary(Kind::and_neg, std::move(a), std::move(b)); }
  static Formula or_pos(Formula a, Formula b) { return binary(Kind::or_pos, std::move(a), std::move(b)); }
  static Formula or_neg(Formula a, Formula b) { return binary(Kind::or_neg, std::move(a), std::move(b)); }
  static Formula quantifier(Kind k, std::string x, Formula body) {
    Formula f;
    f.kind = k;
    f.var = std::move(x);
    f.sub = {std::move(body)};
    return f;
  }
  static Formula exists(std::string x, Formula body) { return quantifier(Kind::exists, std::move(x), std::move(body)); }
  static Formula forall(std::string x, Formula body) { return quantifier(Kind::forall, std::move(x), std::move(body)); }

  bool is_literal() const { return kind == Kind::literal; }
  bool is_binary() const { return kind != Kind::literal && kind != Kind::exists && kind != Kind::forall; }
  bool is_quantifier() const { return kind == Kind::exists || kind == Kind::forall; }
  const Formula& left() const { return sub[0]; }
  const Formula& right() const { return sub[1]; }
  const Formula& body() const { return sub[0]; }
};

// ---------------------------------------------------------------------------
// Signature

struct PredicateDecl {
  std::size_t arity = 0;
  Polarity polarity = Polarity::positive;
};

/// Declared predicate symbols (with arity and polarity) and function symbols (with arity).
/// Predicates and functions share one namespace.
class PolarityTable {
 public:
  void declare_predicate(const std::string& name, std::size_t arity, Polarity pol) {
    ensure_fresh(name);
    predicates_[name] = PredicateDecl{arity, pol};
  }
  void declare_function(const std::string& name, std::size_t arity) {
    ensure_fresh(name);
    functions_[name] = arity;
  }

  bool has_predicate(const std::string& name) const { return predicates_.count(name) != 0; }
  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  bool declares(const std::string& name) const { return has_predicate(name) || has_function(name); }

  const PredicateDecl& predicate(const std::string& name) const {
    auto it = predicates_.find(name);
    if (it == predicates_.end()) throw DeclarationError("undeclared predicate symbol '" + name + "'");
    return it->second;
  }
  std::size_t function_arity(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw DeclarationError("undeclared function symbol '" + name + "'");
    return it->second;
  }
  Polarity polarity(const std::string& pred) const { return predicate(pred).polarity; }

  void set_polarity(const std::string& pred, Polarity pol) {
    auto it = predicates_.find(pred);
    if (it == predicates_.end()) throw DeclarationError("undeclared predicate symbol '" + pred + "'");
    it->second.polarity = pol;
  }

  const std::map<std::string, PredicateDecl>& predicates() const { return predicates_; }
  const std::map<std::string, std::size_t>& functions() const { return functions_; }

  std::vector<std::string> constants() const {
    std::vector<std::string> out;
    for (const auto& [name, arity] : functions_)
      if (arity == 0) out.push_back(name);
    return out;
  }

  friend bool operator==(const PolarityTable& a, const PolarityTable& b) {
    return a.functions_ == b.functions_ &&
           std::equal(a.predicates_.begin(), a.predicates_.end(), b.predicates_.begin(),
                      b.predicates_.end(), [](const auto& x, const auto& y) {
                        return x.first == y.first && x.second.arity == y.second.arity &&
                               x.second.polarity == y.second.polarity;
                      });
  }

 private:
  void ensure_fresh(const std::string& name) const {
    if (declares(name)) throw DeclarationError("duplicate declaration of '" + name + "'");
  }

  std::map<std::string, PredicateDecl> predicates_;
  std::map<std::string, std::size_t> functions_;
};

// ---------------------------------------------------------------------------
// Ordering and alpha-equivalence
//
// Bound variables compare by binder depth, so alpha-equivalent formulae compare
// equal. Free variables compare by name and sort after bound ones.

namespace detail {

using Binders = std::vector<std::string>;

inline std::optional<std::size_t> binder_index(const Binders& env, const std::string& x) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i] == x) return i;
  return std::nullopt;
}

inline int cmp_str(const std::string& a, const std::string& b) {
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

inline int compare_term(const Term& a, const Term& b, const Binders& ea, const Binders& eb) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Term::Kind::var: {
      auto ia = binder_index(ea, a.name);
      auto ib = binder_index(eb, b.name);
      if (ia && ib) return *ia == *ib ? 0 : (*ia < *ib ? -1 : 1);
      if (ia) return -1;
      if (ib) return 1;
      return cmp_str(a.name, b.name);
    }
    case Term::Kind::integer:
      return a.value == b.value ? 0 : (a.value < b.value ? -1 : 1);
    case Term::Kind::scale:
      if (a.value != b.value) return a.value < b.value ? -1 : 1;
      break;
    case Term::Kind::app:
      if (int c = cmp_str(a.name, b.name)) return c;
      break;
    case Term::Kind::plus:
      break;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare_term(a.args[i], b.args[i], ea, eb)) return c;
  return 0;
}

inline int compare_literal(const Literal& a, const Literal& b, const Binders& ea, const Binders& eb) {
  if (int c = cmp_str(a.pred, b.pred)) return c;
  if (a.negated != b.negated) return a.negated ? 1 : -1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare_term(a.args[i], b.args[i], ea, eb)) return c;
  return 0;
}

inline int compare_formula(const Formula& a, const Formula& b, Binders& ea, Binders& eb) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.is_literal()) return compare_literal(a.lit, b.lit, ea, eb);
  if (a.is_quantifier()) {
    ea.push_back(a.var);
    eb.push_back(b.var);
    int c = compare_formula(a.body(), b.body(), ea, eb);
    ea.pop_back();
    eb.pop_back();
    return c;
  }
  if (int c = compare_formula(a.left(), b.left(), ea, eb)) return c;
  return compare_formula(a.right(), b.right(), ea, eb);
}

}  // namespace detail

inline int compare(const Term& a, const Term& b) { return detail::compare_term(a, b, {}, {}); }
inline int compare(const Literal& a, const Literal& b) { return detail::compare_literal(a, b, {}, {}); }
inline int compare(const Formula& a, const Formula& b) {
  detail::Binders ea, eb;
  return detail::compare_formula(a, b, ea, eb);
}

inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }
inline bool operator==(const Literal& a, const Literal& b) { return compare(a, b) == 0; }
inline bool operator<(const Literal& a, const Literal& b) { return compare(a, b) < 0; }
/// Equality up to renaming of bound variables.
inline bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

/// Exact syntactic identity, bound variable names included.
inline bool identical(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.is_literal()) return a.lit == b.lit;
  if (a.is_quantifier()) return a.var == b.var && identical(a.body(), b.body());
  return identical(a.left(), b.left()) && identical(a.right(), b.right());
}

// ---------------------------------------------------------------------------
// Polarity

/// A literal belongs to the positive class iff it is a plain atom of a positive
/// predicate or a negated atom of a negative predicate.
inline bool is_positive_literal(const Literal& l, const PolarityTable& tbl) {
  bool positive_pred = tbl.polarity(l.pred) == Polarity::positive;
  return positive_pred != l.negated;
}

inline Polarity polarity_of(const Formula& f, const PolarityTable& tbl) {
  switch (f.kind) {
    case Formula::Kind::literal:
      return is_positive_literal(f.lit, tbl) ? Polarity::positive : Polarity::negative;
    case Formula::Kind::and_pos:
    case Formula::Kind::or_pos:
    case Formula::Kind::exists:
      return Polarity::positive;
    default:
      return Polarity::negative;
  }
}

inline bool is_positive(const Formula& f, const PolarityTable& tbl) {
  return polarity_of(f, tbl) == Polarity::positive;
}
inline bool is_negative(const Formula& f, const PolarityTable& tbl) {
  return polarity_of(f, tbl) == Polarity::negative;
}

// ---------------------------------------------------------------------------
// Negation

inline Formula negate(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::literal:
      return Formula::atom(negate(f.lit));
    case K::and_pos:
      return Formula::or_neg(negate(f.left()), negate(f.right()));
    case K::and_neg:
      return Formula::or_pos(negate(f.left()), negate(f.right()));
    case K::or_pos:
      return Formula::and_neg(negate(f.left()), negate(f.right()));
    case K::or_neg:
      return Formula::and_pos(negate(f.left()), negate(f.right()));
    case K::exists:
      return Formula::forall(f.var, negate(f.body()));
    case K::forall:
      return Formula::exists(f.var, negate(f.body()));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Free variables

using VarSet = std::set<std::string>;

inline void collect_free(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_free(a, out);
}

inline void collect_free(const Literal& l, VarSet& out) {
  for (const auto& a : l.args) collect_free(a, out);
}

inline void collect_free(const Formula& f, VarSet& out) {
  if (f.is_literal()) {
    collect_free(f.lit, out);
  } else if (f.is_quantifier()) {
    VarSet inner;
    collect_free(f.body(), inner);
    inner.erase(f.var);
    out.insert(inner.begin(), inner.end());
  } else {
    collect_free(f.left(), out);
    collect_free(f.right(), out);
  }
}

template <class T>
VarSet free_vars(const T& x) {
  VarSet out;
  collect_free(x, out);
  return out;
}

template <class T>
VarSet free_vars(const std::vector<T>& xs) {
  VarSet out;
  for (const auto& x : xs) collect_free(x, out);
  return out;
}

inline bool occurs_free(const std::string& x, const Term& t) { return free_vars(t).count(x) != 0; }
inline bool occurs_free(const std::string& x, const Formula& f) { return free_vars(f).count(x) != 0; }

/// Every variable name occurring in `f`, bound or free.
inline void collect_names(const Formula& f, VarSet& out) {
  if (f.is_quantifier()) out.insert(f.var);
  if (f.is_literal()) {
    collect_free(f.lit, out);
    return;
  }
  for (const auto& s : f.sub) collect_names(s, out);
}

/// Returns `base` with a numeric suffix that makes it distinct from every name in `avoid`.
/// The smallest such suffix is chosen, so the result depends only on the inputs.
inline std::string fresh_name(std::string_view base, const VarSet& avoid) {
  std::string stem(base);
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() &&
      std::all_of(stem.begin() + static_cast<std::ptrdiff_t>(us) + 1, stem.end(),
                  [](char c) { return c >= '0' && c <= '9'; }))
    stem.erase(us);
  if (stem.empty()) stem = "v";
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + "_" + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

inline Term substitute(const Term& t, const std::string& x, const Term& by) {
  if (t.is_var()) return t.name == x ? by : t;
  Term out = t;
  for (auto& a : out.args) a = substitute(a, x, by);
  return out;
}

inline Literal substitute(const Literal& l, const std::string& x, const Term& by) {
  Literal out = l;
  for (auto& a : out.args) a = substitute(a, x, by);
  return out;
}

/// Capture-avoiding substitution of `by` for the free occurrences of `x`.
inline Formula substitute(const Formula& f, const std::string& x, const Term& by) {
  if (!occurs_free(x, f)) return f;
  if (f.is_literal()) return Formula::atom(substitute(f.lit, x, by));
  if (f.is_binary())
    return Formula::binary(f.kind, substitute(f.left(), x, by), substitute(f.right(), x, by));
  VarSet by_vars = free_vars(by);
  if (!by_vars.count(f.var))
    return Formula::quantifier(f.kind, f.var, substitute(f.body(), x, by));
  VarSet avoid = by_vars;
  collect_names(f.body(), avoid);
  avoid.insert(x);
  std::string renamed = fresh_name(f.var, avoid);
  Formula body = substitute(f.body(), f.var, Term::var(renamed));
  return Formula::quantifier(f.kind, renamed, substitute(body, x, by));
}

template <class T>
std::vector<T> substitute(const std::vector<T>& xs, const std::string& x, const Term& by) {
  std::vector<T> out;
  out.reserve(xs.size());
  for (const auto& e : xs) out.push_back(substitute(e, x, by));
  return out;
}

// ---------------------------------------------------------------------------
// Printing (the concrete text syntax)

inline std::string to_string(const Term& t);

namespace detail {

inline std::string term_primary(const Term& t) {
  if (t.kind == Term::Kind::plus || t.kind == Term::Kind::scale) return "(" + to_string(t) + ")";
  return to_string(t);
}

inline int formula_level(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      return 0;
    case Formula::Kind::or_pos:
    case Formula::Kind::or_neg:
      return 1;
    case Formula::Kind::and_pos:
    case Formula::Kind::and_neg:
      return 2;
    case Formula::Kind::literal:
      break;
  }
  return 3;
}

inline std::string_view connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::and_pos: return "/\\+";
    case Formula::Kind::and_neg: return "/\\-";
    case Formula::Kind::or_pos: return "\\/+";
    case Formula::Kind::or_neg: return "\\/-";
    default: return "?";
  }
}

}  // namespace detail

inline std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::var:
      return t.name;
    case Term::Kind::integer:
      return t.value.str();
    case Term::Kind::plus: {
      const Term& r = t.args[1];
      std::string rs = r.kind == Term::Kind::plus ? "(" + to_string(r) + ")" : to_string(r);
      return to_string(t.args[0]) + "+" + rs;
    }
    case Term::Kind::scale:
      return t.value.str() + "*" + detail::term_primary(t.args[0]);
    case Term::Kind::app: {
      if (t.args.empty()) return t.name;
      std::string s = t.name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ",";
        s += to_string(t.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

inline std::string to_string(const Literal& l) {
  std::string s = l.negated ? "~" : "";
  s += l.pred;
  if (!l.args.empty()) {
    s += "(";
    for (std::size_t i = 0; i < l.args.size(); ++i) {
      if (i) s += ",";
      s += to_string(l.args[i]);
    }
    s += ")";
  }
  return s;
}

inline std::string to_string(const Formula& f) {
  if (f.is_literal()) return to_string(f.lit);
  if (f.is_quantifier())
    return std::string(f.kind == Formula::Kind::forall ? "forall " : "exists ") + f.var + ". " +
           to_string(f.body());
  int level = detail::formula_level(f);
  auto wrap = [](const Formula& g, bool parens) {
    return parens ? "(" + to_string(g) + ")" : to_string(g);
  };
  int ll = detail::formula_level(f.left());
  int rl = detail::formula_level(f.right());
  // Connectives associate to the right.
  return wrap(f.left(), ll <= level) + " " + std::string(detail::connective(f.kind)) + " " +
         wrap(f.right(), rl < level || rl == 0);
}

/// Number of connective, quantifier and literal nodes.
inline std::size_t size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& s : f.sub) n += size(s);
  return n;
}

}  // namespace lkt
