#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lkt/syntax.hpp"

namespace lkt {

/// A multiset of formulae, kept sorted under the canonical (alpha-invariant) order.
using Multiset = std::vector<Formula>;

inline Multiset make_multiset(std::vector<Formula> fs) {
  std::stable_sort(fs.begin(), fs.end(), [](const Formula& a, const Formula& b) { return a < b; });
  return fs;
}

inline void ms_insert(Multiset& m, Formula f) {
  auto it = std::upper_bound(m.begin(), m.end(), f, [](const Formula& a, const Formula& b) { return a < b; });
  m.insert(it, std::move(f));
}

inline Multiset ms_plus(Multiset m, Formula f) {
  ms_insert(m, std::move(f));
  return m;
}

inline Multiset ms_plus(Multiset m, const std::vector<Formula>& fs) {
  for (const auto& f : fs) ms_insert(m, f);
  return m;
}

inline std::optional<std::size_t> ms_find(const Multiset& m, const Formula& f) {
  auto it = std::lower_bound(m.begin(), m.end(), f, [](const Formula& a, const Formula& b) { return a < b; });
  if (it == m.end() || !(*it == f)) return std::nullopt;
  return static_cast<std::size_t>(it - m.begin());
}

inline bool ms_contains(const Multiset& m, const Formula& f) { return ms_find(m, f).has_value(); }

inline std::size_t ms_count(const Multiset& m, const Formula& f) {
  return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [&](const Formula& g) { return g == f; }));
}

/// Removes one copy of `f`; returns false when absent.
inline bool ms_erase_one(Multiset& m, const Formula& f) {
  auto idx = ms_find(m, f);
  if (!idx) return false;
  m.erase(m.begin() + static_cast<std::ptrdiff_t>(*idx));
  return true;
}

inline Multiset ms_erase_at(Multiset m, std::size_t idx) {
  m.erase(m.begin() + static_cast<std::ptrdiff_t>(idx));
  return m;
}

inline bool ms_equal(const Multiset& a, const Multiset& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

/// Collapses duplicates.
inline Multiset ms_support(Multiset m) {
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

inline Multiset ms_substitute(const Multiset& m, const std::string& x, const Term& t) {
  return make_multiset(substitute(m, x, t));
}

struct Sequent {
  enum class Kind { unfocused, focused };

  Kind kind = Kind::unfocused;
  Multiset gamma;
  Multiset delta;                // unfocused only
  std::optional<Formula> focus;  // focused only

  static Sequent unfocused(Multiset g, Multiset d) {
    Sequent s;
    s.gamma = make_multiset(std::move(g));
    s.delta = make_multiset(std::move(d));
    return s;
  }
  static Sequent focused(Multiset g, Formula f) {
    Sequent s;
    s.kind = Kind::focused;
    s.gamma = make_multiset(std::move(g));
    s.focus = std::move(f);
    return s;
  }

  bool is_focused() const { return kind == Kind::focused; }

  friend bool operator==(const Sequent& a, const Sequent& b) {
    if (a.kind != b.kind || !ms_equal(a.gamma, b.gamma)) return false;
    if (a.is_focused()) return *a.focus == *b.focus;
    return ms_equal(a.delta, b.delta);
  }
};

inline VarSet free_vars(const Sequent& s) {
  VarSet out = free_vars(s.gamma);
  for (const auto& f : s.delta) collect_free(f, out);
  if (s.focus) collect_free(*s.focus, out);
  return out;
}

inline Sequent substitute(const Sequent& s, const std::string& x, const Term& t) {
  if (s.is_focused()) return Sequent::focused(ms_substitute(s.gamma, x, t), substitute(*s.focus, x, t));
  return Sequent::unfocused(ms_substitute(s.gamma, x, t), ms_substitute(s.delta, x, t));
}

inline std::string to_string(const Multiset& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ", ";
    s += to_string(m[i]);
  }
  return s;
}

inline std::string to_string(const Sequent& s) {
  std::string g = to_string(s.gamma);
  std::string head = g.empty() ? "|-" : g + " |-";
  if (s.is_focused()) return head + " [" + to_string(*s.focus) + "]";
  return s.delta.empty() ? head : head + " " + to_string(s.delta);
}

/// Every element is a negative formula or a literal.
inline bool gamma_wellformed(const Multiset& gamma, const PolarityTable& tbl) {
  return std::all_of(gamma.begin(), gamma.end(),
                     [&](const Formula& f) { return f.is_literal() || is_negative(f, tbl); });
}

/// The literal elements of `gamma`, multiplicity preserved.
inline std::vector<Literal> atm(const Multiset& gamma) {
  std::vector<Literal> out;
  for (const auto& f : gamma)
    if (f.is_literal()) out.push_back(f.lit);
  return out;
}

/// A set of literals, the argument of a theory call.
using LiteralSet = std::set<Literal>;

inline LiteralSet atm_set(const Multiset& gamma) {
  auto lits = atm(gamma);
  return LiteralSet(lits.begin(), lits.end());
}

inline std::string to_string(const LiteralSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& l : s) {
    if (!first) out += ", ";
    first = false;
    out += to_string(l);
  }
  return out + "}";
}

}  // namespace lkt
