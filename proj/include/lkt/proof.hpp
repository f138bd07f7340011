#pragma once

// Proof trees. One node kind per inference rule of the calculus, plus the nine
// admissible cut rules used by extended proofs.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lkt/oracle.hpp"
#include "lkt/sequent.hpp"

namespace lkt {

enum class Rule {
  // synchronous
  and_plus,
  or_plus_left,
  or_plus_right,
  exists_intro,
  init_pos,
  theory_init_pos,
  release,
  // asynchronous
  and_minus,
  or_minus,
  forall_intro,
  store,
  // structural
  focus,
  theory_close,
  // admissible cuts
  cut1,
  cut2,
  cut3,
  cut4,
  cut5,
  cut6,
  cut7,
  cut8,
  cut9,
};

inline constexpr std::array<std::pair<Rule, std::string_view>, 22> kRuleNames{{
    {Rule::and_plus, "AndPlus"},
    {Rule::or_plus_left, "OrPlusLeft"},
    {Rule::or_plus_right, "OrPlusRight"},
    {Rule::exists_intro, "ExistsIntro"},
    {Rule::init_pos, "InitPos"},
    {Rule::theory_init_pos, "TheoryInitPos"},
    {Rule::release, "Release"},
    {Rule::and_minus, "AndMinus"},
    {Rule::or_minus, "OrMinus"},
    {Rule::forall_intro, "ForallIntro"},
    {Rule::store, "Store"},
    {Rule::focus, "Focus"},
    {Rule::theory_close, "TheoryClose"},
    {Rule::cut1, "cut1"},
    {Rule::cut2, "cut2"},
    {Rule::cut3, "cut3"},
    {Rule::cut4, "cut4"},
    {Rule::cut5, "cut5"},
    {Rule::cut6, "cut6"},
    {Rule::cut7, "cut7"},
    {Rule::cut8, "cut8"},
    {Rule::cut9, "cut9"},
}};

inline std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view n) {
  for (const auto& [rule, name] : kRuleNames)
    if (name == n) return rule;
  return std::nullopt;
}

inline bool is_cut(Rule r) { return r >= Rule::cut1; }
inline bool is_asynchronous(Rule r) { return r >= Rule::and_minus && r <= Rule::store; }
inline bool is_synchronous(Rule r) { return r <= Rule::release; }
inline bool is_structural(Rule r) { return r == Rule::focus || r == Rule::theory_close; }
inline bool is_theory_rule(Rule r) {
  return r == Rule::theory_init_pos || r == Rule::theory_close || r == Rule::cut1 || r == Rule::cut2;
}

inline std::size_t premiss_count(Rule r) {
  switch (r) {
    case Rule::init_pos:
    case Rule::theory_init_pos:
    case Rule::theory_close:
      return 0;
    case Rule::and_plus:
    case Rule::and_minus:
    case Rule::cut3:
    case Rule::cut4:
    case Rule::cut5:
    case Rule::cut6:
    case Rule::cut7:
    case Rule::cut8:
    case Rule::cut9:
      return 2;
    default:
      return 1;
  }
}

/// The literal set a theory call was made on. Only UNSAT verdicts are recorded.
struct TheoryRecord {
  LiteralSet literals;

  friend bool operator==(const TheoryRecord& a, const TheoryRecord& b) { return a.literals == b.literals; }
};

struct Proof {
  Rule rule = Rule::theory_close;
  Sequent conclusion;
  std::vector<Proof> premisses;

  std::optional<Term> witness;          // ExistsIntro
  std::optional<std::string> eigen;     // ForallIntro
  std::optional<std::size_t> principal; // asynchronous rules: index into conclusion delta
  std::optional<Formula> formula;       // Focus: selected P; cut6/cut7: cut formula
  std::optional<TheoryRecord> record;   // TheoryInitPos, TheoryClose, cut1, cut2
  std::vector<Literal> literals;        // cut1, cut2, cut8: one literal; cut9: l1..ln

  const Sequent& root() const { return conclusion; }

  friend bool operator==(const Proof& a, const Proof& b) {
    return a.rule == b.rule && a.conclusion == b.conclusion && a.witness == b.witness &&
           a.eigen == b.eigen && a.principal == b.principal && a.formula == b.formula &&
           a.record == b.record && a.literals == b.literals && a.premisses == b.premisses;
  }
};

inline const Sequent& conclusion(const Proof& pf) { return pf.conclusion; }

/// The formula an asynchronous node decomposes.
inline const Formula& principal_formula(const Proof& pf) { return pf.conclusion.delta.at(*pf.principal); }

inline std::size_t height(const Proof& pf) {
  std::size_t h = 0;
  for (const auto& p : pf.premisses) h = std::max(h, height(p));
  return h + 1;
}

inline std::size_t node_count(const Proof& pf) {
  std::size_t n = 1;
  for (const auto& p : pf.premisses) n += node_count(p);
  return n;
}

inline bool contains_cut(const Proof& pf) {
  if (is_cut(pf.rule)) return true;
  for (const auto& p : pf.premisses)
    if (contains_cut(p)) return true;
  return false;
}

inline void collect_tree_vars(const Proof& pf, VarSet& out) {
  VarSet fv = free_vars(pf.conclusion);
  out.insert(fv.begin(), fv.end());
  for (const auto& f : pf.conclusion.gamma) collect_names(f, out);
  for (const auto& f : pf.conclusion.delta) collect_names(f, out);
  if (pf.conclusion.focus) collect_names(*pf.conclusion.focus, out);
  if (pf.witness) collect_free(*pf.witness, out);
  if (pf.eigen) out.insert(*pf.eigen);
  for (const auto& p : pf.premisses) collect_tree_vars(p, out);
}

/// Every variable name mentioned anywhere in the tree.
inline VarSet tree_vars(const Proof& pf) {
  VarSet out;
  collect_tree_vars(pf, out);
  return out;
}

/// The literal set queried by a theory node of the given shape.
inline LiteralSet theory_query(const Multiset& gamma, const std::optional<Literal>& negated_focus = {}) {
  LiteralSet s = atm_set(gamma);
  if (negated_focus) s.insert(negate(*negated_focus));
  return s;
}

// ---------------------------------------------------------------------------
// Node builders. Each computes the conclusion from the premisses; they do not
// validate side conditions (the checker does).

namespace build {

inline Proof node(Rule r, Sequent concl, std::vector<Proof> prems = {}) {
  Proof p;
  p.rule = r;
  p.conclusion = std::move(concl);
  p.premisses = std::move(prems);
  return p;
}

inline std::size_t index_of(const Multiset& m, const Formula& f) {
  auto idx = ms_find(m, f);
  if (!idx) throw InputError("formula " + to_string(f) + " not found in multiset");
  return *idx;
}

inline Multiset without(Multiset m, const Formula& f) {
  if (!ms_erase_one(m, f)) throw InputError("formula " + to_string(f) + " not found in multiset");
  return m;
}

inline Proof async_node(Rule r, const Formula& principal, const Multiset& gamma, Multiset rest,
                        std::vector<Proof> prems) {
  Multiset delta = ms_plus(std::move(rest), principal);
  Proof p = node(r, Sequent::unfocused(gamma, delta), std::move(prems));
  p.principal = index_of(p.conclusion.delta, principal);
  return p;
}

/// Gamma |- A /\- B, D  from  Gamma |- A, D  and  Gamma |- B, D.
inline Proof and_minus(const Formula& f, Proof left, Proof right) {
  Multiset rest = without(left.conclusion.delta, f.left());
  Multiset gamma = left.conclusion.gamma;
  return async_node(Rule::and_minus, f, gamma, std::move(rest), {std::move(left), std::move(right)});
}

inline Proof or_minus(const Formula& f, Proof prem) {
  Multiset rest = without(without(prem.conclusion.delta, f.left()), f.right());
  Multiset gamma = prem.conclusion.gamma;
  return async_node(Rule::or_minus, f, gamma, std::move(rest), {std::move(prem)});
}

inline Proof forall_intro(const Formula& f, const std::string& eigen, Proof prem) {
  Formula inst = substitute(f.body(), f.var, Term::var(eigen));
  Multiset rest = without(prem.conclusion.delta, inst);
  Multiset gamma = prem.conclusion.gamma;
  Proof p = async_node(Rule::forall_intro, f, gamma, std::move(rest), {std::move(prem)});
  p.eigen = eigen;
  return p;
}

/// Gamma |- A, D  from  Gamma, ~A |- D.
inline Proof store(const Formula& f, Proof prem) {
  Multiset gamma = without(prem.conclusion.gamma, negate(f));
  Multiset rest = prem.conclusion.delta;
  return async_node(Rule::store, f, gamma, std::move(rest), {std::move(prem)});
}

inline Proof and_plus(const Formula& f, Proof left, Proof right) {
  Multiset gamma = left.conclusion.gamma;
  return node(Rule::and_plus, Sequent::focused(std::move(gamma), f), {std::move(left), std::move(right)});
}

inline Proof or_plus(const Formula& f, bool right_disjunct, Proof prem) {
  Multiset gamma = prem.conclusion.gamma;
  return node(right_disjunct ? Rule::or_plus_right : Rule::or_plus_left,
              Sequent::focused(std::move(gamma), f), {std::move(prem)});
}

inline Proof exists_intro(const Formula& f, const Term& witness, Proof prem) {
  Multiset gamma = prem.conclusion.gamma;
  Proof p = node(Rule::exists_intro, Sequent::focused(std::move(gamma), f), {std::move(prem)});
  p.witness = witness;
  return p;
}

inline Proof release(Proof prem) {
  if (prem.conclusion.is_focused() || prem.conclusion.delta.size() != 1)
    throw InputError("release premiss must be an unfocused sequent with one formula");
  Formula n = prem.conclusion.delta.front();
  Multiset gamma = prem.conclusion.gamma;
  return node(Rule::release, Sequent::focused(std::move(gamma), std::move(n)), {std::move(prem)});
}

inline Proof init_pos(Multiset gamma, const Formula& p) {
  return node(Rule::init_pos, Sequent::focused(std::move(gamma), p));
}

inline Proof theory_init_pos(Multiset gamma, const Formula& p) {
  Proof out = node(Rule::theory_init_pos, Sequent::focused(std::move(gamma), p));
  out.record = TheoryRecord{theory_query(out.conclusion.gamma, p.lit)};
  return out;
}

inline Proof focus(const Formula& p, Proof prem) {
  Multiset gamma = prem.conclusion.gamma;
  Proof out = node(Rule::focus, Sequent::unfocused(std::move(gamma), {}), {std::move(prem)});
  out.formula = p;
  return out;
}

inline Proof theory_close(Multiset gamma) {
  Proof out = node(Rule::theory_close, Sequent::unfocused(std::move(gamma), {}));
  out.record = TheoryRecord{theory_query(out.conclusion.gamma)};
  return out;
}

}  // namespace build

/// Recomputes the theory record of a theory node from its conclusion.
inline void refresh_record(Proof& pf) {
  switch (pf.rule) {
    case Rule::theory_close:
      pf.record = TheoryRecord{theory_query(pf.conclusion.gamma)};
      break;
    case Rule::theory_init_pos:
      pf.record = TheoryRecord{theory_query(pf.conclusion.gamma, pf.conclusion.focus->lit)};
      break;
    case Rule::cut1:
    case Rule::cut2:
      pf.record = TheoryRecord{theory_query(pf.conclusion.gamma, pf.literals.at(0))};
      break;
    default:
      break;
  }
}

}  // namespace lkt
