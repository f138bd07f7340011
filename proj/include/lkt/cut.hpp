#pragma once

// Cut elimination. Each cutN takes cut-free premisses and returns a cut-free
// proof of the cut's conclusion. `eliminate` rewrites an extended proof
// innermost-first.

#include <string>
#include <vector>

#include "lkt/checker.hpp"
#include "lkt/transform.hpp"

namespace lkt {

namespace detail {

inline void require_unsat(const LiteralSet& s, const TransformContext& ctx, const std::string& what) {
  if (!ctx.oracle.entails_unsat(s)) throw TransformError(what + ": oracle does not refute " + to_string(s));
}

inline void step(const TransformContext& ctx, const char* cut, Rule on) {
  ctx.log(std::string(cut) + " → " + std::string(rule_name(on)));
}

/// Rebuilds an asynchronous node over new premisses.
inline Proof rebuild_async(const Proof& pf, std::vector<Proof> prems) {
  const Formula& b = principal_formula(pf);
  switch (pf.rule) {
    case Rule::and_minus:
      return build::and_minus(b, std::move(prems.at(0)), std::move(prems.at(1)));
    case Rule::or_minus:
      return build::or_minus(b, std::move(prems.at(0)));
    case Rule::forall_intro:
      return build::forall_intro(b, *pf.eigen, std::move(prems.at(0)));
    default:
      return build::store(b, std::move(prems.at(0)));
  }
}

/// Rebuilds a synchronous node with one or two focused premisses.
inline Proof rebuild_sync(const Proof& pf, std::vector<Proof> prems) {
  const Formula& f = *pf.conclusion.focus;
  switch (pf.rule) {
    case Rule::and_plus:
      return build::and_plus(f, std::move(prems.at(0)), std::move(prems.at(1)));
    case Rule::or_plus_left:
    case Rule::or_plus_right:
      return build::or_plus(f, pf.rule == Rule::or_plus_right, std::move(prems.at(0)));
    default:
      return build::exists_intro(f, *pf.witness, std::move(prems.at(0)));
  }
}

inline Multiset gamma_without(const Multiset& g, const Formula& f) { return build::without(g, f); }

}  // namespace detail

inline Proof cut1(const Literal& p, const Proof& right, const TransformContext& ctx);
inline Proof cut2(const Literal& p, const Proof& right, const TransformContext& ctx);
inline Proof cut3(const Proof& left, const Proof& right, const TransformContext& ctx);
inline Proof cut4(const Proof& left, const Proof& right, const TransformContext& ctx);
inline Proof cut5(const Proof& left, const Proof& right, const TransformContext& ctx);

/// Gamma |- D  from  Gamma, p |- D  and  atm(Gamma), ~p unsatisfiable.
inline Proof cut1(const Literal& p, const Proof& right, const TransformContext& ctx) {
  const Formula pf = Formula::atom(p);
  const Sequent& c = right.conclusion;
  if (c.is_focused()) throw TransformError("cut1: right premiss is focused");
  Multiset gamma = detail::gamma_without(c.gamma, pf);
  detail::require_unsat(theory_query(gamma, p), ctx, "cut1");
  detail::step(ctx, "cut1", right.rule);

  if (is_asynchronous(right.rule)) {
    std::vector<Proof> prems;
    for (const auto& q : right.premisses) prems.push_back(cut1(p, q, ctx));
    return detail::rebuild_async(right, std::move(prems));
  }
  if (right.rule == Rule::focus) return build::focus(*right.formula, cut2(p, right.premisses.at(0), ctx));
  if (right.rule == Rule::theory_close) {
    Proof out = build::theory_close(gamma);
    detail::require_unsat(out.record->literals, ctx, "cut1 consistency");
    return out;
  }
  throw TransformError("cut1: unexpected rule " + std::string(rule_name(right.rule)));
}

/// Gamma |- [B]  from  Gamma, p |- [B]  and  atm(Gamma), ~p unsatisfiable.
inline Proof cut2(const Literal& p, const Proof& right, const TransformContext& ctx) {
  const Formula pf = Formula::atom(p);
  const Sequent& c = right.conclusion;
  if (!c.is_focused()) throw TransformError("cut2: right premiss is not focused");
  Multiset gamma = detail::gamma_without(c.gamma, pf);
  detail::require_unsat(theory_query(gamma, p), ctx, "cut2");
  detail::step(ctx, "cut2", right.rule);
  const Formula& b = *c.focus;

  switch (right.rule) {
    case Rule::and_plus:
    case Rule::or_plus_left:
    case Rule::or_plus_right:
    case Rule::exists_intro: {
      std::vector<Proof> prems;
      for (const auto& q : right.premisses) prems.push_back(cut2(p, q, ctx));
      return detail::rebuild_sync(right, std::move(prems));
    }
    case Rule::release:
      return build::release(cut1(p, right.premisses.at(0), ctx));
    case Rule::init_pos:
      if (ms_contains(gamma, b)) return build::init_pos(gamma, b);
      [[fallthrough]];
    case Rule::theory_init_pos: {
      Proof out = build::theory_init_pos(gamma, b);
      detail::require_unsat(out.record->literals, ctx, "cut2 consistency");
      return out;
    }
    default:
      throw TransformError("cut2: unexpected rule " + std::string(rule_name(right.rule)));
  }
}

/// Gamma |- D  from  Gamma |- [A]  and  Gamma |- ~A, D.
inline Proof cut3(const Proof& left, const Proof& right, const TransformContext& ctx) {
  if (!left.conclusion.is_focused()) throw TransformError("cut3: left premiss is not focused");
  const Formula& a = *left.conclusion.focus;
  const Formula na = negate(a);
  detail::step(ctx, "cut3", left.rule);

  switch (left.rule) {
    case Rule::and_plus: {
      Proof both = invert(right, na, ctx).proofs.at(0);
      Proof mid = cut3(left.premisses.at(0), both, ctx);
      return cut3(left.premisses.at(1), mid, ctx);
    }
    case Rule::or_plus_left:
    case Rule::or_plus_right: {
      auto inv = invert(right, na, ctx).proofs;
      return cut3(left.premisses.at(0), inv.at(left.rule == Rule::or_plus_right ? 1 : 0), ctx);
    }
    case Rule::exists_intro: {
      auto inv = invert(right, na, ctx);
      Proof inst = instantiate(inv.proofs.at(0), *inv.eigen, *left.witness, ctx);
      return cut3(left.premisses.at(0), inst, ctx);
    }
    case Rule::release: {
      Proof stored = invert(right, na, ctx).proofs.at(0);
      return cut4(left.premisses.at(0), stored, ctx);
    }
    case Rule::init_pos: {
      Proof stored = invert(right, na, ctx).proofs.at(0);
      return contract(stored, a, ctx);
    }
    case Rule::theory_init_pos: {
      Proof stored = invert(right, na, ctx).proofs.at(0);
      return cut1(a.lit, stored, ctx);
    }
    default:
      throw TransformError("cut3: unexpected rule " + std::string(rule_name(left.rule)));
  }
}

/// Gamma |- D  from  Gamma |- N  and  Gamma, N |- D.
inline Proof cut4(const Proof& left, const Proof& right, const TransformContext& ctx) {
  const Sequent& lc = left.conclusion;
  if (lc.is_focused() || lc.delta.size() != 1) throw TransformError("cut4: left premiss must conclude one formula");
  const Formula& n = lc.delta.front();
  const Sequent& c = right.conclusion;
  if (c.is_focused()) throw TransformError("cut4: right premiss is focused");
  const Multiset& gamma = lc.gamma;

  // A literal cut formula that the theory already refutes together with Gamma:
  // the left premiss alone closes the goal.
  if (c.delta.empty() && n.is_literal() && ctx.oracle.entails_unsat(theory_query(ms_plus(gamma, n)))) {
    detail::step(ctx, "cut4", Rule::cut1);
    Proof stored = invert(left, n, ctx).proofs.at(0);
    return cut1(negate(n.lit), stored, ctx);
  }

  detail::step(ctx, "cut4", right.rule);
  switch (right.rule) {
    case Rule::and_minus:
    case Rule::or_minus:
    case Rule::forall_intro: {
      std::vector<Proof> prems;
      for (const auto& q : right.premisses) prems.push_back(cut4(left, q, ctx));
      return detail::rebuild_async(right, std::move(prems));
    }
    case Rule::store: {
      Formula stored = negate(principal_formula(right));
      Proof l = weaken(left, stored, ctx);
      return build::store(principal_formula(right), cut4(l, right.premisses.at(0), ctx));
    }
    case Rule::theory_close: {
      Proof out = build::theory_close(gamma);
      detail::require_unsat(out.record->literals, ctx, "cut4");
      return out;
    }
    case Rule::focus: {
      const Formula& p = *right.formula;
      Proof focused = cut5(left, right.premisses.at(0), ctx);
      if (negate(p) == n && !ms_contains(gamma, n)) return cut3(focused, left, ctx);
      return build::focus(p, std::move(focused));
    }
    default:
      throw TransformError("cut4: unexpected rule " + std::string(rule_name(right.rule)));
  }
}

/// Gamma |- [B]  from  Gamma |- N  and  Gamma, N |- [B].
inline Proof cut5(const Proof& left, const Proof& right, const TransformContext& ctx) {
  const Sequent& lc = left.conclusion;
  if (lc.is_focused() || lc.delta.size() != 1) throw TransformError("cut5: left premiss must conclude one formula");
  const Multiset& gamma = lc.gamma;
  const Sequent& c = right.conclusion;
  if (!c.is_focused()) throw TransformError("cut5: right premiss is not focused");
  const Formula& b = *c.focus;
  detail::step(ctx, "cut5", right.rule);

  switch (right.rule) {
    case Rule::and_plus:
    case Rule::or_plus_left:
    case Rule::or_plus_right:
    case Rule::exists_intro: {
      std::vector<Proof> prems;
      for (const auto& q : right.premisses) prems.push_back(cut5(left, q, ctx));
      return detail::rebuild_sync(right, std::move(prems));
    }
    case Rule::release:
      return build::release(cut4(left, right.premisses.at(0), ctx));
    case Rule::init_pos:
      if (!ms_contains(gamma, b)) throw TransformError("cut5: initial literal is the cut formula");
      return build::init_pos(gamma, b);
    case Rule::theory_init_pos: {
      Proof out = build::theory_init_pos(gamma, b);
      detail::require_unsat(out.record->literals, ctx, "cut5");
      return out;
    }
    default:
      throw TransformError("cut5: unexpected rule " + std::string(rule_name(right.rule)));
  }
}

/// Gamma |- D  from  Gamma |- N, D  and  Gamma, N |- D.
inline Proof cut6(const Formula& n, const Proof& left, const Proof& right, const TransformContext& ctx) {
  const Sequent& c = right.conclusion;
  if (c.is_focused()) throw TransformError("cut6: right premiss is focused");
  if (c.delta.empty()) {
    detail::step(ctx, "cut6", Rule::cut4);
    return cut4(left, right, ctx);
  }
  const Formula d = c.delta.front();
  std::optional<std::string> eigen;
  if (inversion_kind(d, ctx.tbl) == InversionKind::forall_intro) {
    VarSet avoid = tree_vars(left);
    VarSet rv = tree_vars(right);
    avoid.insert(rv.begin(), rv.end());
    eigen = fresh_name(d.var, avoid);
  }
  detail::step(ctx, "cut6", right.rule);
  auto li = invert(left, d, ctx, eigen).proofs;
  auto ri = invert(right, d, ctx, eigen).proofs;
  std::vector<Proof> prems;
  for (std::size_t i = 0; i < ri.size(); ++i) prems.push_back(cut6(n, li.at(i), ri[i], ctx));
  return reapply(d, std::move(prems), ctx.tbl, eigen);
}

/// Gamma |- D  from  Gamma |- A, D  and  Gamma |- ~A, D.
inline Proof cut7(const Formula& a, const Proof& left, const Proof& right, const TransformContext& ctx) {
  if (is_positive(a, ctx.tbl)) {
    detail::step(ctx, "cut7", Rule::cut7);
    return cut7(negate(a), right, left, ctx);
  }
  detail::step(ctx, "cut7", Rule::cut6);
  Proof stored = invert(right, negate(a), ctx).proofs.at(0);
  return cut6(a, left, stored, ctx);
}

/// Gamma |- D  from  Gamma, l |- D  and  Gamma, ~l |- D.
inline Proof cut8(const Literal& l, const Proof& left, const Proof& right, const TransformContext& ctx) {
  Formula lf = Formula::atom(l);
  detail::step(ctx, "cut8", Rule::cut7);
  return cut7(lf, build::store(lf, right), build::store(negate(lf), left), ctx);
}

/// Gamma |- D  from  Gamma, l1..ln |- D  and  Gamma, ~l1 \/- .. \/- ~ln |- D.
inline Proof cut9(const std::vector<Literal>& lits, const Proof& left, const Proof& right,
                  const TransformContext& ctx) {
  if (lits.empty()) throw TransformError("cut9: no literals");
  Formula a = literal_conjunction(lits);
  Proof pa = build::store(a, right);

  Proof pd = left;
  for (auto it = lits.rbegin(); it != lits.rend(); ++it) pd = build::store(Formula::atom(negate(*it)), pd);
  for (std::size_t k = lits.size() - 1; k-- > 0;) {
    std::vector<Literal> tail(lits.begin() + static_cast<std::ptrdiff_t>(k), lits.end());
    pd = build::or_minus(negated_clause(tail), pd);
  }
  detail::step(ctx, "cut9", Rule::cut7);
  return cut7(a, pa, pd, ctx);
}

/// Reduces a single cut node whose premisses are cut-free.
inline Proof reduce_cut(const Proof& pf, const TransformContext& ctx) {
  const auto& ps = pf.premisses;
  switch (pf.rule) {
    case Rule::cut1:
      return cut1(pf.literals.at(0), ps.at(0), ctx);
    case Rule::cut2:
      return cut2(pf.literals.at(0), ps.at(0), ctx);
    case Rule::cut3:
      return cut3(ps.at(0), ps.at(1), ctx);
    case Rule::cut4:
      return cut4(ps.at(0), ps.at(1), ctx);
    case Rule::cut5:
      return cut5(ps.at(0), ps.at(1), ctx);
    case Rule::cut6:
      return cut6(*pf.formula, ps.at(0), ps.at(1), ctx);
    case Rule::cut7:
      return cut7(*pf.formula, ps.at(0), ps.at(1), ctx);
    case Rule::cut8:
      return cut8(pf.literals.at(0), ps.at(0), ps.at(1), ctx);
    case Rule::cut9:
      return cut9(pf.literals, ps.at(0), ps.at(1), ctx);
    default:
      return pf;
  }
}

/// Rewrites every cut node, innermost first. Errors name the offending node.
inline Proof eliminate(const Proof& pf, const TransformContext& ctx) {
  Proof out = pf;
  for (std::size_t i = 0; i < out.premisses.size(); ++i)
    out.premisses[i] = eliminate(out.premisses[i], ctx.at(std::to_string(i)));
  if (!is_cut(out.rule)) return out;
  try {
    Proof reduced = reduce_cut(out, ctx);
    if (!(reduced.conclusion == pf.conclusion))
      throw TransformError("reduction changed the conclusion to " + to_string(reduced.conclusion));
    return reduced;
  } catch (const TransformError& e) {
    throw TransformError("at " + ctx.path + " (" + std::string(rule_name(pf.rule)) + "): " + e.what());
  }
}

}  // namespace lkt
