#pragma once

// Admissible structural rules as proof transformers: weakening, contraction,
// instantiation and inversion of the asynchronous rules. Inputs are cut-free.

#include <string>
#include <vector>

#include "lkt/proof.hpp"

namespace lkt {

struct TransformContext {
  const PolarityTable& tbl;
  const TheoryOracle& oracle;
  std::vector<std::string>* trace = nullptr;
  std::string path = "root";

  void log(const std::string& line) const {
    if (trace) trace->push_back(path + " " + line);
  }
  TransformContext at(const std::string& suffix) const {
    TransformContext c = *this;
    c.path += "." + suffix;
    return c;
  }
};

namespace detail {

inline void require_cut_free(const Proof& pf, const char* what) {
  if (contains_cut(pf)) throw TransformError(std::string(what) + ": proof contains cut nodes");
}

inline void requery(Proof& pf, const TransformContext& ctx, const char* axiom) {
  refresh_record(pf);
  if (pf.record && !ctx.oracle.entails_unsat(pf.record->literals))
    throw TransformError(std::string(axiom) + " failed: oracle does not refute " + to_string(pf.record->literals));
}

inline void recompute_principal(Proof& pf, const Formula& principal) {
  pf.principal = build::index_of(pf.conclusion.delta, principal);
}

inline Proof instantiate_rec(const Proof& pf, const std::string& x, const Term& t, VarSet& avoid,
                             const TransformContext& ctx);

inline Proof rename_eigen(const Proof& pf, const std::string& fresh, VarSet& avoid,
                          const TransformContext& ctx) {
  avoid.insert(fresh);
  Proof out = pf;
  out.premisses[0] = instantiate_rec(pf.premisses[0], *pf.eigen, Term::var(fresh), avoid, ctx);
  out.eigen = fresh;
  return out;
}

inline Proof instantiate_rec(const Proof& pf, const std::string& x, const Term& t, VarSet& avoid,
                             const TransformContext& ctx) {
  Proof src = pf;
  VarSet tv = free_vars(t);
  if (src.rule == Rule::forall_intro && (*src.eigen == x || tv.count(*src.eigen))) {
    src = rename_eigen(src, fresh_name(*src.eigen, avoid), avoid, ctx);
  }
  std::optional<Formula> principal;
  if (src.principal) principal = substitute(principal_formula(src), x, t);

  Proof out = src;
  out.conclusion = substitute(src.conclusion, x, t);
  if (out.witness) out.witness = substitute(*out.witness, x, t);
  if (out.formula) out.formula = substitute(*out.formula, x, t);
  for (auto& l : out.literals) l = substitute(l, x, t);
  for (auto& p : out.premisses) p = instantiate_rec(p, x, t, avoid, ctx);
  if (principal) recompute_principal(out, *principal);
  requery(out, ctx, "instantiation");
  return out;
}

}  // namespace detail

/// From a proof of Gamma |- D, a proof of Gamma[t/x] |- D[t/x]. Eigenvariables
/// that would clash with x or t are renamed.
inline Proof instantiate(const Proof& pf, const std::string& x, const Term& t, const TransformContext& ctx) {
  VarSet avoid = tree_vars(pf);
  VarSet tv = free_vars(t);
  avoid.insert(tv.begin(), tv.end());
  avoid.insert(x);
  return detail::instantiate_rec(pf, x, t, avoid, ctx);
}

namespace detail {

inline Proof weaken_rec(const Proof& pf, const Formula& extra, const VarSet& extra_fv, VarSet& avoid,
                        const TransformContext& ctx) {
  Proof src = pf;
  if (src.rule == Rule::forall_intro && extra_fv.count(*src.eigen))
    src = rename_eigen(src, fresh_name(*src.eigen, avoid), avoid, ctx);
  std::optional<Formula> principal;
  if (src.principal) principal = principal_formula(src);
  Proof out = src;
  out.conclusion.gamma = ms_plus(src.conclusion.gamma, extra);
  for (auto& p : out.premisses) p = weaken_rec(p, extra, extra_fv, avoid, ctx);
  if (principal) recompute_principal(out, *principal);
  requery(out, ctx, "weakening");
  return out;
}

}  // namespace detail

/// From a proof of Gamma |- D (or Gamma |- [B]), a proof with `extra` added to
/// Gamma. `extra` must be a literal or a negative formula.
inline Proof weaken(const Proof& pf, const Formula& extra, const TransformContext& ctx) {
  if (!extra.is_literal() && !is_negative(extra, ctx.tbl))
    throw TransformError("weaken: " + to_string(extra) + " is neither a literal nor negative");
  VarSet fv = free_vars(extra);
  VarSet avoid = tree_vars(pf);
  avoid.insert(fv.begin(), fv.end());
  ctx.log("weaken " + to_string(extra));
  return detail::weaken_rec(pf, extra, fv, avoid, ctx);
}

inline Proof weaken(const Proof& pf, const std::vector<Formula>& extras, const TransformContext& ctx) {
  Proof out = pf;
  for (const auto& e : extras) out = weaken(out, e, ctx);
  return out;
}

namespace detail {

inline Proof contract_rec(const Proof& pf, const Formula& f, const TransformContext& ctx) {
  std::optional<Formula> principal;
  if (pf.principal) principal = principal_formula(pf);
  Proof out = pf;
  if (!ms_erase_one(out.conclusion.gamma, f)) throw TransformError("contract: formula vanished");
  for (auto& p : out.premisses) p = contract_rec(p, f, ctx);
  if (principal) recompute_principal(out, *principal);
  requery(out, ctx, "contraction");
  return out;
}

}  // namespace detail

/// From a proof of Gamma, F, F |- D, a proof of Gamma, F |- D.
inline Proof contract(const Proof& pf, const Formula& f, const TransformContext& ctx) {
  if (ms_count(pf.conclusion.gamma, f) < 2)
    throw TransformError("contract: fewer than two copies of " + to_string(f));
  ctx.log("contract " + to_string(f));
  return detail::contract_rec(pf, f, ctx);
}

// ---------------------------------------------------------------------------
// Inversion

enum class InversionKind { and_minus, or_minus, forall_intro, store };

/// The asynchronous rule that decomposes `a` on the right.
inline InversionKind inversion_kind(const Formula& a, const PolarityTable& tbl) {
  if (a.is_literal() || is_positive(a, tbl)) return InversionKind::store;
  switch (a.kind) {
    case Formula::Kind::and_neg:
      return InversionKind::and_minus;
    case Formula::Kind::or_neg:
      return InversionKind::or_minus;
    default:
      return InversionKind::forall_intro;
  }
}

struct Inversion {
  std::vector<Proof> proofs;
  std::optional<std::string> eigen;
};

namespace detail {

inline std::vector<Proof> invert_rec(const Proof& pf, const Formula& a, InversionKind kind, const std::string& y,
                                     const TransformContext& ctx) {
  if (pf.conclusion.is_focused() || is_cut(pf.rule) || !pf.principal)
    throw TransformError("invert: " + to_string(a) + " is not decomposed in " + to_string(pf.conclusion));

  const Formula& b = principal_formula(pf);
  if (b == a && (pf.rule == Rule::store) == (kind == InversionKind::store)) {
    if (pf.rule == Rule::forall_intro) {
      if (*pf.eigen == y) return {pf.premisses[0]};
      return {instantiate(pf.premisses[0], *pf.eigen, Term::var(y), ctx)};
    }
    return pf.premisses;
  }

  Proof src = pf;
  if (src.rule == Rule::forall_intro && *src.eigen == y) {
    VarSet avoid = tree_vars(src);
    avoid.insert(y);
    src = rename_eigen(src, fresh_name(y, avoid), avoid, ctx);
  }
  std::vector<std::vector<Proof>> sub;
  for (const auto& p : src.premisses) sub.push_back(invert_rec(p, a, kind, y, ctx));

  std::vector<Proof> out;
  for (std::size_t i = 0; i < sub[0].size(); ++i) {
    switch (src.rule) {
      case Rule::and_minus:
        out.push_back(build::and_minus(b, sub[0][i], sub[1][i]));
        break;
      case Rule::or_minus:
        out.push_back(build::or_minus(b, sub[0][i]));
        break;
      case Rule::forall_intro:
        out.push_back(build::forall_intro(b, *src.eigen, sub[0][i]));
        break;
      default:
        out.push_back(build::store(b, sub[0][i]));
        break;
    }
  }
  return out;
}

}  // namespace detail

/// Inverts the asynchronous rule for `a` in a cut-free proof of Gamma |- a, D.
/// For a universal formula the premiss is instantiated with `eigen` when given,
/// otherwise with a variable fresh for the whole tree.
inline Inversion invert(const Proof& pf, const Formula& a, const TransformContext& ctx,
                        std::optional<std::string> eigen = std::nullopt) {
  detail::require_cut_free(pf, "invert");
  if (pf.conclusion.is_focused() || !ms_contains(pf.conclusion.delta, a))
    throw TransformError("invert: " + to_string(a) + " does not occur on the right of " + to_string(pf.conclusion));
  InversionKind kind = inversion_kind(a, ctx.tbl);
  Inversion out;
  std::string y;
  if (kind == InversionKind::forall_intro) {
    if (eigen) {
      y = *eigen;
    } else if (pf.rule == Rule::forall_intro && principal_formula(pf) == a) {
      y = *pf.eigen;
    } else {
      y = fresh_name(a.var, tree_vars(pf));
    }
    if (free_vars(pf.conclusion).count(y))
      throw TransformError("invert: eigenvariable " + y + " occurs free in " + to_string(pf.conclusion));
    out.eigen = y;
  }
  out.proofs = detail::invert_rec(pf, a, kind, y, ctx);
  return out;
}

inline Inversion invert(const Proof& pf, std::size_t index, const TransformContext& ctx,
                        std::optional<std::string> eigen = std::nullopt) {
  return invert(pf, pf.conclusion.delta.at(index), ctx, std::move(eigen));
}

/// The sequents the asynchronous rule for `a` leaves from Gamma |- a, D.
inline std::vector<Sequent> inversion_premisses(const Sequent& s, const Formula& a, const PolarityTable& tbl,
                                                const std::string& eigen = {}) {
  Multiset rest = build::without(s.delta, a);
  switch (inversion_kind(a, tbl)) {
    case InversionKind::and_minus:
      return {Sequent::unfocused(s.gamma, ms_plus(rest, a.left())), Sequent::unfocused(s.gamma, ms_plus(rest, a.right()))};
    case InversionKind::or_minus:
      return {Sequent::unfocused(s.gamma, ms_plus(ms_plus(rest, a.left()), a.right()))};
    case InversionKind::forall_intro:
      return {Sequent::unfocused(s.gamma, ms_plus(rest, substitute(a.body(), a.var, Term::var(eigen))))};
    case InversionKind::store:
      return {Sequent::unfocused(ms_plus(s.gamma, negate(a)), rest)};
  }
  return {};
}

/// Applies the asynchronous rule for `a` to the given premisses.
inline Proof reapply(const Formula& a, std::vector<Proof> prems, const PolarityTable& tbl,
                     const std::optional<std::string>& eigen = std::nullopt) {
  switch (inversion_kind(a, tbl)) {
    case InversionKind::and_minus:
      return build::and_minus(a, std::move(prems.at(0)), std::move(prems.at(1)));
    case InversionKind::or_minus:
      return build::or_minus(a, std::move(prems.at(0)));
    case InversionKind::forall_intro:
      return build::forall_intro(a, eigen.value(), std::move(prems.at(0)));
    case InversionKind::store:
      return build::store(a, std::move(prems.at(0)));
  }
  throw TransformError("reapply: unreachable");
}

}  // namespace lkt
