#pragma once

// Bounded focused proof search.
//
// The asynchronous phase is applied eagerly to the leftmost formula of the
// right-hand side. At an empty right-hand side the structural phase tries a
// theory call first, then focuses on each distinct positive P with ~P in the
// context, in canonical order. The synchronous phase backtracks over disjunct
// choice, existential witnesses, and the two initial rules.
//
// Failed structural states are memoized on (set of context formulae, remaining
// decisions). Provability in the bounded search does not depend on multiplicity
// in the context, so the memo never prunes a provable state.
//
// The context support only grows along a branch. A structural state whose
// support already occurs on the current path is therefore a loop in which no
// formula was gained; its ancestor explores the same choices with a larger
// budget, so the revisit is cut.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lkt/proof.hpp"

namespace lkt {

/// Name of the variable standing for an arbitrary element when no constant is declared.
inline std::string universe_witness(const PolarityTable& tbl) {
  std::string w = "w0";
  for (std::size_t k = 1; tbl.declares(w); ++k) w = "w" + std::to_string(k);
  return w;
}

enum class BranchOrder { left_first, right_first };

struct SearchConfig {
  std::size_t max_decisions = 8;
  std::size_t max_witness_depth = 2;
  BranchOrder branch_order = BranchOrder::left_first;
  /// Total node budget across all deepening rounds.
  std::size_t max_nodes = 500'000;
};

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t decisions = 0;
  std::size_t witnesses = 0;
  /// Some branch was cut off by a bound; an exhausted search is then inconclusive.
  bool bound_hit = false;
};

inline std::string to_string(const SearchStats& s) {
  return "nodes=" + std::to_string(s.nodes) + " decisions=" + std::to_string(s.decisions) +
         " witnesses=" + std::to_string(s.witnesses);
}

struct SearchOutcome {
  std::optional<Proof> proof;
  SearchStats stats;

  bool proved() const { return proof.has_value(); }
};

/// Terms over `free`, the signature's constants and function symbols with
/// nesting depth at most `depth`, ordered by depth and then by printed form
/// (variables, then constants, at depth 0). When the signature has no constants
/// a distinguished variable `w0` (renamed only to avoid declared symbols) stands
/// for an arbitrary element of the universe. The name is fixed, so once it is
/// free in a sequent it is not generated again under another name.
inline std::vector<Term> enumerate_witnesses(const VarSet& free, const PolarityTable& tbl, std::size_t depth) {
  std::vector<Term> out;
  std::set<Term> seen;
  auto add = [&](Term t) {
    if (seen.insert(t).second) out.push_back(std::move(t));
  };
  for (const auto& x : free) add(Term::var(x));
  auto constants = tbl.constants();
  for (const auto& c : constants) add(Term::app(c));
  if (constants.empty()) add(Term::var(universe_witness(tbl)));
  std::vector<std::pair<std::string, std::size_t>> functions;
  for (const auto& [f, arity] : tbl.functions())
    if (arity > 0) functions.emplace_back(f, arity);

  for (std::size_t d = 1; d <= depth && !functions.empty(); ++d) {
    std::vector<Term> pool = out;
    std::vector<Term> level;
    for (const auto& [f, arity] : functions) {
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        std::vector<Term> args;
        for (auto i : idx) args.push_back(pool[i]);
        Term t = Term::app(f, std::move(args));
        if (!seen.count(t)) level.push_back(std::move(t));
        std::size_t k = 0;
        while (k < arity && ++idx[k] == pool.size()) idx[k++] = 0;
        if (k == arity) break;
      }
    }
    std::sort(level.begin(), level.end(),
              [](const Term& a, const Term& b) { return to_string(a) < to_string(b); });
    for (auto& t : level) add(std::move(t));
  }
  return out;
}

namespace detail {

struct GammaSetLess {
  bool operator()(const Multiset& a, const Multiset& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Formula& x, const Formula& y) { return x < y; });
  }
};

class Searcher {
 public:
  Searcher(const PolarityTable& tbl, const TheoryOracle& oracle, const SearchConfig& cfg)
      : tbl_(tbl), oracle_(oracle), cfg_(cfg) {}

  std::optional<Proof> run(const Sequent& goal, std::size_t witness_depth) {
    witness_depth_ = witness_depth;
    failed_.clear();
    on_path_.clear();
    if (goal.is_focused()) return sync(goal.gamma, *goal.focus, cfg_.max_decisions);
    return async(goal.gamma, goal.delta, cfg_.max_decisions);
  }

  SearchStats stats;

 private:
  // Without function symbols of positive arity the witness pool is finite and
  // fully enumerated at depth 0.
  bool has_proper_functions() const {
    for (const auto& [f, arity] : tbl_.functions())
      if (arity > 0) return true;
    return false;
  }

  bool unsat(const LiteralSet& s) const { return oracle_.entails_unsat(s); }

  std::optional<Proof> async(const Multiset& gamma, const Multiset& delta, std::size_t budget) {
    ++stats.nodes;
    if (delta.empty()) return structural(gamma, budget);
    const Formula& f = delta.front();
    Multiset rest = ms_erase_at(delta, 0);
    using K = Formula::Kind;
    switch (f.kind) {
      case K::and_neg: {
        auto l = async(gamma, ms_plus(rest, f.left()), budget);
        if (!l) return std::nullopt;
        auto r = async(gamma, ms_plus(rest, f.right()), budget);
        if (!r) return std::nullopt;
        return build::and_minus(f, std::move(*l), std::move(*r));
      }
      case K::or_neg: {
        auto p = async(gamma, ms_plus(ms_plus(rest, f.left()), f.right()), budget);
        if (!p) return std::nullopt;
        return build::or_minus(f, std::move(*p));
      }
      case K::forall: {
        VarSet avoid = free_vars(gamma);
        VarSet dv = free_vars(delta);
        avoid.insert(dv.begin(), dv.end());
        std::string eigen = avoid.count(f.var) ? fresh_name(f.var, avoid) : f.var;
        auto p = async(gamma, ms_plus(rest, substitute(f.body(), f.var, Term::var(eigen))), budget);
        if (!p) return std::nullopt;
        return build::forall_intro(f, eigen, std::move(*p));
      }
      default: {
        auto p = async(ms_plus(gamma, negate(f)), rest, budget);
        if (!p) return std::nullopt;
        return build::store(f, std::move(*p));
      }
    }
  }

  bool out_of_nodes() {
    if (stats.nodes < cfg_.max_nodes) return false;
    stats.bound_hit = true;
    return true;
  }

  std::optional<Proof> structural(const Multiset& gamma, std::size_t budget) {
    ++stats.nodes;
    if (unsat(theory_query(gamma))) return build::theory_close(gamma);

    Multiset key = ms_support(gamma);
    auto memo = failed_.find(key);
    if (memo != failed_.end() && memo->second >= budget) return std::nullopt;
    if (!on_path_.insert(key).second) return std::nullopt;

    std::optional<Proof> found;
    if (budget == 0) {
      if (std::any_of(gamma.begin(), gamma.end(), [&](const Formula& g) { return is_negative(g, tbl_); }))
        stats.bound_hit = true;
    } else {
      for (const auto& g : key) {
        if (out_of_nodes()) break;
        if (!is_negative(g, tbl_)) continue;
        Formula p = negate(g);
        ++stats.decisions;
        if (auto sub = sync(gamma, p, budget - 1)) {
          found = build::focus(p, std::move(*sub));
          break;
        }
      }
    }
    on_path_.erase(key);
    if (!found) {
      auto& best = failed_[key];
      best = std::max(best, budget);
    }
    return found;
  }

  std::optional<Proof> sync(const Multiset& gamma, const Formula& f, std::size_t budget) {
    ++stats.nodes;
    using K = Formula::Kind;
    switch (f.kind) {
      case K::and_pos: {
        auto l = sync(gamma, f.left(), budget);
        if (!l) return std::nullopt;
        auto r = sync(gamma, f.right(), budget);
        if (!r) return std::nullopt;
        return build::and_plus(f, std::move(*l), std::move(*r));
      }
      case K::or_pos: {
        bool first_right = cfg_.branch_order == BranchOrder::right_first;
        for (bool right : {first_right, !first_right}) {
          if (auto p = sync(gamma, right ? f.right() : f.left(), budget))
            return build::or_plus(f, right, std::move(*p));
        }
        return std::nullopt;
      }
      case K::exists: {
        VarSet free = free_vars(gamma);
        VarSet fv = free_vars(f);
        free.insert(fv.begin(), fv.end());
        if (has_proper_functions()) stats.bound_hit = true;
        for (const auto& t : enumerate_witnesses(free, tbl_, witness_depth_)) {
          if (out_of_nodes()) return std::nullopt;
          ++stats.witnesses;
          if (auto p = sync(gamma, substitute(f.body(), f.var, t), budget))
            return build::exists_intro(f, t, std::move(*p));
        }
        return std::nullopt;
      }
      default:
        break;
    }
    if (is_negative(f, tbl_)) {
      auto p = async(gamma, {f}, budget);
      if (!p) return std::nullopt;
      return build::release(std::move(*p));
    }
    // positive literal
    if (ms_contains(gamma, f)) return build::init_pos(gamma, f);
    if (unsat(theory_query(gamma, f.lit))) return build::theory_init_pos(gamma, f);
    return std::nullopt;
  }

  const PolarityTable& tbl_;
  const TheoryOracle& oracle_;
  SearchConfig cfg_;
  std::size_t witness_depth_ = 0;
  std::map<Multiset, std::size_t, GammaSetLess> failed_;
  std::set<Multiset, GammaSetLess> on_path_;
};

}  // namespace detail

/// Searches for a cut-free proof of `goal` within the bounds of `cfg`. Witness
/// depth is deepened iteratively from 0 to cfg.max_witness_depth.
inline SearchOutcome prove(const Sequent& goal, const PolarityTable& tbl, const TheoryOracle& oracle,
                           const SearchConfig& cfg = {}) {
  if (!gamma_wellformed(goal.gamma, tbl)) throw InputError("goal context is not well formed");
  detail::Searcher s(tbl, oracle, cfg);
  SearchOutcome out;
  for (std::size_t depth = 0; depth <= cfg.max_witness_depth; ++depth) {
    out.proof = s.run(goal, depth);
    if (out.proof || s.stats.nodes >= cfg.max_nodes) break;
  }
  out.stats = s.stats;
  return out;
}

}  // namespace lkt
