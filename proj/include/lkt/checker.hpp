#pragma once

// Independent proof checker. Every node is matched against its rule schema,
// side conditions are re-established, and theory calls are re-executed.

#include <string>
#include <vector>

#include "lkt/proof.hpp"

namespace lkt {

struct CheckFailure {
  std::string path;
  std::string message;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckFailure> failures;
};

struct CheckOptions {
  bool allow_cuts = false;
};

namespace detail {

class Checker {
 public:
  Checker(const PolarityTable& tbl, const TheoryOracle& oracle, CheckOptions opts)
      : tbl_(tbl), oracle_(oracle), opts_(opts) {}

  CheckReport run(const Proof& pf) {
    visit(pf, "root");
    report_.ok = report_.failures.empty();
    return std::move(report_);
  }

 private:
  void fail(const std::string& path, std::string msg) { report_.failures.push_back({path, std::move(msg)}); }

  void visit(const Proof& pf, const std::string& path) {
    try {
      check_node(pf, path);
    } catch (const Error& e) {
      fail(path, e.what());
    }
    for (std::size_t i = 0; i < pf.premisses.size(); ++i) visit(pf.premisses[i], path + "." + std::to_string(i));
  }

  bool expect_premiss(const Proof& pf, std::size_t i, const Sequent& want, const std::string& path) {
    if (pf.premisses.size() <= i) return false;
    if (pf.premisses[i].conclusion == want) return true;
    fail(path, std::string(rule_name(pf.rule)) + ": premiss " + std::to_string(i) + " is " +
                   to_string(pf.premisses[i].conclusion) + ", expected " + to_string(want));
    return false;
  }

  bool expect_unfocused(const Proof& pf, const std::string& path) {
    if (!pf.conclusion.is_focused()) return true;
    fail(path, std::string(rule_name(pf.rule)) + ": conclusion must be unfocused");
    return false;
  }

  bool expect_focused(const Proof& pf, const std::string& path) {
    if (pf.conclusion.is_focused()) return true;
    fail(path, std::string(rule_name(pf.rule)) + ": conclusion must be focused");
    return false;
  }

  void theory_call(const Proof& pf, const LiteralSet& query, const std::string& path) {
    if (!pf.record) {
      fail(path, std::string(rule_name(pf.rule)) + ": missing theory record");
    } else if (!(pf.record->literals == query)) {
      fail(path, std::string(rule_name(pf.rule)) + ": theory record " + to_string(pf.record->literals) +
                     " does not match the queried set " + to_string(query));
    }
    if (!oracle_.entails_unsat(query))
      fail(path, std::string(rule_name(pf.rule)) + ": theory call failed, oracle '" + oracle_.name() +
                     "' does not report UNSAT on " + to_string(query));
  }

  // Returns the principal formula and the remaining context of an asynchronous node.
  std::optional<std::pair<Formula, Multiset>> principal(const Proof& pf, const std::string& path) {
    if (!expect_unfocused(pf, path)) return std::nullopt;
    if (!pf.principal || *pf.principal >= pf.conclusion.delta.size()) {
      fail(path, std::string(rule_name(pf.rule)) + ": principal position out of range");
      return std::nullopt;
    }
    return std::make_pair(pf.conclusion.delta[*pf.principal], ms_erase_at(pf.conclusion.delta, *pf.principal));
  }

  const Formula& focus_of(const Proof& pf) const { return *pf.conclusion.focus; }

  void check_node(const Proof& pf, const std::string& path) {
    const Sequent& c = pf.conclusion;
    const Multiset& gamma = c.gamma;
    const std::string rn(rule_name(pf.rule));

    if (!gamma_wellformed(gamma, tbl_))
      fail(path, "context is not well formed: every element must be negative or a literal");
    if (c.is_focused() != c.focus.has_value()) fail(path, "malformed sequent");

    if (pf.premisses.size() != premiss_count(pf.rule)) {
      fail(path, rn + ": expected " + std::to_string(premiss_count(pf.rule)) + " premisses, found " +
                     std::to_string(pf.premisses.size()));
      return;
    }
    if (is_cut(pf.rule) && !opts_.allow_cuts) {
      fail(path, rn + ": cut nodes are not permitted in a cut-free proof");
      return;
    }

    switch (pf.rule) {
      case Rule::and_plus: {
        if (!expect_focused(pf, path)) return;
        const Formula& f = focus_of(pf);
        if (f.kind != Formula::Kind::and_pos) return fail(path, rn + ": focus is not a positive conjunction");
        expect_premiss(pf, 0, Sequent::focused(gamma, f.left()), path);
        expect_premiss(pf, 1, Sequent::focused(gamma, f.right()), path);
        return;
      }
      case Rule::or_plus_left:
      case Rule::or_plus_right: {
        if (!expect_focused(pf, path)) return;
        const Formula& f = focus_of(pf);
        if (f.kind != Formula::Kind::or_pos) return fail(path, rn + ": focus is not a positive disjunction");
        const Formula& chosen = pf.rule == Rule::or_plus_left ? f.left() : f.right();
        expect_premiss(pf, 0, Sequent::focused(gamma, chosen), path);
        return;
      }
      case Rule::exists_intro: {
        if (!expect_focused(pf, path)) return;
        const Formula& f = focus_of(pf);
        if (f.kind != Formula::Kind::exists) return fail(path, rn + ": focus is not an existential");
        if (!pf.witness) return fail(path, rn + ": missing witness term");
        expect_premiss(pf, 0, Sequent::focused(gamma, substitute(f.body(), f.var, *pf.witness)), path);
        return;
      }
      case Rule::init_pos: {
        if (!expect_focused(pf, path)) return;
        const Formula& f = focus_of(pf);
        if (!f.is_literal() || !is_positive(f, tbl_)) return fail(path, rn + ": p must be a positive literal");
        if (!ms_contains(gamma, f)) fail(path, rn + ": " + to_string(f) + " does not occur in the context");
        return;
      }
      case Rule::theory_init_pos: {
        if (!expect_focused(pf, path)) return;
        const Formula& f = focus_of(pf);
        if (!f.is_literal() || !is_positive(f, tbl_)) return fail(path, rn + ": p must be a positive literal");
        theory_call(pf, theory_query(gamma, f.lit), path);
        return;
      }
      case Rule::release: {
        if (!expect_focused(pf, path)) return;
        const Formula& f = focus_of(pf);
        if (!is_negative(f, tbl_)) return fail(path, rn + ": N must be negative");
        expect_premiss(pf, 0, Sequent::unfocused(gamma, {f}), path);
        return;
      }
      case Rule::and_minus: {
        auto pr = principal(pf, path);
        if (!pr) return;
        auto& [f, rest] = *pr;
        if (f.kind != Formula::Kind::and_neg) return fail(path, rn + ": principal formula is not a negative conjunction");
        expect_premiss(pf, 0, Sequent::unfocused(gamma, ms_plus(rest, f.left())), path);
        expect_premiss(pf, 1, Sequent::unfocused(gamma, ms_plus(rest, f.right())), path);
        return;
      }
      case Rule::or_minus: {
        auto pr = principal(pf, path);
        if (!pr) return;
        auto& [f, rest] = *pr;
        if (f.kind != Formula::Kind::or_neg) return fail(path, rn + ": principal formula is not a negative disjunction");
        expect_premiss(pf, 0, Sequent::unfocused(gamma, ms_plus(ms_plus(rest, f.left()), f.right())), path);
        return;
      }
      case Rule::forall_intro: {
        auto pr = principal(pf, path);
        if (!pr) return;
        auto& [f, rest] = *pr;
        if (f.kind != Formula::Kind::forall) return fail(path, rn + ": principal formula is not a universal");
        if (!pf.eigen) return fail(path, rn + ": missing eigenvariable");
        if (free_vars(c).count(*pf.eigen))
          fail(path, rn + ": eigenvariable condition x∉FV(Γ,Δ) violated by '" + *pf.eigen + "'");
        expect_premiss(pf, 0,
                       Sequent::unfocused(gamma, ms_plus(rest, substitute(f.body(), f.var, Term::var(*pf.eigen)))),
                       path);
        return;
      }
      case Rule::store: {
        auto pr = principal(pf, path);
        if (!pr) return;
        auto& [f, rest] = *pr;
        if (!f.is_literal() && !is_positive(f, tbl_))
          return fail(path, rn + ": stored formula must be positive or a literal");
        expect_premiss(pf, 0, Sequent::unfocused(ms_plus(gamma, negate(f)), rest), path);
        return;
      }
      case Rule::focus: {
        if (!expect_unfocused(pf, path)) return;
        if (!c.delta.empty()) fail(path, rn + ": conclusion must have an empty right-hand side");
        if (!pf.formula) return fail(path, rn + ": missing selected formula");
        const Formula& p = *pf.formula;
        if (!is_positive(p, tbl_)) fail(path, rn + ": selected formula P must be positive");
        if (!ms_contains(gamma, negate(p))) fail(path, rn + ": ~P = " + to_string(negate(p)) + " is not in the context");
        expect_premiss(pf, 0, Sequent::focused(gamma, p), path);
        return;
      }
      case Rule::theory_close: {
        if (!expect_unfocused(pf, path)) return;
        if (!c.delta.empty()) fail(path, rn + ": conclusion must have an empty right-hand side");
        theory_call(pf, theory_query(gamma), path);
        return;
      }
      default:
        check_cut(pf, path);
        return;
    }
  }

  std::optional<Literal> single_literal(const Proof& pf, const std::string& path) {
    if (pf.literals.size() != 1) {
      fail(path, std::string(rule_name(pf.rule)) + ": expected exactly one cut literal");
      return std::nullopt;
    }
    return pf.literals.front();
  }

  void check_cut(const Proof& pf, const std::string& path) {
    const Sequent& c = pf.conclusion;
    const Multiset& gamma = c.gamma;
    const std::string rn(rule_name(pf.rule));
    const Proof& first = pf.premisses[0];
    switch (pf.rule) {
      case Rule::cut1:
      case Rule::cut2: {
        auto lit = single_literal(pf, path);
        if (!lit) return;
        Formula p = Formula::atom(*lit);
        if (!is_positive(p, tbl_)) fail(path, rn + ": cut literal must be positive");
        theory_call(pf, theory_query(gamma, *lit), path);
        Sequent want = pf.rule == Rule::cut1 ? Sequent::unfocused(ms_plus(gamma, p), c.delta)
                                             : Sequent::focused(ms_plus(gamma, p), c.focus.value_or(p));
        if (pf.rule == Rule::cut1 ? !expect_unfocused(pf, path) : !expect_focused(pf, path)) return;
        expect_premiss(pf, 0, want, path);
        return;
      }
      case Rule::cut3: {
        if (!expect_unfocused(pf, path)) return;
        if (!first.conclusion.is_focused()) return fail(path, rn + ": left premiss must be focused");
        const Formula& a = *first.conclusion.focus;
        expect_premiss(pf, 0, Sequent::focused(gamma, a), path);
        expect_premiss(pf, 1, Sequent::unfocused(gamma, ms_plus(c.delta, negate(a))), path);
        return;
      }
      case Rule::cut4:
      case Rule::cut5: {
        if (first.conclusion.is_focused() || first.conclusion.delta.size() != 1)
          return fail(path, rn + ": left premiss must conclude a single formula N");
        const Formula& n = first.conclusion.delta.front();
        if (!is_negative(n, tbl_)) fail(path, rn + ": cut formula N must be negative");
        expect_premiss(pf, 0, Sequent::unfocused(gamma, {n}), path);
        if (pf.rule == Rule::cut4) {
          if (!expect_unfocused(pf, path)) return;
          expect_premiss(pf, 1, Sequent::unfocused(ms_plus(gamma, n), c.delta), path);
        } else {
          if (!expect_focused(pf, path)) return;
          expect_premiss(pf, 1, Sequent::focused(ms_plus(gamma, n), *c.focus), path);
        }
        return;
      }
      case Rule::cut6:
      case Rule::cut7: {
        if (!expect_unfocused(pf, path)) return;
        if (!pf.formula) return fail(path, rn + ": missing cut formula");
        const Formula& a = *pf.formula;
        expect_premiss(pf, 0, Sequent::unfocused(gamma, ms_plus(c.delta, a)), path);
        if (pf.rule == Rule::cut6) {
          if (!is_negative(a, tbl_)) fail(path, rn + ": cut formula N must be negative");
          expect_premiss(pf, 1, Sequent::unfocused(ms_plus(gamma, a), c.delta), path);
        } else {
          expect_premiss(pf, 1, Sequent::unfocused(gamma, ms_plus(c.delta, negate(a))), path);
        }
        return;
      }
      case Rule::cut8: {
        if (!expect_unfocused(pf, path)) return;
        auto lit = single_literal(pf, path);
        if (!lit) return;
        expect_premiss(pf, 0, Sequent::unfocused(ms_plus(gamma, Formula::atom(*lit)), c.delta), path);
        expect_premiss(pf, 1, Sequent::unfocused(ms_plus(gamma, Formula::atom(negate(*lit))), c.delta), path);
        return;
      }
      case Rule::cut9: {
        if (!expect_unfocused(pf, path)) return;
        if (pf.literals.empty()) return fail(path, rn + ": needs at least one literal");
        std::vector<Formula> lits;
        for (const auto& l : pf.literals) lits.push_back(Formula::atom(l));
        expect_premiss(pf, 0, Sequent::unfocused(ms_plus(gamma, lits), c.delta), path);
        expect_premiss(pf, 1, Sequent::unfocused(ms_plus(gamma, negated_clause(pf.literals)), c.delta), path);
        return;
      }
      default:
        fail(path, "unknown rule");
    }
  }

 public:
  /// ~l1 \/- (~l2 \/- ... ~ln)
  static Formula negated_clause(const std::vector<Literal>& lits) {
    Formula acc = Formula::atom(negate(lits.back()));
    for (std::size_t i = lits.size() - 1; i-- > 0;) acc = Formula::or_neg(Formula::atom(negate(lits[i])), acc);
    return acc;
  }

 private:
  const PolarityTable& tbl_;
  const TheoryOracle& oracle_;
  CheckOptions opts_;
  CheckReport report_;
};

}  // namespace detail

/// l1 /\+ (l2 /\+ ... ln)
inline Formula literal_conjunction(const std::vector<Literal>& lits) {
  Formula acc = Formula::atom(lits.back());
  for (std::size_t i = lits.size() - 1; i-- > 0;) acc = Formula::and_pos(Formula::atom(lits[i]), acc);
  return acc;
}

/// ~l1 \/- (~l2 \/- ... ~ln), the negation of literal_conjunction.
inline Formula negated_clause(const std::vector<Literal>& lits) { return detail::Checker::negated_clause(lits); }

inline CheckReport check(const Proof& pf, const PolarityTable& tbl, const TheoryOracle& oracle,
                         CheckOptions opts = {}) {
  return detail::Checker(tbl, oracle, opts).run(pf);
}

}  // namespace lkt
