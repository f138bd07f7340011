#pragma once

// Randomized admission test for theory oracles: samples literal sets and checks
// the Weakening, Contraction, Instantiation and Consistency implications.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lkt/oracle.hpp"

namespace lkt {

struct AxiomViolation {
  std::string axiom;
  std::string witness;
};

struct AxiomReport {
  std::size_t samples = 0;
  std::map<std::string, std::size_t> checked;   // axiom -> implications whose premiss held
  std::vector<AxiomViolation> violations;
};

/// Random literals over p/1, q/1, r/2, f/1, g/2, constants a, b, variables
/// x, y, z and linear arithmetic.
class LiteralSampler {
 public:
  explicit LiteralSampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 0; }

  std::string variable() { return std::string(1, "xyz"[below(3)]); }

  Term term(int depth = 2) {
    std::size_t pick = depth <= 0 ? below(3) : below(7);
    switch (pick) {
      case 0:
        return Term::var(variable());
      case 1:
        return Term::app(coin() ? "a" : "b");
      case 2:
        return Term::integer(static_cast<long>(below(7)) - 3);
      case 3:
        return Term::app("f", {term(depth - 1)});
      case 4:
        return Term::app("g", {term(depth - 1), term(depth - 1)});
      case 5:
        return Term::plus(term(depth - 1), term(depth - 1));
      default:
        return Term::scale(static_cast<long>(below(5)) - 2, term(depth - 1));
    }
  }

  /// A term equal to `t` in linear arithmetic but usually not syntactically.
  Term variant(const Term& t) {
    switch (below(4)) {
      case 0:
        return Term::plus(t, Term::integer(0));
      case 1:
        if (t.kind == Term::Kind::plus) return Term::plus(t.args[1], t.args[0]);
        return Term::scale(1, t);
      case 2:
        return Term::plus(Term::scale(2, t), Term::scale(-1, t));
      default:
        return t;
    }
  }

  Literal literal() {
    Literal l;
    switch (below(3)) {
      case 0:
        l.pred = "p";
        l.args = {term()};
        break;
      case 1:
        l.pred = "q";
        l.args = {term()};
        break;
      default:
        l.pred = "r";
        l.args = {term(), term()};
        break;
    }
    l.negated = coin();
    return l;
  }

  /// 1..4 literals; half the time one of them is complemented, possibly in an
  /// arithmetically equivalent form.
  LiteralSet literal_set() {
    LiteralSet s;
    std::size_t n = 1 + below(4);
    while (s.size() < n) s.insert(literal());
    if (coin()) {
      auto it = std::next(s.begin(), static_cast<std::ptrdiff_t>(below(s.size())));
      Literal c = negate(*it);
      if (coin())
        for (auto& a : c.args) a = variant(a);
      s.insert(c);
    }
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

inline std::string show(const LiteralSet& s) { return to_string(s); }

inline LiteralSet subst_set(const LiteralSet& s, const std::string& x, const Term& t) {
  LiteralSet out;
  for (const auto& l : s) out.insert(substitute(l, x, t));
  return out;
}

}  // namespace detail

inline AxiomReport oracle_axiom_suite(const TheoryOracle& oracle, std::uint64_t seed, std::size_t n) {
  LiteralSampler gen(seed);
  AxiomReport rep;
  auto violate = [&](const char* axiom, std::string witness) { rep.violations.push_back({axiom, std::move(witness)}); };

  for (std::size_t i = 0; i < n; ++i) {
    ++rep.samples;
    LiteralSet s = gen.literal_set();
    bool unsat = oracle.entails_unsat(s);

    // Weakening
    LiteralSet extra = gen.literal_set();
    if (unsat) {
      ++rep.checked["weakening"];
      LiteralSet w = s;
      w.insert(extra.begin(), extra.end());
      if (!oracle.entails_unsat(w)) violate("weakening", "S=" + detail::show(s) + " S'=" + detail::show(extra));
    }

    // Contraction: re-adding a member leaves the set, and so the verdict, unchanged.
    {
      ++rep.checked["contraction"];
      LiteralSet c = s;
      c.insert(*std::next(s.begin(), static_cast<std::ptrdiff_t>(gen.below(s.size()))));
      if (oracle.entails_unsat(c) != unsat) violate("contraction", "S=" + detail::show(s));
    }

    // Instantiation
    std::string x = gen.variable();
    Term t = gen.term(1);
    if (unsat) {
      ++rep.checked["instantiation"];
      if (!oracle.entails_unsat(detail::subst_set(s, x, t)))
        violate("instantiation", "S=" + detail::show(s) + " " + x + ":=" + to_string(t));
    }

    // Consistency
    Literal p = gen.coin() ? negate(*std::next(s.begin(), static_cast<std::ptrdiff_t>(gen.below(s.size()))))
                           : gen.literal();
    LiteralSet with_p = s, with_np = s;
    with_p.insert(p);
    with_np.insert(negate(p));
    if (oracle.entails_unsat(with_p) && oracle.entails_unsat(with_np)) {
      ++rep.checked["consistency"];
      if (!unsat) violate("consistency", "S=" + detail::show(s) + " p=" + to_string(p));
    }
  }
  return rep;
}

/// Deliberately broken oracle for testing the suite: refutes exactly the
/// two-element sets.
class PairOracle final : public TheoryOracle {
 public:
  bool entails_unsat(const LiteralSet& s) const override { return s.size() == 2; }
  std::string name() const override { return "pair"; }
};

}  // namespace lkt
