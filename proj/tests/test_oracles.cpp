#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace lkt;
using namespace lkt::testing;

namespace {

PolarityTable arith_table() {
  PolarityTable t;
  t.declare_predicate("p", 1, Polarity::positive);
  t.declare_function("f", 2);
  t.declare_function("g", 1);
  t.declare_function("c", 0);
  t.declare_function("d", 0);
  return t;
}

LiteralSet lits(std::initializer_list<const char*> texts) {
  LiteralSet s;
  for (const char* t : texts) s.insert(parse_literal(t, arith_table()));
  return s;
}

// Direct evaluation of a purely arithmetic term.
BigInt eval(const Term& t, const std::map<std::string, BigInt>& env) {
  switch (t.kind) {
    case Term::Kind::var:
      return env.at(t.name);
    case Term::Kind::integer:
      return t.value;
    case Term::Kind::plus:
      return eval(t.args[0], env) + eval(t.args[1], env);
    case Term::Kind::scale:
      return t.value * eval(t.args[0], env);
    default:
      throw std::logic_error("not arithmetic");
  }
}

Term random_arith(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 3), num(-5, 5);
  switch (pick(rng)) {
    case 0:
      return Term::var(std::string(1, "xyz"[std::uniform_int_distribution<int>(0, 2)(rng)]));
    case 1:
      return Term::integer(num(rng));
    case 2:
      return Term::plus(random_arith(rng, depth - 1), random_arith(rng, depth - 1));
    default:
      return Term::scale(num(rng), random_arith(rng, depth - 1));
  }
}

}  // namespace

TEST(Syntactic, ComplementaryPair) {
  SyntacticOracle syn;
  EXPECT_TRUE(syn.entails_unsat(lits({"p(c)", "~p(c)"})));
  EXPECT_FALSE(syn.entails_unsat(lits({"p(c)", "~p(d)"})));
  EXPECT_FALSE(syn.entails_unsat({}));
}

TEST(Syntactic, NoArithmetic) {
  SyntacticOracle syn;
  EXPECT_FALSE(syn.entails_unsat(lits({"p(x+3)", "~p(3+x)"})));
}

TEST(Lia, ArithmeticEquality) {
  LiaOracle lia;
  EXPECT_TRUE(lia.entails_unsat(lits({"p(x+3)", "~p(3+x)"})));
  EXPECT_TRUE(lia.entails_unsat(lits({"p(x+x)", "~p(2*x)"})));
  EXPECT_FALSE(lia.entails_unsat(lits({"p(x+1)", "~p(x)"})));
}

TEST(Lia, NormalizesUnderFunctionSymbols) {
  LiaOracle lia;
  EXPECT_TRUE(lia.entails_unsat(lits({"p(f(x+3,g(x)))", "~p(f(1+(2+x),g(x)))"})));
  EXPECT_FALSE(lia.entails_unsat(lits({"p(f(x+3,g(x)))", "~p(f(1+(2+y),g(y)))"})));
}

TEST(Lia, NormalFormAgreesWithEvaluation) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> val(-20, 20);
  for (int i = 0; i < 2000; ++i) {
    Term t = random_arith(rng, 4);
    Term n = lia_normalize(t);
    for (int k = 0; k < 3; ++k) {
      std::map<std::string, BigInt> env{{"x", val(rng)}, {"y", val(rng)}, {"z", val(rng)}};
      ASSERT_EQ(eval(t, env), eval(n, env)) << to_string(t) << " vs " << to_string(n);
    }
  }
}

TEST(Lia, NormalizationIsIdempotent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Term n = lia_normalize(random_arith(rng, 4));
    EXPECT_TRUE(lia_normalize(n) == n) << to_string(n);
  }
}

TEST(Lia, EvaluationEqualImpliesSameNormalForm) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    Term a = random_arith(rng, 3), b = random_arith(rng, 3);
    bool same = true;
    std::uniform_int_distribution<int> val(-50, 50);
    for (int k = 0; k < 6 && same; ++k) {
      std::map<std::string, BigInt> env{{"x", val(rng)}, {"y", val(rng)}, {"z", val(rng)}};
      same = eval(a, env) == eval(b, env);
    }
    if (same) EXPECT_TRUE(lia_normalize(a) == lia_normalize(b)) << to_string(a) << " / " << to_string(b);
  }
}

TEST(Lia, NormalizationCommutesWithSubstitution) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Term t = random_arith(rng, 4), s = random_arith(rng, 2);
    EXPECT_TRUE(lia_normalize(substitute(t, "x", s)) == lia_normalize(substitute(lia_normalize(t), "x", s)));
  }
}

TEST(MakeOracle, Names) {
  EXPECT_EQ(make_oracle("syntactic")->name(), "syntactic");
  EXPECT_EQ(make_oracle("lia")->name(), "lia");
  EXPECT_THROW(make_oracle("smt"), InputError);
}

TEST(Axioms, SyntacticSatisfiesAll) {
  SyntacticOracle syn;
  AxiomReport r = oracle_axiom_suite(syn, 1, 2000);
  EXPECT_TRUE(r.violations.empty()) << r.violations.front().axiom << ": " << r.violations.front().witness;
  for (const char* axiom : {"weakening", "contraction", "instantiation", "consistency"}) EXPECT_GT(r.checked[axiom], 0u) << axiom;
}

TEST(Axioms, LiaSatisfiesAll) {
  LiaOracle lia;
  AxiomReport r = oracle_axiom_suite(lia, 1, 2000);
  EXPECT_TRUE(r.violations.empty()) << r.violations.front().axiom << ": " << r.violations.front().witness;
}

TEST(Axioms, PairOracleBreaksWeakening) {
  PairOracle pair;
  AxiomReport r = oracle_axiom_suite(pair, 1, 2000);
  bool weakening = false;
  for (const auto& v : r.violations) weakening |= v.axiom == "weakening";
  EXPECT_TRUE(weakening);
}
