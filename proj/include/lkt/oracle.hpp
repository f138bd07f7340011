#pragma once

// Decision procedures queried by theory calls. An oracle answers whether a set
// of literals is unsatisfiable; it must be a pure function of that set.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "lkt/sequent.hpp"

namespace lkt {

class TheoryOracle {
 public:
  virtual ~TheoryOracle() = default;
  virtual bool entails_unsat(const LiteralSet& s) const = 0;
  virtual std::string name() const = 0;
};

/// True iff the set contains a literal together with its negation.
class SyntacticOracle final : public TheoryOracle {
 public:
  bool entails_unsat(const LiteralSet& s) const override {
    for (const auto& l : s)
      if (!l.negated && s.count(negate(l))) return true;
    return false;
  }
  std::string name() const override { return "syntactic"; }
};

// ---------------------------------------------------------------------------
// Linear arithmetic normalization
//
// A linear form is c0 + sum(ci * ai) where each atom ai is a variable or an
// application whose arguments are themselves normalized. Atoms are ordered by
// their printed form and zero coefficients are dropped.

struct LinearForm {
  BigInt constant;
  std::map<std::string, std::pair<Term, BigInt>> atoms;  // printed atom -> (atom, coefficient)

  void add_atom(Term atom, const BigInt& coeff) {
    std::string key = to_string(atom);
    auto [it, inserted] = atoms.try_emplace(key, std::move(atom), coeff);
    if (!inserted) it->second.second += coeff;
    if (it->second.second == 0) atoms.erase(it);
  }
  void add(const LinearForm& o, const BigInt& factor) {
    constant += o.constant * factor;
    for (const auto& [key, entry] : o.atoms) add_atom(entry.first, entry.second * factor);
  }
};

inline Term lia_normalize(const Term& t);

inline LinearForm linearize(const Term& t) {
  LinearForm lf;
  switch (t.kind) {
    case Term::Kind::integer:
      lf.constant = t.value;
      break;
    case Term::Kind::plus:
      lf.add(linearize(t.args[0]), 1);
      lf.add(linearize(t.args[1]), 1);
      break;
    case Term::Kind::scale:
      lf.add(linearize(t.args[0]), t.value);
      break;
    case Term::Kind::var:
      lf.add_atom(t, 1);
      break;
    case Term::Kind::app: {
      Term a = t;
      for (auto& arg : a.args) arg = lia_normalize(arg);
      lf.add_atom(std::move(a), 1);
      break;
    }
  }
  return lf;
}

inline Term from_linear(const LinearForm& lf) {
  if (lf.constant == 0 && lf.atoms.size() == 1 && lf.atoms.begin()->second.second == 1)
    return lf.atoms.begin()->second.first;
  std::optional<Term> acc;
  auto push = [&](Term t) { acc = acc ? Term::plus(std::move(*acc), std::move(t)) : std::move(t); };
  if (lf.constant != 0 || lf.atoms.empty()) push(Term::integer(lf.constant));
  for (const auto& [key, entry] : lf.atoms)
    push(entry.second == 1 ? entry.first : Term::scale(entry.second, entry.first));
  return *acc;
}

inline Term lia_normalize(const Term& t) { return from_linear(linearize(t)); }

inline Literal lia_normalize(const Literal& l) {
  Literal out = l;
  for (auto& a : out.args) a = lia_normalize(a);
  return out;
}

/// True iff the set contains a complementary pair once every term is put in
/// linear normal form.
class LiaOracle final : public TheoryOracle {
 public:
  bool entails_unsat(const LiteralSet& s) const override {
    LiteralSet normal;
    for (const auto& l : s) normal.insert(lia_normalize(l));
    return SyntacticOracle{}.entails_unsat(normal);
  }
  std::string name() const override { return "lia"; }
};

inline std::unique_ptr<TheoryOracle> make_oracle(std::string_view name) {
  if (name == "syntactic") return std::make_unique<SyntacticOracle>();
  if (name == "lia") return std::make_unique<LiaOracle>();
  throw InputError("unknown theory '" + std::string(name) + "' (expected syntactic|lia)");
}

}  // namespace lkt
