#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <optional>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lkt/cli.hpp"
#include "lkt/lkt.hpp"

namespace lkt::testing {

#ifndef LKT_CORPUS_DIR
#define LKT_CORPUS_DIR "corpus"
#endif

inline std::string corpus_dir() { return LKT_CORPUS_DIR; }

struct CorpusEntry {
  std::string name;
  std::string path;
  ProblemFile problem;
};

/// The golden corpus: every `.lkt` file directly under corpus/, by name.
inline std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    if (!e.is_regular_file() || e.path().extension() != ".lkt") continue;
    out.push_back({e.path().stem().string(), e.path().string(), parse_problem(cli::read_file(e.path().string()))});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

inline Sequent goal_of(const ProblemFile& pf) { return Sequent::unfocused({}, {pf.goal_formula()}); }

/// p/1 positive, q/1 negative, r/0 positive, s/2 negative; f/1, g/2; constant c.
inline PolarityTable sample_table() {
  PolarityTable t;
  t.declare_predicate("p", 1, Polarity::positive);
  t.declare_predicate("q", 1, Polarity::negative);
  t.declare_predicate("r", 0, Polarity::positive);
  t.declare_predicate("s", 2, Polarity::negative);
  t.declare_function("f", 1);
  t.declare_function("g", 2);
  t.declare_function("c", 0);
  return t;
}

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Term term(int depth) {
    switch (depth <= 0 ? below(2) : below(4)) {
      case 0:
        return Term::var(std::string(1, "xyz"[below(3)]));
      case 1:
        return Term::app("c");
      case 2:
        return Term::app("f", {term(depth - 1)});
      default:
        return Term::app("g", {term(depth - 1), term(depth - 1)});
    }
  }

  Literal literal() {
    Literal l;
    switch (below(4)) {
      case 0:
        l.pred = "p";
        l.args = {term(1)};
        break;
      case 1:
        l.pred = "q";
        l.args = {term(1)};
        break;
      case 2:
        l.pred = "r";
        break;
      default:
        l.pred = "s";
        l.args = {term(1), term(1)};
        break;
    }
    l.negated = below(2) == 0;
    return l;
  }

  Formula formula(int depth) {
    if (depth <= 0 || below(5) == 0) return Formula::atom(literal());
    std::string v(1, "xyz"[below(3)]);
    switch (below(6)) {
      case 0:
        return Formula::and_pos(formula(depth - 1), formula(depth - 1));
      case 1:
        return Formula::and_neg(formula(depth - 1), formula(depth - 1));
      case 2:
        return Formula::or_pos(formula(depth - 1), formula(depth - 1));
      case 3:
        return Formula::or_neg(formula(depth - 1), formula(depth - 1));
      case 4:
        return Formula::exists(v, formula(depth - 1));
      default:
        return Formula::forall(v, formula(depth - 1));
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Every literal over the signature of `tbl` whose arguments are drawn from
/// the constants, plus the universe witness when there is none.
inline std::vector<Literal> signature_literals(const PolarityTable& tbl) {
  std::vector<Term> args;
  for (const auto& c : tbl.constants()) args.push_back(Term::app(c));
  if (args.empty()) args.push_back(Term::var(universe_witness(tbl)));
  std::vector<Literal> out;
  for (const auto& [name, decl] : tbl.predicates()) {
    std::vector<std::size_t> idx(decl.arity, 0);
    while (true) {
      Literal l;
      l.pred = name;
      for (auto i : idx) l.args.push_back(args[i]);
      out.push_back(l);
      out.push_back(negate(l));
      std::size_t k = 0;
      while (k < decl.arity && ++idx[k] == args.size()) idx[k++] = 0;
      if (k == decl.arity) break;
    }
  }
  return out;
}

/// Paths of every node in pre-order, with the nodes.
inline void collect_nodes(const Proof& pf, const std::string& path, std::vector<std::pair<std::string, const Proof*>>& out) {
  out.emplace_back(path, &pf);
  for (std::size_t i = 0; i < pf.premisses.size(); ++i) collect_nodes(pf.premisses[i], path + "." + std::to_string(i), out);
}

inline Proof* node_at(Proof& root, const std::string& path) {
  Proof* cur = &root;
  std::size_t pos = path.find('.');
  while (pos != std::string::npos) {
    std::size_t next = path.find('.', pos + 1);
    std::size_t i = std::stoul(path.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1));
    cur = &cur->premisses.at(i);
    pos = next;
  }
  return cur;
}

inline Proof cut_node(Rule r, Sequent concl, std::vector<Proof> prems) { return build::node(r, std::move(concl), std::move(prems)); }

/// Gamma |- D over Gamma, p |- D.
inline Proof make_cut1(const Literal& p, Proof right) {
  Sequent c = Sequent::unfocused(build::without(right.conclusion.gamma, Formula::atom(p)), right.conclusion.delta);
  Proof out = cut_node(Rule::cut1, std::move(c), {std::move(right)});
  out.literals = {p};
  refresh_record(out);
  return out;
}

inline Proof make_cut2(const Literal& p, Proof right) {
  Sequent c = Sequent::focused(build::without(right.conclusion.gamma, Formula::atom(p)), *right.conclusion.focus);
  Proof out = cut_node(Rule::cut2, std::move(c), {std::move(right)});
  out.literals = {p};
  refresh_record(out);
  return out;
}

inline Proof make_cut3(Proof left, Proof right) {
  Formula na = negate(*left.conclusion.focus);
  Sequent c = Sequent::unfocused(left.conclusion.gamma, build::without(right.conclusion.delta, na));
  return cut_node(Rule::cut3, std::move(c), {std::move(left), std::move(right)});
}

inline Proof make_cut4(Proof left, Proof right) {
  Sequent c = Sequent::unfocused(left.conclusion.gamma, right.conclusion.delta);
  return cut_node(Rule::cut4, std::move(c), {std::move(left), std::move(right)});
}

inline Proof make_cut5(Proof left, Proof right) {
  Sequent c = Sequent::focused(left.conclusion.gamma, *right.conclusion.focus);
  return cut_node(Rule::cut5, std::move(c), {std::move(left), std::move(right)});
}

inline Proof make_cut67(Rule r, const Formula& a, Proof left, Proof right) {
  Sequent c = Sequent::unfocused(left.conclusion.gamma, build::without(left.conclusion.delta, a));
  Proof out = cut_node(r, std::move(c), {std::move(left), std::move(right)});
  out.formula = a;
  return out;
}

inline Proof make_cut8(const Literal& l, Proof left, Proof right) {
  Sequent c = Sequent::unfocused(build::without(left.conclusion.gamma, Formula::atom(l)), left.conclusion.delta);
  Proof out = cut_node(Rule::cut8, std::move(c), {std::move(left), std::move(right)});
  out.literals = {l};
  return out;
}

inline Proof make_cut9(const std::vector<Literal>& lits, Proof left, Proof right) {
  Multiset g = left.conclusion.gamma;
  for (const auto& l : lits) g = build::without(g, Formula::atom(l));
  Sequent c = Sequent::unfocused(std::move(g), left.conclusion.delta);
  Proof out = cut_node(Rule::cut9, std::move(c), {std::move(left), std::move(right)});
  out.literals = lits;
  return out;
}

/// Gamma, extra |- D with the search defaults, if one is found.
inline std::optional<Proof> find_proof(const Multiset& gamma, const Multiset& delta, const PolarityTable& tbl,
                                       const TheoryOracle& oracle, SearchConfig cfg = {}) {
  return prove(Sequent::unfocused(gamma, delta), tbl, oracle, cfg).proof;
}

}  // namespace lkt::testing
