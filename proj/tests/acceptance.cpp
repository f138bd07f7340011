// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace lkt;
using namespace lkt::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct Solved {
  CorpusEntry entry;
  Proof proof;
};

std::vector<Solved>& solved_corpus() {
  static std::vector<Solved> out = [] {
    std::vector<Solved> v;
    SyntacticOracle syn;
    for (auto& e : load_corpus()) {
      auto r = prove(goal_of(e.problem), e.problem.table, syn);
      if (r.proved()) v.push_back({e, *r.proof});
    }
    return v;
  }();
  return out;
}

std::string first_failure(const CheckReport& r) {
  return r.failures.empty() ? "" : r.failures[0].path + ": " + r.failures[0].message;
}

// A random term over the signature: variables, constants and applications.
Term random_term(std::mt19937_64& rng, const PolarityTable& tbl, int depth) {
  std::vector<std::pair<std::string, std::size_t>> fs(tbl.functions().begin(), tbl.functions().end());
  std::uniform_int_distribution<std::size_t> pick(0, fs.size() + 2);
  std::size_t k = pick(rng);
  if (depth <= 0 || k >= fs.size()) return Term::var(std::string(1, "uvw"[k % 3]));
  std::vector<Term> args;
  for (std::size_t i = 0; i < fs[k].second; ++i) args.push_back(random_term(rng, tbl, depth - 1));
  return Term::app(fs[k].first, std::move(args));
}

Literal random_literal(std::mt19937_64& rng, const PolarityTable& tbl) {
  std::vector<std::pair<std::string, PredicateDecl>> ps(tbl.predicates().begin(), tbl.predicates().end());
  const auto& [name, decl] = ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
  Literal l;
  l.pred = name;
  for (std::size_t i = 0; i < decl.arity; ++i) l.args.push_back(random_term(rng, tbl, 1));
  l.negated = rng() % 2 == 0;
  return l;
}

// ---------------------------------------------------------------------------

Verdict negation_involution() {
  PolarityTable t = sample_table();
  FormulaGen gen(2024);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    Formula f = gen.formula(6);
    if (!identical(negate(negate(f)), f) || polarity_of(f, t) == polarity_of(negate(f), t)) ++bad;
  }
  return {bad == 0, "10000 formulae, " + std::to_string(bad) + " failures"};
}

Verdict corpus_round_trip() {
  auto corpus = load_corpus();
  SyntacticOracle syn;
  std::size_t proved = 0, valid = 0;
  std::string first;
  for (const auto& e : corpus) {
    auto r = prove(goal_of(e.problem), e.problem.table, syn);
    if (!r.proved()) {
      if (first.empty()) first = e.name + " not proved";
      continue;
    }
    ++proved;
    CheckReport rep = check(*r.proof, e.problem.table, syn);
    if (rep.ok && r.proof->conclusion == goal_of(e.problem))
      ++valid;
    else if (first.empty())
      first = e.name + ": " + first_failure(rep);
  }
  bool ok = corpus.size() >= 25 && valid == corpus.size();
  return {ok, std::to_string(corpus.size()) + " problems, " + std::to_string(proved) + " proved, " +
                  std::to_string(valid) + " valid" + (first.empty() ? "" : " (" + first + ")")};
}

const Proof* find_rule(const Proof& pf, Rule r) {
  if (pf.rule == r) return &pf;
  for (const auto& p : pf.premisses)
    if (const Proof* q = find_rule(p, r)) return q;
  return nullptr;
}

Verdict introduction_example() {
  ProblemFile pf = parse_problem(cli::read_file(corpus_dir() + "/theory/intro.lkt"));
  SearchConfig cfg;
  cfg.max_witness_depth = 1;
  LiaOracle lia;
  SyntacticOracle syn;
  auto with_lia = prove(goal_of(pf), pf.table, lia, cfg);
  auto with_syn = prove(goal_of(pf), pf.table, syn, cfg);
  bool witness_ok = false;
  if (with_lia.proved()) {
    const Proof* all = find_rule(*with_lia.proof, Rule::forall_intro);
    const Proof* ex = find_rule(*with_lia.proof, Rule::exists_intro);
    witness_ok = all && ex && *ex->witness == Term::var(*all->eigen) && check(*with_lia.proof, pf.table, lia).ok;
  }
  bool ok = with_lia.proved() && witness_ok && !with_syn.proved();
  return {ok, std::string("lia ") + (with_lia.proved() ? "PROVED" : "EXHAUSTED") + (witness_ok ? " via y:=x" : "") +
                  ", syntactic " + (with_syn.proved() ? "PROVED" : "EXHAUSTED") + " (witness depth 1)"};
}

Verdict oracle_axioms() {
  SyntacticOracle syn;
  LiaOracle lia;
  PairOracle pair;
  AxiomReport a = oracle_axiom_suite(syn, 1, 10000);
  AxiomReport b = oracle_axiom_suite(lia, 1, 10000);
  AxiomReport c = oracle_axiom_suite(pair, 1, 10000);
  bool ok = a.violations.empty() && b.violations.empty() && !c.violations.empty();
  return {ok, "syntactic " + std::to_string(a.violations.size()) + ", lia " + std::to_string(b.violations.size()) +
                  ", mutant " + std::to_string(c.violations.size()) + " violations"};
}

Verdict invertibility() {
  std::size_t cases = 0, bad = 0;
  std::string first;
  for (const auto& s : solved_corpus()) {
    const PolarityTable& tbl = s.entry.problem.table;
    SyntacticOracle syn;
    TransformContext ctx{tbl, syn};
    std::vector<std::pair<std::string, const Proof*>> nodes;
    collect_nodes(s.proof, "root", nodes);
    for (const auto& [path, node] : nodes) {
      const Sequent& c = node->conclusion;
      if (c.is_focused()) continue;
      for (const auto& a : c.delta) {
        ++cases;
        std::string why;
        try {
          Inversion inv = invert(*node, a, ctx);
          auto want = inversion_premisses(c, a, tbl, inv.eigen.value_or(""));
          if (inv.proofs.size() != want.size()) why = "premiss count";
          for (std::size_t i = 0; why.empty() && i < want.size(); ++i) {
            if (!(inv.proofs[i].conclusion == want[i])) why = "conclusion " + to_string(inv.proofs[i].conclusion);
            CheckReport r = check(inv.proofs[i], tbl, syn);
            if (!r.ok) why = first_failure(r);
          }
          if (why.empty()) {
            Proof back = reapply(a, inv.proofs, tbl, inv.eigen);
            if (!(back.conclusion == c)) why = "reapply gives " + to_string(back.conclusion);
            else if (!check(back, tbl, syn).ok) why = "reapplied proof invalid";
          }
        } catch (const Error& e) {
          why = e.what();
        }
        if (!why.empty()) {
          ++bad;
          if (first.empty()) first = s.entry.name + " " + path + " " + to_string(a) + ": " + why;
        }
      }
    }
  }
  return {bad == 0 && cases > 0, std::to_string(cases) + " inversions, " + std::to_string(bad) + " failures" +
                                     (first.empty() ? "" : " (" + first + ")")};
}

// Extended proof of Gamma |- goal: nested cut1/cut8/cut9 nodes over weakened
// copies of a cut-free proof of |- goal.
class CutFuzzer {
 public:
  CutFuzzer(const Proof& base, const PolarityTable& tbl, const TransformContext& ctx, std::mt19937_64& rng)
      : base_(base), tbl_(tbl), ctx_(ctx), rng_(rng) {}

  Proof build(const std::vector<Formula>& gamma, int depth) {
    if (depth <= 0) return weaken(base_, gamma, ctx_);
    std::vector<Literal> positives;
    for (const auto& f : gamma)
      if (f.is_literal() && is_positive_literal(f.lit, tbl_)) positives.push_back(f.lit);
    switch (rng_() % 3) {
      case 0:
        if (!positives.empty()) {
          Literal p = positives[rng_() % positives.size()];
          return make_cut1(p, build(plus(gamma, {Formula::atom(p)}), depth - 1));
        }
        [[fallthrough]];
      case 1: {
        Literal l = random_literal(rng_, tbl_);
        return make_cut8(l, build(plus(gamma, {Formula::atom(l)}), depth - 1),
                         build(plus(gamma, {Formula::atom(negate(l))}), depth - 1));
      }
      default: {
        std::vector<Literal> lits;
        std::vector<Formula> atoms;
        for (std::size_t n = 1 + rng_() % 3; n > 0; --n) {
          lits.push_back(random_literal(rng_, tbl_));
          atoms.push_back(Formula::atom(lits.back()));
        }
        return make_cut9(lits, build(plus(gamma, atoms), depth - 1),
                         build(plus(gamma, {negated_clause(lits)}), depth - 1));
      }
    }
  }

 private:
  static std::vector<Formula> plus(std::vector<Formula> a, const std::vector<Formula>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  const Proof& base_;
  const PolarityTable& tbl_;
  const TransformContext& ctx_;
  std::mt19937_64& rng_;
};

std::string eliminate_and_check(const Proof& ext, const PolarityTable& tbl, const TheoryOracle& oracle) {
  TransformContext ctx{tbl, oracle};
  CheckReport pre = check(ext, tbl, oracle, {true});
  if (!pre.ok) return "extended proof invalid: " + first_failure(pre);
  try {
    Proof out = eliminate(ext, ctx);
    if (contains_cut(out)) return "cuts remain";
    if (!(out.conclusion == ext.conclusion)) return "conclusion changed";
    CheckReport post = check(out, tbl, oracle);
    if (!post.ok) return first_failure(post);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Verdict cut_elimination() {
  std::size_t cases = 0, bad = 0;
  std::string first;
  auto record = [&](const std::string& what, const std::string& why) {
    ++cases;
    if (why.empty()) return;
    ++bad;
    if (first.empty()) first = what + ": " + why;
  };
  SyntacticOracle syn;
  for (const auto& s : solved_corpus()) {
    const PolarityTable& tbl = s.entry.problem.table;
    TransformContext ctx{tbl, syn};
    for (const auto& l : signature_literals(tbl)) {
      Proof ext = make_cut8(l, weaken(s.proof, Formula::atom(l), ctx), weaken(s.proof, Formula::atom(negate(l)), ctx));
      record(s.entry.name + " cut8 " + to_string(l), eliminate_and_check(ext, tbl, syn));
    }
  }
  std::size_t corpus_cases = cases;
  std::mt19937_64 rng(77);
  const auto& corpus = solved_corpus();
  for (int i = 0; i < 200; ++i) {
    const Solved& s = corpus[rng() % corpus.size()];
    const PolarityTable& tbl = s.entry.problem.table;
    TransformContext ctx{tbl, syn};
    CutFuzzer fuzz(s.proof, tbl, ctx, rng);
    Proof ext = fuzz.build({}, 1 + static_cast<int>(rng() % 3));
    record(s.entry.name + " fuzz " + std::to_string(i), eliminate_and_check(ext, tbl, syn));
  }
  return {bad == 0, std::to_string(corpus_cases) + " corpus cut8 cases, " + std::to_string(cases - corpus_cases) +
                        " fuzzed nestings, " + std::to_string(bad) + " failures" + (first.empty() ? "" : " (" + first + ")")};
}

Verdict admissible_rules() {
  std::mt19937_64 rng(99);
  SyntacticOracle syn;
  const auto& corpus = solved_corpus();
  std::size_t bad = 0, counts[3] = {0, 0, 0};
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    const Solved& s = corpus[rng() % corpus.size()];
    const PolarityTable& tbl = s.entry.problem.table;
    TransformContext ctx{tbl, syn};
    std::vector<std::pair<std::string, const Proof*>> nodes;
    collect_nodes(s.proof, "root", nodes);
    const Proof& pf = *nodes[rng() % nodes.size()].second;
    Literal l = random_literal(rng, tbl);
    Formula extra = rng() % 3 == 0 ? Formula::or_neg(Formula::atom(l), Formula::atom(negate(l))) : Formula::atom(l);
    if (!extra.is_literal() && !is_negative(extra, tbl)) extra = Formula::atom(l);
    std::string why;
    std::size_t op = i % 3;
    ++counts[op];
    try {
      Proof out;
      Sequent want = pf.conclusion;
      if (op == 0) {
        out = weaken(pf, extra, ctx);
        ms_insert(want.gamma, extra);
      } else if (op == 1) {
        out = contract(weaken(pf, std::vector<Formula>{extra, extra}, ctx), extra, ctx);
        ms_insert(want.gamma, extra);
      } else {
        VarSet fv = free_vars(pf.conclusion);
        std::string x = fv.empty() ? "u" : *std::next(fv.begin(), static_cast<std::ptrdiff_t>(rng() % fv.size()));
        Term t = random_term(rng, tbl, 2);
        out = instantiate(pf, x, t, ctx);
        want = substitute(pf.conclusion, x, t);
      }
      if (!(out.conclusion == want))
        why = "conclusion " + to_string(out.conclusion) + ", expected " + to_string(want);
      else if (CheckReport r = check(out, tbl, syn); !r.ok)
        why = first_failure(r);
    } catch (const Error& e) {
      why = e.what();
    }
    if (!why.empty()) {
      ++bad;
      if (first.empty()) first = s.entry.name + ": " + why;
    }
  }
  return {bad == 0, std::to_string(counts[0]) + " weaken, " + std::to_string(counts[1]) + " contract, " +
                        std::to_string(counts[2]) + " instantiate, " + std::to_string(bad) + " failures" +
                        (first.empty() ? "" : " (" + first + ")")};
}

// Adds `f` to the context of every sequent in the subtree, without renaming.
void inject(Proof& pf, const Formula& f) {
  ms_insert(pf.conclusion.gamma, f);
  for (auto& p : pf.premisses) inject(p, f);
}

std::string parent_of(const std::string& path) {
  auto dot = path.rfind('.');
  return dot == std::string::npos ? path : path.substr(0, dot);
}

Verdict mutation_resistance() {
  std::mt19937_64 rng(5);
  SyntacticOracle syn;
  const auto& corpus = solved_corpus();
  const char* kinds[4] = {"witness", "disjunct", "eigen", "record"};
  std::size_t made[4] = {0, 0, 0, 0}, rejected = 0, total = 0;
  std::string first;
  std::size_t attempts = 0;
  while (total < 500 && attempts < 200000) {
    ++attempts;
    std::size_t kind = total % 4;
    const Solved& s = corpus[rng() % corpus.size()];
    const PolarityTable& tbl = s.entry.problem.table;
    Proof pf = s.proof;
    std::vector<std::pair<std::string, const Proof*>> nodes;
    collect_nodes(pf, "root", nodes);
    std::vector<std::string> sites;
    for (const auto& [path, n] : nodes) {
      switch (kind) {
        case 0:
          if (n->rule == Rule::exists_intro && occurs_free(n->conclusion.focus->var, n->conclusion.focus->body()))
            sites.push_back(path);
          break;
        case 1:
          if ((n->rule == Rule::or_plus_left || n->rule == Rule::or_plus_right) &&
              !(n->conclusion.focus->left() == n->conclusion.focus->right()))
            sites.push_back(path);
          break;
        case 2:
          if (n->rule == Rule::forall_intro) sites.push_back(path);
          break;
        default:
          if (n->record) sites.push_back(path);
          break;
      }
    }
    if (sites.empty()) continue;
    std::string site = sites[rng() % sites.size()];
    Proof* node = node_at(pf, site);
    switch (kind) {
      case 0: {
        Term t = random_term(rng, tbl, 1);
        if (t == *node->witness) continue;
        node->witness = t;
        break;
      }
      case 1:
        node->rule = node->rule == Rule::or_plus_left ? Rule::or_plus_right : Rule::or_plus_left;
        break;
      case 2: {
        VarSet fv = free_vars(node->conclusion);
        if (!fv.empty()) {
          node->eigen = *fv.begin();
        } else {
          Literal l = random_literal(rng, tbl);
          Literal clash;
          clash.pred = l.pred;
          for (std::size_t i = 0; i < l.args.size(); ++i) clash.args.push_back(Term::var(*node->eigen));
          clash.negated = l.negated;
          if (clash.args.empty()) continue;
          inject(*node, Formula::atom(clash));
        }
        break;
      }
      default: {
        Literal extra = random_literal(rng, tbl);
        if (node->record->literals.count(extra)) continue;
        node->record->literals.insert(extra);
        break;
      }
    }
    ++total;
    ++made[kind];
    CheckReport r = check(pf, tbl, syn);
    bool located = false;
    for (const auto& f : r.failures) located |= f.path == site || f.path == parent_of(site);
    if (!r.ok && located)
      ++rejected;
    else if (first.empty())
      first = std::string(kinds[kind]) + " at " + s.entry.name + " " + site + " not rejected";
  }
  std::ostringstream d;
  d << total << " mutations (";
  for (int k = 0; k < 4; ++k) d << (k ? ", " : "") << kinds[k] << " " << made[k];
  d << "), " << rejected << " rejected with a path";
  if (!first.empty()) d << " (" << first << ")";
  return {total == 500 && rejected == total, d.str()};
}

Verdict polarity_flip() {
  SyntacticOracle syn;
  std::size_t agree = 0, inconclusive = 0, disagree = 0;
  std::string first;
  for (const auto& e : load_corpus()) {
    for (const auto& [pred, decl] : e.problem.table.predicates()) {
      auto r = cli::run_flip(e.problem, pred, syn, {});
      switch (r.verdict) {
        case cli::FlipVerdict::agree:
          ++agree;
          break;
        case cli::FlipVerdict::inconclusive:
          ++inconclusive;
          break;
        default:
          ++disagree;
          if (first.empty()) first = e.name + " flip " + pred;
      }
    }
  }
  return {disagree == 0, std::to_string(agree) + " AGREE, " + std::to_string(inconclusive) + " INCONCLUSIVE, " +
                             std::to_string(disagree) + " DISAGREE" + (first.empty() ? "" : " (" + first + ")")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 for no limit
    std::function<Verdict()> run;
  };
  std::vector<Criterion> criteria{
      {1, "negation involution", 5, negation_involution},
      {2, "corpus soundness round trip", 30, corpus_round_trip},
      {3, "introduction example", 2, introduction_example},
      {4, "oracle axiom suite", 20, oracle_axioms},
      {5, "invertibility", 0, invertibility},
      {6, "cut elimination", 60, cut_elimination},
      {7, "admissible rules", 0, admissible_rules},
      {8, "checker mutation resistance", 0, mutation_resistance},
      {9, "polarity flip", 0, polarity_flip},
  };
  solved_corpus();
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = c.limit_s == 0 || secs < c.limit_s;
    bool ok = v.ok && in_time;
    failures += !ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs%s", secs, in_time ? "" : " over limit");
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << v.detail << " [" << timing << "]"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
