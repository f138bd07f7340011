#pragma once

// Command-line front end: prove, check, elim, axioms and flip.
// Exit status 0 is a positive verdict, 1 a negative one, 2 a usage or I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lkt/axioms.hpp"
#include "lkt/checker.hpp"
#include "lkt/cut.hpp"
#include "lkt/parser.hpp"
#include "lkt/proof_json.hpp"
#include "lkt/search.hpp"

namespace lkt::cli {

enum Exit : int { ok = 0, negative = 1, usage = 2 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

inline Sequent goal_sequent(const Formula& goal) { return Sequent::unfocused({}, {goal}); }

struct SearchFlags {
  std::size_t max_decisions = SearchConfig{}.max_decisions;
  std::size_t max_witness_depth = SearchConfig{}.max_witness_depth;
  std::size_t max_nodes = SearchConfig{}.max_nodes;
  std::string branch_order = "left";

  SearchConfig config() const {
    SearchConfig c;
    c.max_decisions = max_decisions;
    c.max_witness_depth = max_witness_depth;
    c.max_nodes = max_nodes;
    c.branch_order = branch_order == "right" ? BranchOrder::right_first : BranchOrder::left_first;
    return c;
  }

  void attach(CLI::App& cmd) {
    cmd.add_option("--max-decisions", max_decisions, "focus decisions per branch")->capture_default_str();
    cmd.add_option("--max-witness-depth", max_witness_depth, "nesting depth of witness terms")->capture_default_str();
    cmd.add_option("--max-nodes", max_nodes, "total search nodes")->capture_default_str();
    cmd.add_option("--branch-order", branch_order, "disjunct tried first")
        ->check(CLI::IsMember({"left", "right"}))
        ->capture_default_str();
  }
};

struct ProveArgs {
  std::string file, theory = "syntactic", emit;
  SearchFlags search;
};

inline int cmd_prove(const ProveArgs& a, std::ostream& out) {
  ProblemFile pf = parse_problem(read_file(a.file));
  auto oracle = make_oracle(a.theory);
  SearchOutcome r = prove(goal_sequent(pf.goal_formula()), pf.table, *oracle, a.search.config());
  if (r.proved() && !a.emit.empty()) write_file(a.emit, serialize({pf.table, *r.proof}));
  out << (r.proved() ? "PROVED" : "EXHAUSTED") << "\n" << to_string(r.stats) << "\n";
  return r.proved() ? ok : negative;
}

struct CheckArgs {
  std::string file, proof, theory = "syntactic";
  bool allow_cuts = false;
};

inline void print_failures(const CheckReport& rep, std::ostream& out) {
  for (const auto& f : rep.failures) out << f.path << ": " << f.message << "\n";
}

inline int cmd_check(const CheckArgs& a, std::ostream& out) {
  ProblemFile pf = parse_problem(read_file(a.file));
  ProofFile proof = deserialize(read_file(a.proof));
  auto oracle = make_oracle(a.theory);
  CheckReport rep;
  if (!(proof.table == pf.table)) {
    rep.failures.push_back({"root", "proof signature differs from the problem's declarations"});
  } else {
    rep = check(proof.proof, pf.table, *oracle, {a.allow_cuts});
    Sequent want = goal_sequent(pf.goal_formula());
    if (!(proof.proof.conclusion == want))
      rep.failures.push_back({"root", "proof concludes " + to_string(proof.proof.conclusion) + ", expected " + to_string(want)});
  }
  rep.ok = rep.failures.empty();
  out << (rep.ok ? "VALID" : "INVALID") << "\n";
  print_failures(rep, out);
  return rep.ok ? ok : negative;
}

struct ElimArgs {
  std::string proof, theory = "syntactic", output, trace;
};

inline int cmd_elim(const ElimArgs& a, std::ostream& out, std::ostream& err) {
  ProofFile in = deserialize(read_file(a.proof));
  auto oracle = make_oracle(a.theory);
  CheckReport pre = check(in.proof, in.table, *oracle, {true});
  if (!pre.ok) {
    out << "INVALID\n";
    print_failures(pre, out);
    return negative;
  }
  std::vector<std::string> trace;
  TransformContext ctx{in.table, *oracle, &trace};
  Proof result;
  try {
    result = eliminate(in.proof, ctx);
  } catch (const TransformError& e) {
    err << "error: " << e.what() << "\n";
    return negative;
  }
  CheckReport post = check(result, in.table, *oracle);
  if (!post.ok) {
    err << "error: eliminated proof fails the checker\n";
    print_failures(post, err);
    return negative;
  }
  write_file(a.output, serialize({in.table, result}));
  if (!a.trace.empty()) {
    std::string text;
    for (const auto& line : trace) text += line + "\n";
    write_file(a.trace, text);
  }
  out << "ELIMINATED\n" << "nodes=" << node_count(in.proof) << " -> " << node_count(result) << "\n";
  return ok;
}

struct AxiomArgs {
  std::string theory = "syntactic";
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
};

inline int cmd_axioms(const AxiomArgs& a, std::ostream& out) {
  auto oracle = make_oracle(a.theory);
  AxiomReport rep = oracle_axiom_suite(*oracle, a.seed, a.samples);
  out << "VIOLATIONS=" << rep.violations.size() << "\n";
  for (const auto& [axiom, n] : rep.checked) out << axiom << " checked=" << n << "\n";
  for (const auto& v : rep.violations) out << v.axiom << ": " << v.witness << "\n";
  return rep.violations.empty() ? ok : negative;
}

enum class FlipVerdict { agree, disagree, inconclusive };

inline std::string to_string(FlipVerdict v) {
  switch (v) {
    case FlipVerdict::agree:
      return "AGREE";
    case FlipVerdict::disagree:
      return "DISAGREE";
    default:
      return "INCONCLUSIVE(bounds)";
  }
}

/// AGREE when both sides prove; DISAGREE only when one side proves and the
/// other exhausts without touching a bound.
inline FlipVerdict flip_verdict(const SearchOutcome& a, const SearchOutcome& b) {
  if (a.proved() && b.proved()) return FlipVerdict::agree;
  if (a.proved() != b.proved()) {
    const SearchOutcome& failed = a.proved() ? b : a;
    if (!failed.stats.bound_hit) return FlipVerdict::disagree;
  }
  return FlipVerdict::inconclusive;
}

struct FlipArgs {
  std::string file, pred, theory = "syntactic";
  SearchFlags search;
};

struct FlipResult {
  SearchOutcome original, flipped;
  FlipVerdict verdict = FlipVerdict::inconclusive;
};

inline FlipResult run_flip(const ProblemFile& pf, const std::string& pred, const TheoryOracle& oracle,
                           const SearchConfig& cfg) {
  if (!pf.table.has_predicate(pred)) throw InputError("unknown predicate '" + pred + "'");
  PolarityTable flipped = pf.table;
  flipped.set_polarity(pred, flip(pf.table.polarity(pred)));
  FlipResult r;
  r.original = prove(goal_sequent(pf.goal_formula()), pf.table, oracle, cfg);
  r.flipped = prove(goal_sequent(resolve(pf.goal, flipped)), flipped, oracle, cfg);
  r.verdict = flip_verdict(r.original, r.flipped);
  return r;
}

inline int cmd_flip(const FlipArgs& a, std::ostream& out) {
  ProblemFile pf = parse_problem(read_file(a.file));
  auto oracle = make_oracle(a.theory);
  FlipResult r = run_flip(pf, a.pred, *oracle, a.search.config());
  auto line = [&](const char* side, const SearchOutcome& o) {
    out << side << ": " << (o.proved() ? "PROVED" : "EXHAUSTED") << " " << lkt::to_string(o.stats)
        << (o.stats.bound_hit ? " bound-hit" : "") << "\n";
  };
  line("original", r.original);
  line("flipped", r.flipped);
  out << to_string(r.verdict) << "\n";
  return r.verdict == FlipVerdict::disagree ? negative : ok;
}

/// Parses `args` (program name first) and dispatches to a subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Focused proof search, checking and cut elimination for LK(T)"};
  app.require_subcommand(1);
  auto theory_opt = [](CLI::App* c, std::string& t) {
    c->add_option("--theory", t, "syntactic or lia")->check(CLI::IsMember({"syntactic", "lia"}))->capture_default_str();
  };

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "search for a proof of a problem's goal");
  prove_cmd->add_option("FILE", pa.file, "problem file")->required();
  theory_opt(prove_cmd, pa.theory);
  prove_cmd->add_option("--emit-proof", pa.emit, "write the proof as JSON");
  pa.search.attach(*prove_cmd);

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "verify a proof file against a problem");
  check_cmd->add_option("FILE", ca.file, "problem file")->required();
  check_cmd->add_option("--proof", ca.proof, "proof file")->required();
  theory_opt(check_cmd, ca.theory);
  check_cmd->add_flag("--allow-cuts", ca.allow_cuts, "accept cut nodes");

  ElimArgs ea;
  auto* elim_cmd = app.add_subcommand("elim", "eliminate cuts from a proof file");
  elim_cmd->add_option("--proof", ea.proof, "proof file with cuts")->required();
  theory_opt(elim_cmd, ea.theory);
  elim_cmd->add_option("-o,--output", ea.output, "cut-free proof file")->required();
  elim_cmd->add_option("--trace", ea.trace, "reduction trace file");

  AxiomArgs aa;
  auto* axioms_cmd = app.add_subcommand("axioms", "randomized oracle axiom suite");
  theory_opt(axioms_cmd, aa.theory);
  axioms_cmd->add_option("--seed", aa.seed)->capture_default_str();
  axioms_cmd->add_option("--samples", aa.samples)->capture_default_str()->check(CLI::PositiveNumber);

  FlipArgs fa;
  auto* flip_cmd = app.add_subcommand("flip", "flip a predicate's polarity and compare provability");
  flip_cmd->add_option("FILE", fa.file, "problem file")->required();
  flip_cmd->add_option("PRED", fa.pred, "predicate to flip")->required();
  theory_opt(flip_cmd, fa.theory);
  fa.search.attach(*flip_cmd);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*prove_cmd) return cmd_prove(pa, out);
    if (*check_cmd) return cmd_check(ca, out);
    if (*elim_cmd) return cmd_elim(ea, out, err);
    if (*axioms_cmd) return cmd_axioms(aa, out);
    if (*flip_cmd) return cmd_flip(fa, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

inline int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace lkt::cli
