#pragma once

// JSON proof files. Formulae, terms and literals are stored in the surface
// syntax and re-parsed against the embedded signature.
//
//   {"signature": {"predicates": [{"name","arity","polarity"}],
//                  "functions":  [{"name","arity"}]},
//    "proof": node}
//   node = {"rule", "conclusion": {"kind", "gamma", "delta" | "focus"},
//           "params": {...}, "premisses": [node...]}

#include <json.hpp>

#include <string>

#include "lkt/parser.hpp"
#include "lkt/proof.hpp"

namespace lkt {

using Json = nlohmann::json;

struct ProofFile {
  PolarityTable table;
  Proof proof;
};

namespace detail {

inline Json texts(const Multiset& m) {
  Json out = Json::array();
  for (const auto& f : m) out.push_back(to_string(f));
  return out;
}

inline Json literal_texts(const std::vector<Literal>& ls) {
  Json out = Json::array();
  for (const auto& l : ls) out.push_back(to_string(l));
  return out;
}

inline Json sequent_json(const Sequent& s) {
  Json j;
  j["kind"] = s.is_focused() ? "focused" : "unfocused";
  j["gamma"] = texts(s.gamma);
  if (s.is_focused())
    j["focus"] = to_string(*s.focus);
  else
    j["delta"] = texts(s.delta);
  return j;
}

inline Json proof_json(const Proof& pf) {
  Json j;
  j["rule"] = std::string(rule_name(pf.rule));
  j["conclusion"] = sequent_json(pf.conclusion);
  Json params = Json::object();
  if (pf.witness) params["witness"] = to_string(*pf.witness);
  if (pf.eigen) params["eigen"] = *pf.eigen;
  if (pf.principal) params["principal"] = *pf.principal;
  if (pf.formula) params["formula"] = to_string(*pf.formula);
  if (pf.record) params["record"] = literal_texts({pf.record->literals.begin(), pf.record->literals.end()});
  if (!pf.literals.empty()) params["literals"] = literal_texts(pf.literals);
  j["params"] = params;
  Json prems = Json::array();
  for (const auto& p : pf.premisses) prems.push_back(proof_json(p));
  j["premisses"] = prems;
  return j;
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string text_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw InputError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline Multiset formulas_from(const Json& arr, const PolarityTable& tbl, const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected an array of formulae");
  Multiset out;
  for (const auto& f : arr) out.push_back(parse_formula(f.get<std::string>(), tbl));
  return out;
}

inline std::vector<Literal> literals_from(const Json& arr, const PolarityTable& tbl, const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected an array of literals");
  std::vector<Literal> out;
  for (const auto& l : arr) out.push_back(parse_literal(l.get<std::string>(), tbl));
  return out;
}

inline Sequent sequent_from(const Json& j, const PolarityTable& tbl, const std::string& where) {
  std::string kind = text_field(j, "kind", where);
  Multiset gamma = formulas_from(field(j, "gamma", where), tbl, where);
  if (kind == "focused") return Sequent::focused(std::move(gamma), parse_formula(text_field(j, "focus", where), tbl));
  if (kind == "unfocused") return Sequent::unfocused(std::move(gamma), formulas_from(field(j, "delta", where), tbl, where));
  throw InputError(where + ": unknown sequent kind '" + kind + "'");
}

inline Proof proof_from(const Json& j, const PolarityTable& tbl, const std::string& where) {
  Proof pf;
  std::string name = text_field(j, "rule", where);
  auto rule = rule_from_name(name);
  if (!rule) throw InputError(where + ": unknown rule '" + name + "'");
  pf.rule = *rule;
  pf.conclusion = sequent_from(field(j, "conclusion", where), tbl, where);
  if (j.contains("params")) {
    const Json& p = j.at("params");
    if (p.contains("witness")) pf.witness = parse_term(p.at("witness").get<std::string>(), tbl);
    if (p.contains("eigen")) pf.eigen = p.at("eigen").get<std::string>();
    if (p.contains("principal")) pf.principal = p.at("principal").get<std::size_t>();
    if (p.contains("formula")) pf.formula = parse_formula(p.at("formula").get<std::string>(), tbl);
    if (p.contains("record")) {
      auto lits = literals_from(p.at("record"), tbl, where);
      pf.record = TheoryRecord{LiteralSet(lits.begin(), lits.end())};
    }
    if (p.contains("literals")) pf.literals = literals_from(p.at("literals"), tbl, where);
  }
  if (j.contains("premisses")) {
    const Json& ps = j.at("premisses");
    for (std::size_t i = 0; i < ps.size(); ++i) pf.premisses.push_back(proof_from(ps[i], tbl, where + "." + std::to_string(i)));
  }
  return pf;
}

}  // namespace detail

inline Json signature_json(const PolarityTable& tbl) {
  Json preds = Json::array(), funs = Json::array();
  for (const auto& [name, decl] : tbl.predicates())
    preds.push_back({{"name", name}, {"arity", decl.arity}, {"polarity", to_string(decl.polarity)}});
  for (const auto& [name, arity] : tbl.functions()) funs.push_back({{"name", name}, {"arity", arity}});
  return {{"predicates", preds}, {"functions", funs}};
}

inline PolarityTable signature_from_json(const Json& j) {
  PolarityTable tbl;
  for (const auto& p : detail::field(j, "predicates", "signature")) {
    std::string pol = detail::text_field(p, "polarity", "signature");
    if (pol != "+" && pol != "-") throw InputError("signature: polarity must be + or -");
    tbl.declare_predicate(detail::text_field(p, "name", "signature"), p.at("arity").get<std::size_t>(),
                          pol == "+" ? Polarity::positive : Polarity::negative);
  }
  for (const auto& f : detail::field(j, "functions", "signature"))
    tbl.declare_function(detail::text_field(f, "name", "signature"), f.at("arity").get<std::size_t>());
  return tbl;
}

inline Json to_json(const ProofFile& f) {
  return {{"signature", signature_json(f.table)}, {"proof", detail::proof_json(f.proof)}};
}

inline ProofFile proof_file_from_json(const Json& j) {
  try {
    ProofFile out;
    out.table = signature_from_json(detail::field(j, "signature", "file"));
    out.proof = detail::proof_from(detail::field(j, "proof", "file"), out.table, "root");
    return out;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed proof file: ") + e.what());
  }
}

inline std::string serialize(const ProofFile& f) { return to_json(f).dump(1) + "\n"; }

inline ProofFile deserialize(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return proof_file_from_json(j);
}

}  // namespace lkt
