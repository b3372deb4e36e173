#pragma once

// JSON forms of models, verdicts and analysis reports. Rationals are always
// exact strings ("1/3"); models list nonzero masses only.

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "probcons/analysis.hpp"
#include "probcons/consequence.hpp"
#include "probcons/models.hpp"
#include "probcons/parser.hpp"

namespace probcons {

using Json = nlohmann::ordered_json;

inline std::vector<std::string> true_atoms(std::span<const std::string> atom_list, std::uint64_t state) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < atom_list.size(); ++i) {
    if ((state >> i) & 1U) out.push_back(atom_list[i]);
  }
  return out;
}

inline Json to_json(const ProbModel& m) {
  Json masses = Json::array();
  for (const auto& [w, mass] : m.masses()) {
    masses.push_back({{"state", state_label(m.atoms(), w)},
                      {"true_atoms", true_atoms(m.atoms(), w)},
                      {"mass", to_string(mass)}});
  }
  return {{"atoms", m.atoms()}, {"masses", masses}};
}

namespace detail {

// Splits a concatenated state label back into atoms, in atom-list order.
inline std::optional<std::uint64_t> decode_label(const std::vector<std::string>& at, std::string_view label,
                                                 std::size_t from = 0) {
  if (label.empty()) return std::uint64_t{0};
  for (std::size_t i = from; i < at.size(); ++i) {
    if (label.substr(0, at[i].size()) != at[i]) continue;
    if (auto rest = decode_label(at, label.substr(at[i].size()), i + 1)) return *rest | (std::uint64_t{1} << i);
  }
  return std::nullopt;
}

}  // namespace detail

inline ProbModel model_from_json(const Json& j) {
  auto at = j.at("atoms").get<std::vector<std::string>>();
  std::map<std::uint64_t, Rational> masses;
  for (const auto& entry : j.at("masses")) {
    std::uint64_t w = 0;
    if (entry.contains("true_atoms")) {
      for (const auto& name : entry.at("true_atoms").get<std::vector<std::string>>()) {
        auto it = std::lower_bound(at.begin(), at.end(), name);
        if (it == at.end() || *it != name) throw std::invalid_argument("unknown atom '" + name + "' in model");
        w |= std::uint64_t{1} << (it - at.begin());
      }
    } else {
      auto label = entry.at("state").get<std::string>();
      auto decoded = detail::decode_label(at, label);
      if (!decoded) throw std::invalid_argument("cannot decode state '" + label + "'");
      w = *decoded;
    }
    if (masses.count(w)) throw std::invalid_argument("state listed twice in model");
    masses.emplace(w, parse_rational(entry.at("mass").get<std::string>()));
  }
  return ProbModel(std::move(at), std::move(masses));
}

inline Json to_json(const ValidityWitness& w) {
  Json j{{"type", "validity"}, {"kind", to_string(w.kind)}};
  j["value"] = w.value ? Json(to_string(*w.value)) : Json(nullptr);
  j["rule"] = w.rule;
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j{{"valid", v.valid}, {"relation", to_string(v.relation)}};
  j["upset"] = v.upset ? Json(to_string(*v.upset)) : Json(nullptr);
  j["argument"] = to_string(v.argument);
  if (const ProbModel* m = v.model()) {
    Json c{{"type", "counterexample"}, {"model", to_json(*m)}};
    Json probs = Json::array();
    for (const auto& g : v.argument.premises) probs.push_back({{"formula", to_string(g)}, {"role", "premise"}, {"probability", to_string(probability(*m, g))}});
    for (const auto& d : v.argument.conclusions) probs.push_back({{"formula", to_string(d)}, {"role", "conclusion"}, {"probability", to_string(probability(*m, d))}});
    c["probabilities"] = probs;
    j["certificate"] = c;
  } else {
    j["certificate"] = to_json(*v.witness());
  }
  return j;
}

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

// Checks a verdict document: a counterexample must verify independently; a
// validity claim must be reproduced by the decider.
inline VerifyResult verify_json(const Json& j, const DecideOptions& opts = {}) {
  Argument arg = parse_argument(j.at("argument").get<std::string>());
  RelationKind kind = parse_relation(j.at("relation").get<std::string>());
  std::optional<Upset> a;
  if (j.contains("upset") && !j.at("upset").is_null()) a = parse_upset(j.at("upset").get<std::string>());
  if (needs_upset(kind) != a.has_value()) return {false, "upset presence does not match relation"};
  bool claimed_valid = j.at("valid").get<bool>();
  const Json& cert = j.at("certificate");
  if (!claimed_valid) {
    if (cert.at("type") != "counterexample") return {false, "invalid verdict without a counterexample"};
    ProbModel m = model_from_json(cert.at("model"));
    auto [ck, up] = counterexample_notion(kind, a);
    if (!verify_counterexample(m, arg, up, ck)) return {false, "model is not a counterexample"};
    return {true, "counterexample verified"};
  }
  if (!decide(arg, a, kind, opts).valid) return {false, "decider finds the argument invalid"};
  return {true, "validity reproduced"};
}

inline Json to_json(const MaxSat& ms, const FormulaSet& g) {
  return {{"formulas", to_string(g)}, {"maxsat", to_string(ms.value)}, {"model", to_json(ms.model)}};
}

inline Json to_json(const InvalidityReport& r) {
  Json rules = r.rules();
  return {
      {"upset", to_string(r.upset)},
      {"applicable_rules", rules},
      {"classically_invalid", r.classically_invalid},
      {"setfmla",
       {{"applies", r.setfmla.applies()},
        {"upset_not_certainty", r.setfmla.upset_not_certainty},
        {"premises_maxsat", to_string(r.setfmla.premises_maxsat)},
        {"premises_satisfiable", r.setfmla.premises_satisfiable},
        {"disjunction_not_tautology", r.setfmla.disjunction_not_tautology},
        {"no_premise_entails_disjunction", r.setfmla.no_premise_entails_disjunction}}},
      {"fmlaset",
       {{"applies", r.fmlaset.applies()},
        {"upset_not_positive", r.fmlaset.upset_not_positive},
        {"negated_conclusions_maxsat", to_string(r.fmlaset.negated_conclusions_maxsat)},
        {"conclusions_not_tautologous", r.fmlaset.conclusions_not_tautologous},
        {"conjunction_satisfiable", r.fmlaset.conjunction_satisfiable},
        {"no_conclusion_entailed", r.fmlaset.no_conclusion_entailed}}},
      {"guaranteed_invalid_for", r.guaranteed_invalid_for()}};
}

inline Json to_json(const ComparisonReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"argument", to_string(row.argument)}, {"valid_a", row.valid_a}, {"valid_b", row.valid_b}});
  }
  return {{"relation", to_string(r.relation)},
          {"a", to_string(r.a)},
          {"b", to_string(r.b)},
          {"rows", rows},
          {"summary", {{"a_only", r.a_only}, {"b_only", r.b_only}, {"both", r.both}, {"neither", r.neither}}},
          {"incomparable", r.incomparable()}};
}

inline Json to_json(const ProbeReport& r) {
  Json refs = Json::array();
  for (const auto& inst : r.refutations) {
    refs.push_back({{"argument", to_string(inst.argument)}, {"upset", to_string(inst.upset)}});
  }
  return {{"trials", r.trials},
          {"eligible", r.eligible},
          {"confirmations", r.confirmations},
          {"refutations", refs},
          {"seed", r.seed}};
}

}  // namespace probcons
