#pragma once

// Deciders for material, preservation and symmetric consequence, plus
// alpha-satisfiability, alpha-tautology and the maximum satisfiability
// threshold. Every invalid verdict carries a model that has been re-checked
// by verify_counterexample before it is returned.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "probcons/formula.hpp"
#include "probcons/linprog.hpp"
#include "probcons/models.hpp"
#include "probcons/rational.hpp"
#include "probcons/semantics.hpp"
#include "probcons/upset.hpp"

namespace probcons {

enum class RelationKind { material, preservation, symmetric, classical, supervaluational, subvaluational };

inline bool needs_upset(RelationKind k) {
  return k == RelationKind::material || k == RelationKind::preservation || k == RelationKind::symmetric;
}

inline std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::material: return "material";
    case RelationKind::preservation: return "preservation";
    case RelationKind::symmetric: return "symmetric";
    case RelationKind::classical: return "classical";
    case RelationKind::supervaluational: return "sv";
    case RelationKind::subvaluational: return "sub";
  }
  return "?";
}

inline RelationKind parse_relation(const std::string& s) {
  if (s == "material") return RelationKind::material;
  if (s == "preservation") return RelationKind::preservation;
  if (s == "symmetric") return RelationKind::symmetric;
  if (s == "classical") return RelationKind::classical;
  if (s == "sv" || s == "supervaluational") return RelationKind::supervaluational;
  if (s == "sub" || s == "subvaluational") return RelationKind::subvaluational;
  throw std::invalid_argument("unknown relation '" + s + "'");
}

struct ValidityWitness {
  enum class Kind { classical_tautology, lp_optimum, limit_theorem };
  Kind kind = Kind::classical_tautology;
  // lp_optimum: the optimal epsilon or maxsat value; empty when the LP was
  // infeasible outright.
  std::optional<Rational> value;
  std::string rule;

  friend bool operator==(const ValidityWitness&, const ValidityWitness&) = default;
};

inline std::string to_string(ValidityWitness::Kind k) {
  switch (k) {
    case ValidityWitness::Kind::classical_tautology: return "classical-tautology";
    case ValidityWitness::Kind::lp_optimum: return "lp-optimum";
    case ValidityWitness::Kind::limit_theorem: return "limit-theorem";
  }
  return "?";
}

struct Verdict {
  bool valid = false;
  RelationKind relation = RelationKind::classical;
  std::optional<Upset> upset;
  Argument argument;
  std::variant<ProbModel, ValidityWitness> certificate;

  const ProbModel* model() const { return std::get_if<ProbModel>(&certificate); }
  const ValidityWitness* witness() const { return std::get_if<ValidityWitness>(&certificate); }
};

struct DecideOptions {
  Limits limits;
  // When false, {1} and (0,1] go through the LP like any other upset. Only
  // useful for cross-checking the characterizations.
  bool use_characterizations = true;
};

// Which counterexample notion certifies an invalid verdict of each kind.
inline std::pair<CounterexampleKind, Upset> counterexample_notion(RelationKind k, const std::optional<Upset>& a) {
  switch (k) {
    case RelationKind::material: return {CounterexampleKind::material, *a};
    case RelationKind::preservation: return {CounterexampleKind::preservation, *a};
    case RelationKind::symmetric: return {CounterexampleKind::symmetric, *a};
    case RelationKind::classical: return {CounterexampleKind::symmetric, Upset::certainty()};
    case RelationKind::supervaluational: return {CounterexampleKind::preservation, Upset::certainty()};
    case RelationKind::subvaluational: return {CounterexampleKind::preservation, Upset::positive()};
  }
  throw std::logic_error("bad relation kind");
}

// Re-checks an invalid verdict's model; valid verdicts pass trivially.
inline bool verify_verdict(const Verdict& v) {
  if (v.valid) return v.witness() != nullptr;
  const ProbModel* m = v.model();
  if (!m) return false;
  auto [kind, a] = counterexample_notion(v.relation, v.upset);
  return verify_counterexample(*m, v.argument, a, kind);
}

namespace detail {

inline Verdict valid_verdict(RelationKind k, const Argument& arg, const std::optional<Upset>& a,
                             ValidityWitness w) {
  return Verdict{true, k, a, arg, std::move(w)};
}

inline Verdict invalid_verdict(RelationKind k, const Argument& arg, const std::optional<Upset>& a, ProbModel m) {
  Verdict v{false, k, a, arg, std::move(m)};
  if (!verify_verdict(v)) {
    throw std::logic_error("counterexample for " + to_string(arg) + " failed verification");
  }
  return v;
}

inline ValidityWitness lp_witness(std::optional<Rational> value, std::string rule) {
  return {ValidityWitness::Kind::lp_optimum, std::move(value), std::move(rule)};
}

inline ValidityWitness limit_witness(std::string rule) {
  return {ValidityWitness::Kind::limit_theorem, std::nullopt, std::move(rule)};
}

}  // namespace detail

struct MaxSat {
  Rational value;
  ProbModel model;  // gives every member probability >= value
};

// Largest t such that one distribution gives every member probability >= t.
// The empty set gets 1.
inline MaxSat maxsat(const FormulaSet& g, const Limits& limits = {}) {
  auto at = state_atoms(g);
  check_atom_cap(at.size(), limits);
  if (g.empty()) return {Rational(1), point_mass(at, 0)};
  const std::uint64_t states = std::uint64_t{1} << at.size();
  std::vector<ProbabilityBound> bounds;
  for (const auto& f : g) bounds.push_back({f, Relation::ge, Rational(0)});
  auto rows = probability_constraints(bounds, at, limits, 1);
  for (std::size_t i = 0; i < g.size(); ++i) rows[i].coefficients[states] = -1;
  std::vector<Rational> objective(states + 1, Rational(0));
  objective[states] = 1;
  auto out = solve(objective, Sense::maximize, rows);
  if (!out.optimal()) throw std::logic_error("maxsat program is always feasible and bounded");
  std::vector<Rational> masses(out.witness.begin(), out.witness.begin() + static_cast<std::ptrdiff_t>(states));
  return {out.value, from_witness(masses, at)};
}

struct Satisfiability {
  bool satisfiable = false;
  Rational maxsat;
  ProbModel model;  // maxsat witness; puts every member in the upset when satisfiable
};

inline Satisfiability alpha_satisfiable(const FormulaSet& g, const Upset& a, const Limits& limits = {}) {
  auto ms = maxsat(g, limits);
  bool sat = a.contains(ms.value);
  return {sat, ms.value, std::move(ms.model)};
}

struct Tautologousness {
  bool tautologous = false;
  Rational negation_maxsat;  // maxsat of the negated set
  // When not tautologous: a model giving every member a probability outside
  // the upset.
  std::optional<ProbModel> counter_model;
};

inline Tautologousness alpha_tautologous(const FormulaSet& d, const Upset& a, const Limits& limits = {}) {
  auto s = alpha_satisfiable(negate_set(d), dual(a), limits);
  Tautologousness out{!s.satisfiable, s.maxsat, std::nullopt};
  if (s.satisfiable) out.counter_model = std::move(s.model);
  return out;
}

inline Verdict material_valid(const Argument& arg, const Upset& a, const Limits& limits = {}) {
  auto at = state_atoms(arg);
  auto bad = classical_counterexample_state(arg, at, limits);
  if (!bad) {
    return detail::valid_verdict(RelationKind::material, arg, a,
                                 {ValidityWitness::Kind::classical_tautology, std::nullopt, "conditional is a tautology"});
  }
  return detail::invalid_verdict(RelationKind::material, arg, a, point_mass(at, *bad));
}

namespace detail {

// Model giving each listed group positive mass: one state from each nonempty
// candidate set, uniformly. Falls back to `fallback` when there are none.
inline ProbModel spread_over(const std::vector<std::string>& at, const std::vector<std::uint64_t>& picks,
                             std::uint64_t fallback) {
  if (picks.empty()) return point_mass(at, fallback);
  return uniform_over(at, picks);
}

inline Verdict preservation_lp(const Argument& arg, const Upset& a, const std::vector<std::string>& at,
                               const Limits& limits) {
  const Rational& x = a.threshold();
  const bool closed = !a.is_open();
  const bool feasibility_only = closed ? arg.conclusions.empty() : arg.premises.empty();
  const std::uint64_t states = std::uint64_t{1} << at.size();

  std::vector<ProbabilityBound> bounds;
  for (const auto& g : arg.premises) bounds.push_back({g, Relation::ge, x});
  for (const auto& d : arg.conclusions) bounds.push_back({d, Relation::le, x});
  auto rows = probability_constraints(bounds, at, limits, feasibility_only ? 0 : 1);

  LPOutcome out;
  if (feasibility_only) {
    out = feasible_point(states, rows);
  } else {
    // Closed: p(d) + eps <= x. Open: p(g) - eps >= x.
    const std::size_t first = closed ? arg.premises.size() : 0;
    const std::size_t count = closed ? arg.conclusions.size() : arg.premises.size();
    for (std::size_t i = first; i < first + count; ++i) rows[i].coefficients[states] = closed ? 1 : -1;
    std::vector<Rational> objective(states + 1, Rational(0));
    objective[states] = 1;
    out = solve(objective, Sense::maximize, rows);
    if (out.status == LPStatus::unbounded) throw std::logic_error("epsilon program unbounded");
  }

  if (out.status == LPStatus::infeasible) {
    return valid_verdict(RelationKind::preservation, arg, a, lp_witness(std::nullopt, "infeasible"));
  }
  if (!feasibility_only && sgn(out.value) <= 0) {
    return valid_verdict(RelationKind::preservation, arg, a, lp_witness(out.value, "epsilon"));
  }
  std::vector<Rational> masses(out.witness.begin(), out.witness.begin() + static_cast<std::ptrdiff_t>(states));
  return invalid_verdict(RelationKind::preservation, arg, a, from_witness(masses, at));
}

}  // namespace detail

inline Verdict preservation_valid(const Argument& arg, const Upset& a, const DecideOptions& opts = {}) {
  auto at = state_atoms(arg);
  check_atom_cap(at.size(), opts.limits);
  if (opts.use_characterizations && a.is_certainty()) {
    if (sv_valid(arg, opts.limits)) {
      return detail::valid_verdict(RelationKind::preservation, arg, a, detail::limit_witness("supervaluationist"));
    }
    // Premises all true on `gamma`; each conclusion fails somewhere in it.
    StateSet gamma = joint_denotation(arg.premises, at, opts.limits);
    std::vector<std::uint64_t> picks;
    for (const auto& d : arg.conclusions) {
      picks.push_back(*(gamma & denotation(d, at, opts.limits).complement()).first());
    }
    return detail::invalid_verdict(RelationKind::preservation, arg, a, detail::spread_over(at, picks, *gamma.first()));
  }
  if (opts.use_characterizations && a.is_positive()) {
    if (sub_valid(arg, opts.limits)) {
      return detail::valid_verdict(RelationKind::preservation, arg, a, detail::limit_witness("subvaluationist"));
    }
    // Conclusions all false on `low`; each premise holds somewhere in it.
    StateSet low = any_denotation(arg.conclusions, at, opts.limits).complement();
    std::vector<std::uint64_t> picks;
    for (const auto& g : arg.premises) {
      picks.push_back(*(low & denotation(g, at, opts.limits)).first());
    }
    return detail::invalid_verdict(RelationKind::preservation, arg, a, detail::spread_over(at, picks, *low.first()));
  }
  return detail::preservation_lp(arg, a, at, opts.limits);
}

inline Verdict symmetric_valid(const Argument& arg, const Upset& a, const DecideOptions& opts = {}) {
  auto at = state_atoms(arg);
  check_atom_cap(at.size(), opts.limits);
  if (opts.use_characterizations && a.is_certainty()) {
    auto bad = classical_counterexample_state(arg, at, opts.limits);
    if (!bad) return detail::valid_verdict(RelationKind::symmetric, arg, a, detail::limit_witness("classical"));
    return detail::invalid_verdict(RelationKind::symmetric, arg, a, point_mass(at, *bad));
  }
  if (opts.use_characterizations && a.is_positive()) {
    std::vector<std::uint64_t> picks;
    for (const auto& g : arg.premises) {
      auto w = denotation(g, at, opts.limits).first();
      if (!w) {
        return detail::valid_verdict(RelationKind::symmetric, arg, a,
                                     detail::limit_witness("contradictory premise " + to_string(g)));
      }
      picks.push_back(*w);
    }
    for (const auto& d : arg.conclusions) {
      auto w = denotation(d, at, opts.limits).complement().first();
      if (!w) {
        return detail::valid_verdict(RelationKind::symmetric, arg, a,
                                     detail::limit_witness("tautologous conclusion " + to_string(d)));
      }
      picks.push_back(*w);
    }
    return detail::invalid_verdict(RelationKind::symmetric, arg, a, detail::spread_over(at, picks, 0));
  }
  auto s = alpha_satisfiable(set_union(arg.premises, negate_set(arg.conclusions)), a, opts.limits);
  if (!s.satisfiable) {
    return detail::valid_verdict(RelationKind::symmetric, arg, a, detail::lp_witness(s.maxsat, "maxsat"));
  }
  return detail::invalid_verdict(RelationKind::symmetric, arg, a, std::move(s.model));
}

inline Verdict decide(const Argument& arg, const std::optional<Upset>& a, RelationKind kind,
                      const DecideOptions& opts = {}) {
  if (needs_upset(kind) && !a) throw std::invalid_argument(to_string(kind) + " consequence needs an upset");
  if (!needs_upset(kind) && a) throw std::invalid_argument(to_string(kind) + " consequence takes no upset");
  switch (kind) {
    case RelationKind::material: return material_valid(arg, *a, opts.limits);
    case RelationKind::preservation: return preservation_valid(arg, *a, opts);
    case RelationKind::symmetric: return symmetric_valid(arg, *a, opts);
    case RelationKind::classical: {
      DecideOptions o = opts;
      o.use_characterizations = true;
      Verdict v = symmetric_valid(arg, Upset::certainty(), o);
      v.relation = kind;
      v.upset.reset();
      if (v.valid) v.certificate = ValidityWitness{ValidityWitness::Kind::classical_tautology, std::nullopt, "classical"};
      return v;
    }
    case RelationKind::supervaluational:
    case RelationKind::subvaluational: {
      DecideOptions o = opts;
      o.use_characterizations = true;
      Verdict v = preservation_valid(
          arg, kind == RelationKind::supervaluational ? Upset::certainty() : Upset::positive(), o);
      v.relation = kind;
      v.upset.reset();
      return v;
    }
  }
  throw std::logic_error("bad relation kind");
}

}  // namespace probcons
