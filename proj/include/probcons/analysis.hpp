#pragma once

// Structural analysis of arguments: minimally sufficient sets, sufficient
// conditions for preservation invalidity, argument size and the symmetric
// thresholds it controls, fixture families, relation comparison and a
// randomized probe of the open Set-Set invalidity conjecture.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "probcons/consequence.hpp"
#include "probcons/formula.hpp"
#include "probcons/semantics.hpp"
#include "probcons/upset.hpp"

namespace probcons {

namespace detail {

// Runs body(i) for i in [0, n) over a few threads. Callers write results to
// slot i only, so output order never depends on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::max(1U, std::min(std::thread::hardware_concurrency(), 8U));
  if (n < 2 || workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += workers) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline FormulaSet subset_of_mask(const FormulaSet& s, std::uint64_t mask) {
  FormulaSet out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((mask >> i) & 1U) out.insert(s[i]);
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kMaxEnumeratedSet = 20;

// The subset-minimal G' of G with G' |- phi classically, smallest first and
// in increasing index order within a size. Empty when G does not entail phi.
inline std::vector<FormulaSet> minimally_sufficient_sets(const FormulaSet& g, const Formula& phi,
                                                         const Limits& limits = {}) {
  if (g.size() > kMaxEnumeratedSet) {
    throw std::length_error("minimally sufficient sets: " + std::to_string(g.size()) + " formulas exceeds " +
                            std::to_string(kMaxEnumeratedSet));
  }
  FormulaSet all = g;
  all.insert(phi);
  auto at = state_atoms(all);
  std::vector<StateSet> den;
  for (const auto& f : g) den.push_back(denotation(f, at, limits));
  StateSet target = denotation(phi, at, limits);

  auto sufficient = [&](std::uint64_t mask) {
    StateSet s(at.size(), true);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if ((mask >> i) & 1U) s &= den[i];
    }
    return s.subset_of(target);
  };
  const std::uint64_t full = (std::uint64_t{1} << g.size()) - 1;
  if (!sufficient(full)) return {};

  std::vector<std::uint64_t> masks(full + 1);
  for (std::uint64_t m = 0; m <= full; ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::uint64_t> found;
  for (auto m : masks) {
    bool pruned = std::any_of(found.begin(), found.end(), [&](auto f) { return (f & m) == f; });
    if (!pruned && sufficient(m)) found.push_back(m);
  }
  std::vector<FormulaSet> out;
  for (auto m : found) out.push_back(detail::subset_of_mask(g, m));
  return out;
}

// Disjunction of the conjunctions of the minimally sufficient sets.
inline Formula ms_formula(const FormulaSet& g, const Formula& phi, const Limits& limits = {}) {
  FormulaSet disjuncts;
  for (const auto& s : minimally_sufficient_sets(g, phi, limits)) disjuncts.insert(big_conj(s));
  return big_disj(disjuncts);
}

struct SetFmlaCheck {
  bool upset_not_certainty = false;
  Rational premises_maxsat;
  bool premises_satisfiable = false;      // maxsat of the premises lies in the upset
  bool disjunction_not_tautology = false;
  bool no_premise_entails_disjunction = false;
  bool applies() const {
    return upset_not_certainty && premises_satisfiable && disjunction_not_tautology &&
           no_premise_entails_disjunction;
  }
};

struct FmlaSetCheck {
  bool upset_not_positive = false;
  Rational negated_conclusions_maxsat;
  bool conclusions_not_tautologous = false;  // that maxsat lies in the dual upset
  bool conjunction_satisfiable = false;
  bool no_conclusion_entailed = false;
  bool applies() const {
    return upset_not_positive && conclusions_not_tautologous && conjunction_satisfiable && no_conclusion_entailed;
  }
};

struct InvalidityReport {
  Upset upset;
  bool classically_invalid = false;
  SetFmlaCheck setfmla;
  FmlaSetCheck fmlaset;

  std::vector<std::string> rules() const {
    std::vector<std::string> out;
    if (classically_invalid) out.push_back("classically-invalid");
    if (setfmla.applies()) out.push_back("setfmla-condition");
    if (fmlaset.applies()) out.push_back("fmlaset-condition");
    if (out.empty()) out.push_back("none");
    return out;
  }
  bool determined() const { return classically_invalid || setfmla.applies() || fmlaset.applies(); }

  // Upsets for which invalidity is guaranteed by the rules that fired.
  std::string guaranteed_invalid_for() const {
    if (classically_invalid) return "every upset";
    std::vector<std::string> parts;
    if (setfmla.applies()) {
      parts.push_back("every upset other than {1} containing " + to_string(setfmla.premises_maxsat));
    }
    if (fmlaset.applies()) {
      parts.push_back("every upset other than (0,1] excluding " +
                      to_string(Rational(1 - fmlaset.negated_conclusions_maxsat)));
    }
    if (parts.empty()) return "undetermined";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "; " + parts[i];
    return out;
  }
};

inline InvalidityReport classify_preservation_invalidity(const Argument& arg, const Upset& a,
                                                         const Limits& limits = {}) {
  auto at = state_atoms(arg);
  check_atom_cap(at.size(), limits);
  InvalidityReport r{a};
  r.classically_invalid = !classical_valid(arg, limits);

  const StateSet disj = any_denotation(arg.conclusions, at, limits);
  r.setfmla.upset_not_certainty = !a.is_certainty();
  r.setfmla.premises_maxsat = maxsat(arg.premises, limits).value;
  r.setfmla.premises_satisfiable = a.contains(r.setfmla.premises_maxsat);
  r.setfmla.disjunction_not_tautology = !disj.full();
  r.setfmla.no_premise_entails_disjunction = std::none_of(
      arg.premises.begin(), arg.premises.end(),
      [&](const Formula& g) { return denotation(g, at, limits).subset_of(disj); });

  const StateSet conj = joint_denotation(arg.premises, at, limits);
  r.fmlaset.upset_not_positive = !a.is_positive();
  auto taut = alpha_tautologous(arg.conclusions, a, limits);
  r.fmlaset.negated_conclusions_maxsat = taut.negation_maxsat;
  r.fmlaset.conclusions_not_tautologous = !taut.tautologous;
  r.fmlaset.conjunction_satisfiable = !conj.empty();
  r.fmlaset.no_conclusion_entailed = std::none_of(
      arg.conclusions.begin(), arg.conclusions.end(),
      [&](const Formula& d) { return conj.subset_of(denotation(d, at, limits)); });
  return r;
}

// |premises united with negated conclusions|, counted syntactically.
inline std::size_t argument_size(const Argument& arg) {
  return set_union(arg.premises, negate_set(arg.conclusions)).size();
}

// For a classically valid argument of size n: the upset ((n-1)/n, 1], at
// which it is symmetric valid. No bound otherwise.
inline std::optional<Upset> symmetric_upper_bound(const Argument& arg, const Limits& limits = {}) {
  if (!classical_valid(arg, limits)) return std::nullopt;
  auto n = static_cast<long>(argument_size(arg));
  return Upset::open(make_rational(n - 1, n));
}

class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(const std::string& what, std::optional<Argument> offending = std::nullopt)
      : std::invalid_argument(what), offending_(std::move(offending)) {}
  const std::optional<Argument>& offending() const { return offending_; }

 private:
  std::optional<Argument> offending_;
};

namespace detail {

// Smallest classically valid proper subargument, if there is one. Validity
// is monotone, so it suffices to try dropping a single formula first.
inline std::optional<Argument> valid_proper_subargument(const Argument& arg, const Limits& limits) {
  const std::size_t ng = arg.premises.size();
  const std::size_t nd = arg.conclusions.size();
  const std::size_t total = ng + nd;
  std::optional<Argument> drop_one;
  for (std::size_t k = 0; k < total && !drop_one; ++k) {
    const std::uint64_t mask = ((std::uint64_t{1} << total) - 1) & ~(std::uint64_t{1} << k);
    Argument sub{subset_of_mask(arg.premises, mask), subset_of_mask(arg.conclusions, mask >> ng)};
    if (classical_valid(sub, limits)) drop_one = std::move(sub);
  }
  if (!drop_one || total > kMaxEnumeratedSet) return drop_one;
  const std::uint64_t full = (std::uint64_t{1} << total) - 1;
  for (int size = 0; size < static_cast<int>(total); ++size) {
    for (std::uint64_t mask = 0; mask < full; ++mask) {
      if (std::popcount(mask) != size) continue;
      Argument sub{subset_of_mask(arg.premises, mask), subset_of_mask(arg.conclusions, mask >> ng)};
      if (classical_valid(sub, limits)) return sub;
    }
  }
  return drop_one;
}

}  // namespace detail

// (n-1)/n for a classically valid argument of size n none of whose proper
// subarguments is classically valid; checked against maxsat of the
// premises plus negated conclusions.
inline Rational minimal_argument_threshold(const Argument& arg, const Limits& limits = {}) {
  if (!classical_valid(arg, limits)) {
    throw PreconditionError("argument " + to_string(arg) + " is not classically valid");
  }
  if (auto sub = detail::valid_proper_subargument(arg, limits)) {
    throw PreconditionError("proper subargument " + to_string(*sub) + " is already classically valid", *sub);
  }
  auto n = static_cast<long>(argument_size(arg));
  Rational threshold = make_rational(n - 1, n);
  Rational check = maxsat(set_union(arg.premises, negate_set(arg.conclusions)), limits).value;
  if (check != threshold) {
    throw std::logic_error("maxsat " + to_string(check) + " disagrees with size threshold " + to_string(threshold));
  }
  return threshold;
}

// ---- fixtures ----

// p, q, r, ... z, then a, b, ... o.
inline std::string fixture_atom(std::size_t i) {
  static constexpr std::string_view kLetters = "pqrstuvwxyzabcdefghijklmno";
  if (i >= kLetters.size()) throw std::out_of_range("fixture atom index " + std::to_string(i));
  return std::string(1, kLetters[i]);
}

// m pairwise inconsistent, individually satisfiable state descriptions over
// max(1, ceil(log2 m)) atoms, in the order p&q, p&~q, ~p&q, ~p&~q, ...
inline std::vector<Formula> fixture_pairwise_inconsistent(std::size_t m, const Limits& limits = {}) {
  if (m < 1) throw std::invalid_argument("pairwise-inconsistent fixture needs m >= 1");
  std::size_t k = std::max<std::size_t>(1, std::bit_width(m - 1));
  check_atom_cap(k, limits);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < m; ++i) {
    FormulaSet lits;
    for (std::size_t j = 0; j < k; ++j) {
      Formula a = atom(fixture_atom(j));
      lits.insert(((i >> (k - 1 - j)) & 1U) ? neg(a) : a);
    }
    out.push_back(big_conj(lits));
  }
  return out;
}

inline constexpr std::uint64_t kMaxFamilySize = 5000;

// All n-ary disjunctions of the m pairwise inconsistent fixtures, in
// lexicographic index order; maxsat is exactly n/m.
inline FormulaSet fixture_rational_family(std::size_t n, std::size_t m, const Limits& limits = {}) {
  if (n == 0 || n >= m) throw std::invalid_argument("rational family needs 0 < n < m");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count = count * (m - i) / (i + 1);
    if (count > kMaxFamilySize) throw std::length_error("rational family too large");
  }
  auto phi = fixture_pairwise_inconsistent(m, limits);
  FormulaSet out;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    Formula f = phi[idx[0]];
    for (std::size_t i = 1; i < n; ++i) f = disj(f, phi[idx[i]]);
    out.insert(f);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline Formula numbered_atom(std::size_t i) { return atom("p" + std::to_string(i)); }

// p1, ..., pn |- p1 & ... & pn
inline Argument conjunction_introduction(std::size_t n) {
  Argument arg;
  for (std::size_t i = 1; i <= n; ++i) arg.premises.insert(numbered_atom(i));
  arg.conclusions.insert(big_conj(arg.premises));
  return arg;
}

// p1, p1 -> p2, ..., p(n-1) -> pn |- pn
inline Argument modus_ponens_chain(std::size_t n) {
  if (n < 1) throw std::invalid_argument("modus ponens chain needs n >= 1");
  Argument arg;
  arg.premises.insert(numbered_atom(1));
  for (std::size_t i = 1; i < n; ++i) arg.premises.insert(implies(numbered_atom(i), numbered_atom(i + 1)));
  arg.conclusions.insert(numbered_atom(n));
  return arg;
}

// ---- comparison ----

struct ComparisonRow {
  Argument argument;
  bool valid_a = false;
  bool valid_b = false;
};

struct ComparisonReport {
  RelationKind relation = RelationKind::preservation;
  Upset a = Upset::certainty();
  Upset b = Upset::certainty();
  std::vector<ComparisonRow> rows;
  std::size_t a_only = 0, b_only = 0, both = 0, neither = 0;

  bool incomparable() const { return a_only > 0 && b_only > 0; }
};

inline ComparisonReport compare_relations(const std::vector<Argument>& args, const Upset& a, const Upset& b,
                                          RelationKind kind, const DecideOptions& opts = {}) {
  if (!needs_upset(kind)) throw std::invalid_argument("comparison needs a probabilistic relation");
  ComparisonReport r{kind, a, b, {}};
  r.rows.resize(args.size());
  detail::parallel_for(args.size(), [&](std::size_t i) {
    r.rows[i] = {args[i], decide(args[i], a, kind, opts).valid, decide(args[i], b, kind, opts).valid};
  });
  for (const auto& row : r.rows) {
    if (row.valid_a && row.valid_b) ++r.both;
    else if (row.valid_a) ++r.a_only;
    else if (row.valid_b) ++r.b_only;
    else ++r.neither;
  }
  return r;
}

// Arguments separating [x,1] from (x,1] for rational 0 < x < 1 (x = n/m):
// the rational family with no conclusions is valid only at (x,1], and the
// negated family for 1 - x with no premises is valid only at [x,1].
inline std::vector<Argument> incomparability_witnesses(std::size_t n, std::size_t m, const Limits& limits = {}) {
  Argument open_only{fixture_rational_family(n, m, limits), {}};
  Argument closed_only{{}, negate_set(fixture_rational_family(m - n, m, limits))};
  return {open_only, closed_only};
}

inline std::string format_table(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    out += line + "\n";
  }
  return out;
}

inline std::string to_table(const ComparisonReport& r) {
  std::vector<std::vector<std::string>> cells{{"argument", to_string(r.a), to_string(r.b)}};
  for (const auto& row : r.rows) {
    cells.push_back({to_string(row.argument), row.valid_a ? "valid" : "invalid", row.valid_b ? "valid" : "invalid"});
  }
  std::string out = to_string(r.relation) + " consequence\n" + format_table(cells);
  out += "a-only " + std::to_string(r.a_only) + ", b-only " + std::to_string(r.b_only) + ", both " +
         std::to_string(r.both) + ", neither " + std::to_string(r.neither) + "\n";
  return out;
}

// ---- conjecture probe ----

inline Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atom_names, int depth) {
  std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(atom_names.size()) - 1);
  if (depth <= 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    return atom(atom_names[pick_atom(rng)]);
  }
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return neg(random_formula(rng, atom_names, depth - 1));
    case 1: {
      Formula l = random_formula(rng, atom_names, depth - 1);
      return disj(l, random_formula(rng, atom_names, depth - 1));
    }
    case 2: {
      Formula l = random_formula(rng, atom_names, depth - 1);
      return conj(l, random_formula(rng, atom_names, depth - 1));
    }
    default: {
      Formula l = random_formula(rng, atom_names, depth - 1);
      return implies(l, random_formula(rng, atom_names, depth - 1));
    }
  }
}

// Hypotheses of the conjecture: a non-extreme upset, premises satisfiable at
// it, conclusions not tautologous at it, and no premise classically entailing
// any conclusion.
struct ConjectureHypotheses {
  bool non_extreme = false;
  bool premises_satisfiable = false;
  bool conclusions_not_tautologous = false;
  bool no_pair_entailment = false;
  bool hold() const { return non_extreme && premises_satisfiable && conclusions_not_tautologous && no_pair_entailment; }
};

inline ConjectureHypotheses conjecture_hypotheses(const Argument& arg, const Upset& a, const Limits& limits = {}) {
  ConjectureHypotheses h;
  h.non_extreme = !a.is_extreme();
  h.premises_satisfiable = alpha_satisfiable(arg.premises, a, limits).satisfiable;
  h.conclusions_not_tautologous = !alpha_tautologous(arg.conclusions, a, limits).tautologous;
  auto at = state_atoms(arg);
  h.no_pair_entailment = true;
  for (const auto& g : arg.premises) {
    StateSet dg = denotation(g, at, limits);
    for (const auto& d : arg.conclusions) {
      if (dg.subset_of(denotation(d, at, limits))) h.no_pair_entailment = false;
    }
  }
  return h;
}

struct ProbeInstance {
  Argument argument;
  Upset upset;
};

struct ProbeReport {
  std::size_t trials = 0;
  std::size_t eligible = 0;
  std::size_t confirmations = 0;                // eligible and invalid
  std::vector<ProbeInstance> refutations;       // eligible and valid
  std::uint64_t seed = 0;
};

struct ProbeOptions {
  std::size_t atom_budget = 3;
  long max_denominator = 12;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t max_side = 3;
  int depth = 2;
  Limits limits;
};

// Random rational threshold in (0,1) with denominator at most max_den, and a
// random closure.
inline Upset random_upset(std::mt19937_64& rng, long max_den) {
  if (max_den < 2) throw std::invalid_argument("denominator bound must be at least 2");
  long d = std::uniform_int_distribution<long>(2, max_den)(rng);
  long n = std::uniform_int_distribution<long>(1, d - 1)(rng);
  bool open = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  return Upset(make_rational(n, d), open ? Closure::open : Closure::closed);
}

inline ProbeReport probe_conjecture(const ProbeOptions& opt) {
  if (opt.atom_budget < 1) throw std::invalid_argument("atom budget must be positive");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < opt.atom_budget; ++i) names.push_back(fixture_atom(i));
  check_atom_cap(names.size(), opt.limits);

  struct Outcome {
    bool eligible = false;
    bool valid = false;
    std::optional<ProbeInstance> instance;
  };
  std::vector<Outcome> outcomes(opt.trials);
  detail::parallel_for(opt.trials, [&](std::size_t t) {
    std::seed_seq seq{opt.seed, static_cast<std::uint64_t>(t)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> side(0, opt.max_side);
    Argument arg;
    for (std::size_t i = side(rng); i > 0; --i) arg.premises.insert(random_formula(rng, names, opt.depth));
    for (std::size_t i = side(rng); i > 0; --i) arg.conclusions.insert(random_formula(rng, names, opt.depth));
    Upset a = random_upset(rng, opt.max_denominator);
    if (!conjecture_hypotheses(arg, a, opt.limits).hold()) return;
    DecideOptions d{opt.limits};
    bool valid = preservation_valid(arg, a, d).valid;
    outcomes[t] = {true, valid, ProbeInstance{arg, a}};
  });

  ProbeReport r;
  r.trials = opt.trials;
  r.seed = opt.seed;
  for (auto& o : outcomes) {
    if (!o.eligible) continue;
    ++r.eligible;
    if (o.valid) r.refutations.push_back(*o.instance);
    else ++r.confirmations;
  }
  return r;
}

inline std::string to_table(const ProbeReport& r) {
  std::vector<std::vector<std::string>> cells{
      {"trials", std::to_string(r.trials)},
      {"eligible", std::to_string(r.eligible)},
      {"confirmations", std::to_string(r.confirmations)},
      {"refutations", std::to_string(r.refutations.size())},
      {"seed", std::to_string(r.seed)}};
  std::string out = format_table(cells);
  for (const auto& inst : r.refutations) out += "refutation: " + to_string(inst.argument) + " at " + to_string(inst.upset) + "\n";
  return out;
}

}  // namespace probcons
