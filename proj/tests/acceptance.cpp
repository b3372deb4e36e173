// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Every invalid verdict produced here is re-checked with the oracle's own
// arithmetic, and every maxsat value is certified from both sides.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "probcons/analysis.hpp"
#include "probcons/parser.hpp"

using namespace probcons;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
Argument arg(const std::string& s) { return parse_argument(s); }

struct Audit {
  long verdicts = 0, maxsats = 0;
  std::vector<std::string> failures;
} audit;

oracle::Notion notion_of(CounterexampleKind k) {
  switch (k) {
    case CounterexampleKind::material: return oracle::Notion::material;
    case CounterexampleKind::preservation: return oracle::Notion::preservation;
    case CounterexampleKind::symmetric: return oracle::Notion::symmetric;
  }
  return oracle::Notion::material;
}

std::vector<Rational> dense(const ProbModel& m) {
  std::vector<Rational> out(std::size_t{1} << m.atoms().size(), Rational(0));
  for (const auto& [w, mass] : m.masses()) out[w] = mass;
  return out;
}

void audit_maxsat(const FormulaSet& g, const MaxSat& ms) {
  ++audit.maxsats;
  std::vector<Formula> items(g.begin(), g.end());
  auto masses = dense(ms.model);
  for (const auto& f : items) {
    if (oracle::probability(masses, ms.model.atoms(), f) < ms.value) {
      audit.failures.push_back("maxsat model misses " + to_string(ms.value) + " on " + to_string(g));
      return;
    }
  }
  if (!g.empty()) {
    std::vector<ProbabilityBound> bounds;
    for (const auto& f : items) bounds.push_back({f, Relation::ge, ms.value + q(1, 1000)});
    auto rows = probability_constraints(bounds, ms.model.atoms());
    if (feasible_point(std::size_t{1} << ms.model.atoms().size(), rows).status != LPStatus::infeasible) {
      audit.failures.push_back("maxsat " + to_string(ms.value) + " exceeded on " + to_string(g));
    }
  }
  if (ms.model.atoms().size() <= 2 && items.size() <= 5 && oracle::maxsat(items) != ms.value) {
    audit.failures.push_back("maxsat differs from vertex oracle on " + to_string(g));
  }
}

MaxSat checked_maxsat(const FormulaSet& g) {
  MaxSat ms = maxsat(g);
  audit_maxsat(g, ms);
  return ms;
}

Verdict checked(Verdict v) {
  ++audit.verdicts;
  if (const ProbModel* m = v.model()) {
    auto [kind, up] = counterexample_notion(v.relation, v.upset);
    bool lib = verify_counterexample(*m, v.argument, up, kind);
    bool ind = oracle::is_counterexample(dense(*m), m->atoms(), v.argument, up, notion_of(kind));
    if (!lib || !ind) audit.failures.push_back("counterexample rejected for " + to_string(v.argument));
  } else if (const ValidityWitness* w = v.witness(); w && w->rule == "maxsat") {
    FormulaSet g = set_union(v.argument.premises, negate_set(v.argument.conclusions));
    MaxSat ms = maxsat(g);
    audit_maxsat(g, ms);
    if (ms.value != *w->value) audit.failures.push_back("certificate value mismatch on " + to_string(v.argument));
  }
  return v;
}

bool pres(const Argument& a, const Upset& u, const DecideOptions& o = {}) {
  return checked(preservation_valid(a, u, o)).valid;
}
bool sym(const Argument& a, const Upset& u, const DecideOptions& o = {}) {
  return checked(symmetric_valid(a, u, o)).valid;
}
bool mat(const Argument& a, const Upset& u) { return checked(material_valid(a, u)).valid; }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failed = 0;

void criterion(int n, const std::string& name, double budget_ms, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = budget_ms <= 0 || ms < budget_ms;
  bool pass = r.ok && in_time;
  if (!pass) ++failed;
  std::printf("%s %d %s (%.0f ms%s)%s%s\n", pass ? "PASS" : "FAIL", n, name.c_str(), ms,
              in_time ? "" : ", over budget", r.detail.empty() ? "" : ": ", r.detail.c_str());
  std::fflush(stdout);
}

// Collects failures with a cap so a broken property does not flood output.
struct Tally {
  long cases = 0, failures = 0;
  std::string first;
  void check(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures++ == 0) first = what;
  }
  Outcome outcome() const {
    std::ostringstream s;
    s << cases << " cases, " << failures << " failures";
    if (failures) s << "; first: " << first;
    return {failures == 0, s.str()};
  }
};

// ---- criterion 3 corpus ----

std::vector<Argument> limit_corpus() {
  std::vector<Formula> pool;
  for (auto s : {"p", "q", "~p", "~q", "p & q", "p | q", "p -> q", "p & ~q", "~(p & q)", "~p & ~q", "p & ~p",
                 "p | ~p"}) {
    pool.push_back(parse_formula(s));
  }
  std::vector<FormulaSet> sides{FormulaSet{}};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    sides.push_back(FormulaSet{pool[i]});
    for (std::size_t j = i + 1; j < pool.size(); ++j) sides.push_back(FormulaSet{pool[i], pool[j]});
  }
  std::vector<Argument> out;
  for (const auto& g : sides) {
    for (const auto& d : sides) {
      if (g.empty() && d.empty()) continue;
      out.push_back(Argument{g, d});
    }
  }
  return out;
}

bool symmetric_positive_characterization(const Argument& a) {
  for (const auto& g : a.premises) {
    if (!oracle::satisfiable({g})) return true;
  }
  for (const auto& d : a.conclusions) {
    if (!oracle::satisfiable({neg(d)})) return true;
  }
  return false;
}

// Supervaluational (every_world) and subvaluational validity straight from
// the definition: for every nonempty set of valuations, if each premise
// holds on it then some conclusion does.
bool world_set_valid(const Argument& a, bool every_world) {
  auto at = oracle::atoms_of(a);
  const std::uint64_t n = std::uint64_t{1} << at.size();
  for (std::uint64_t set = 1; set < (std::uint64_t{1} << n); ++set) {
    auto holds = [&](const Formula& f) {
      for (std::uint64_t w = 0; w < n; ++w) {
        if (!((set >> w) & 1U)) continue;
        bool v = oracle::eval(f, oracle::valuation(at, w));
        if (every_world && !v) return false;
        if (!every_world && v) return true;
      }
      return every_world;
    };
    if (std::all_of(a.premises.begin(), a.premises.end(), holds) &&
        std::none_of(a.conclusions.begin(), a.conclusions.end(), holds)) {
      return false;
    }
  }
  return true;
}

// ---- criterion 9 helpers ----

struct CutCheck {
  std::size_t k = 0;
  bool left = false, right = false, conclusion = true;
  bool witnesses_failure() const { return k > 0 && left && right && !conclusion; }
};

CutCheck ci_cut(const Upset& u) {
  CutCheck c;
  for (std::size_t k = 2; k <= 12; ++k) {
    Argument ci = conjunction_introduction(k);
    if (sym(ci, u)) continue;
    c.k = k;
    c.conclusion = false;
    Formula phi = big_conj(conjunction_introduction(k - 1).premises);
    Argument left = ci, right = ci;
    left.conclusions.insert(phi);
    right.premises.insert(phi);
    c.left = sym(left, u);
    c.right = sym(right, u);
    return c;
  }
  return c;
}

}  // namespace

int main() {
  criterion(1, "die example", 1000, [] {
    Argument a = arg("p, q |- p & q");
    Upset u = parse_upset("(7/10,1]");
    Verdict v = checked(preservation_valid(a, u));
    if (v.valid || !verify_verdict(v)) return Outcome{false, "preservation verdict"};
    if (!sym(a, u)) return Outcome{false, "symmetric verdict"};
    return Outcome{};
  });

  criterion(2, "pairwise-incompatible triple", 1000, [] {
    FormulaSet triple = parse_formula_list("p & ~q, q & ~p, ~(p | q)");
    Rational v = checked_maxsat(triple).value;
    if (v != q(1, 3)) return Outcome{false, "maxsat " + to_string(v)};
    Argument a{triple, {}};
    if (!pres(a, parse_upset("[2/5,1]"))) return Outcome{false, "[2/5,1] should be valid"};
    if (pres(a, parse_upset("[3/10,1]"))) return Outcome{false, "[3/10,1] should be invalid"};
    return Outcome{};
  });

  criterion(3, "limit theorems on the exhaustive corpus", 30000, [] {
    auto corpus = limit_corpus();
    DecideOptions lp;
    lp.use_characterizations = false;
    std::vector<Upset> material_upsets{Upset::certainty(), parse_upset("[1/2,1]"), parse_upset("(1/3,1]")};
    Tally t;
    for (const auto& a : corpus) {
      std::string s = to_string(a);
      bool classical = oracle::classically_valid(a);
      for (const auto& u : material_upsets) t.check(mat(a, u) == classical, "material " + s + " " + to_string(u));
      t.check(pres(a, Upset::certainty(), lp) == world_set_valid(a, true), "preservation {1} " + s);
      t.check(pres(a, Upset::positive(), lp) == world_set_valid(a, false), "preservation (0,1] " + s);
      t.check(sym(a, Upset::certainty(), lp) == classical, "symmetric {1} " + s);
      t.check(sym(a, Upset::positive(), lp) == symmetric_positive_characterization(a), "symmetric (0,1] " + s);
    }
    return t.outcome();
  });

  criterion(4, "size thresholds for CI_n and MP_n", 5000, [] {
    Tally t;
    for (std::size_t n = 2; n <= 5; ++n) {
      Rational x = q(static_cast<long>(n), static_cast<long>(n + 1));
      for (const Argument& a : {conjunction_introduction(n), modus_ponens_chain(n)}) {
        std::string s = to_string(a);
        t.check(argument_size(a) == n + 1, "size of " + s);
        t.check(!sym(a, Upset::closed(x)), s + " valid at [x,1]");
        t.check(sym(a, Upset::open(x)), s + " invalid at (x,1]");
        t.check(minimal_argument_threshold(a) == x, "threshold of " + s);
        FormulaSet g = set_union(a.premises, negate_set(a.conclusions));
        t.check(checked_maxsat(g).value == x, "maxsat of " + s);
      }
    }
    return t.outcome();
  });

  criterion(5, "rational family", 5000, [] {
    Tally t;
    for (auto [n, m] : std::vector<std::pair<long, long>>{{1, 2}, {2, 3}, {1, 3}, {3, 4}, {2, 5}}) {
      FormulaSet fam = fixture_rational_family(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
      std::string s = std::to_string(n) + "/" + std::to_string(m);
      MaxSat ms = checked_maxsat(fam);
      t.check(ms.value == q(n, m), "maxsat for " + s);
      t.check(alpha_satisfiable(fam, Upset::closed(q(n, m))).satisfiable, "closed " + s);
      t.check(!alpha_satisfiable(fam, Upset::open(q(n, m))).satisfiable, "open " + s);
    }
    return t.outcome();
  });

  criterion(6, "incomparability witnesses", 5000, [] {
    Upset a = parse_upset("[2/3,1]"), b = parse_upset("(2/3,1]");
    auto report = compare_relations(incomparability_witnesses(2, 3), a, b, RelationKind::preservation);
    if (report.a_only < 1 || report.b_only < 1) return Outcome{false, "missing a one-sided witness"};
    // Recheck each row through the audited decider.
    for (const auto& row : report.rows) {
      if (pres(row.argument, a) != row.valid_a || pres(row.argument, b) != row.valid_b) {
        return Outcome{false, "row disagrees: " + to_string(row.argument)};
      }
    }
    return Outcome{true, std::to_string(report.a_only) + " a-only, " + std::to_string(report.b_only) + " b-only"};
  });

  criterion(7, "case studies", 2000, [] {
    Tally t;
    Argument first = arg("p, q | r |- p & q, r");
    for (auto s : {"{1}", "[1/2,1]", "(2/3,1]", "[9/10,1]"}) t.check(!pres(first, parse_upset(s)), to_string(first) + " " + s);
    Argument second = arg("p, q |- p & q, p & ~q");
    for (auto s : {"{1}", "(0,1]"}) t.check(pres(second, parse_upset(s)), to_string(second) + " " + s);
    for (auto s : {"[2/3,1]", "(1/2,1]"}) t.check(!pres(second, parse_upset(s)), to_string(second) + " " + s);
    for (auto s : {"[2/3,1]", "(1/2,1]", "[1/2,1]", "[9/10,1]", "(1/10,1]"}) {
      auto r = classify_preservation_invalidity(second, parse_upset(s));
      t.check(r.guaranteed_invalid_for() == "undetermined", std::string("classify at ") + s);
    }
    return t.outcome();
  });

  criterion(8, "lattice example", 2000, [] {
    Tally t;
    Argument a = arg("p, q, ~(p & q) |- r, ~r");
    t.check(pres(a, parse_upset("[1/2,1]")), "[1/2,1]");
    t.check(pres(a, parse_upset("(2/3,1]")), "(2/3,1]");
    t.check(!pres(a, parse_upset("[2/3,1]")), "[2/3,1]");
    t.check(!pres(a, parse_upset("(1/2,1]")), "(1/2,1]");
    return t.outcome();
  });

  criterion(9, "structural property suites", 60000, [] {
    constexpr int kCases = 1000;
    std::ostringstream detail;
    bool ok = true;
    auto suite = [&](const std::string& name, const std::function<void(std::mt19937_64&, Tally&)>& one,
                     unsigned seed) {
      auto t0 = std::chrono::steady_clock::now();
      std::mt19937_64 rng(seed);
      Tally t;
      while (t.cases < kCases) one(rng, t);
      Outcome o = t.outcome();
      ok = ok && o.ok;
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      std::printf("    %s %s: %s (%.0f ms)\n", o.ok ? "ok  " : "FAIL", name.c_str(), o.detail.c_str(), ms);
    };

    suite("negation swap", [](std::mt19937_64& rng, Tally& t) {
      Argument a = gen::argument(rng, 3, 2, 2);
      Formula phi = gen::formula(rng, 3, 2);
      Upset u = gen::upset(rng);
      Argument left = a, right = a;
      left.premises.insert(phi);
      right.conclusions.insert(neg(phi));
      Argument left2 = a, right2 = a;
      left2.conclusions.insert(phi);
      right2.premises.insert(neg(phi));
      t.check(sym(left, u) == sym(right, u) && sym(left2, u) == sym(right2, u), to_string(left) + " " + to_string(u));
    }, 901);

    suite("unsat reduction", [](std::mt19937_64& rng, Tally& t) {
      Argument a = gen::argument(rng, 2, 2, 3);
      Upset u = gen::upset(rng);
      FormulaSet g = set_union(a.premises, negate_set(a.conclusions));
      Rational v = g.empty() ? Rational(1) : oracle::maxsat({g.begin(), g.end()});
      checked_maxsat(g);
      t.check(sym(a, u) == !u.contains(v), to_string(a) + " " + to_string(u));
    }, 902);

    suite("monotonicity", [](std::mt19937_64& rng, Tally& t) {
      Argument a = gen::argument(rng, 3, 2, 2);
      Upset u = gen::upset(rng);
      Argument more = a;
      if (rng() % 2) more.premises.insert(gen::formula(rng, 3, 2));
      else more.conclusions.insert(gen::formula(rng, 3, 2));
      bool good = true;
      if (mat(a, u)) good = good && mat(more, u);
      if (pres(a, u)) good = good && pres(more, u);
      if (sym(a, u)) good = good && sym(more, u);
      t.check(good, to_string(a) + " -> " + to_string(more) + " " + to_string(u));
    }, 903);

    suite("reflexivity iff 1/2 not in the upset", [](std::mt19937_64& rng, Tally& t) {
      Formula phi = gen::formula(rng, 3, 2);
      std::vector<Formula> one{phi}, other{neg(phi)};
      if (!oracle::satisfiable(one) || !oracle::satisfiable(other)) return;
      Upset u = gen::upset(rng);
      t.check(sym(Argument{{phi}, {phi}}, u) == !u.contains(q(1, 2)), to_string(phi) + " " + to_string(u));
    }, 904);

    {
      // Every sampled upset with 1/2 excluded and not {1} must show the cut
      // failure built from the conjunction-introduction chain.
      std::map<std::string, CutCheck> cache;
      suite("CI-chain transitivity failure", [&cache](std::mt19937_64& rng, Tally& t) {
        Upset u = gen::upset(rng);
        if (u.contains(q(1, 2)) || u.is_certainty()) return;
        auto key = to_string(u);
        if (!cache.count(key)) cache[key] = ci_cut(u);
        const CutCheck& c = cache[key];
        t.check(c.witnesses_failure(), key + " (least invalid CI_k has k=" + std::to_string(c.k) +
                                           (c.right ? "" : ", cut premise with phi is invalid") + ")");
      }, 905);
      long with_two_thirds = 0, failing = 0;
      for (const auto& [key, c] : cache) {
        if (!c.witnesses_failure()) ++failing;
        if (parse_upset(key).contains(q(2, 3))) ++with_two_thirds;
      }
      std::printf("      %zu distinct upsets, %ld without a witness, %ld containing 2/3\n", cache.size(), failing,
                  with_two_thirds);
    }

    suite("weak paraconsistency/paracompleteness equivalence", [](std::mt19937_64& rng, Tally& t) {
      Upset u = gen::upset(rng);
      Formula phi = gen::formula(rng, 2, 1), psi = gen::formula(rng, 2, 1);
      bool half = u.contains(q(1, 2));
      bool pc = !sym(arg("p, ~p |- q"), u);
      bool pk = !sym(arg("q |- p, ~p"), u);
      bool refl = !sym(arg("p |- p"), u);
      bool explosion = sym(Argument{{phi, neg(phi)}, {psi}}, u);
      bool lem = sym(Argument{{psi}, {phi, neg(phi)}}, u);
      bool ok = pc == half && pk == half && refl == half;
      if (!half) ok = ok && explosion && lem;
      t.check(ok, to_string(u));
    }, 906);

    suite("sandwich containment", [](std::mt19937_64& rng, Tally& t) {
      Argument a = gen::argument(rng, 3, 2, 2);
      Upset u = gen::upset(rng);
      Upset d = dual(u);
      bool p = pres(a, u), s = sym(a, u), sd = sym(a, d);
      bool ok = u.subset_of(d) ? ((!sd || p) && (!p || s)) : (d.subset_of(u) && (!s || p) && (!p || sd));
      t.check(ok, to_string(a) + " " + to_string(u));
    }, 907);

    suite("exactly one weak property for preservation", [](std::mt19937_64& rng, Tally& t) {
      Upset u = gen::upset(rng);
      Formula phi = gen::formula(rng, 2, 2), psi = gen::formula(rng, 2, 2);
      bool paraconsistent = !pres(arg("p, ~p |- q"), u);
      bool paracomplete = !pres(arg("T |- p, ~p"), u);
      bool ok = paraconsistent != paracomplete;
      if (u.contains(q(1, 2))) ok = ok && paraconsistent && pres(Argument{{psi}, {phi, neg(phi)}}, u);
      else ok = ok && paracomplete && pres(Argument{{phi, neg(phi)}, {psi}}, u);
      t.check(ok, to_string(u) + " " + to_string(phi));
    }, 908);

    return Outcome{ok, ok ? "" : "see failing suites above"};
  });

  criterion(10, "certificate integrity", 0, [] {
    std::ostringstream s;
    s << audit.verdicts << " verdicts and " << audit.maxsats << " maxsat values audited, " << audit.failures.size()
      << " failures";
    if (!audit.failures.empty()) s << "; first: " << audit.failures.front();
    return Outcome{audit.failures.empty(), s.str()};
  });

  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
