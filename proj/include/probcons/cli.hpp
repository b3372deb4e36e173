#pragma once

// Command-line front end. run() takes the arguments after the program name
// and explicit streams, and returns the process exit code:
//   0  query answered (valid or invalid alike); --verify accepted
//   1  --verify rejected the document
//   2  usage or parse error
//   3  atom cap exceeded
//   4  internal error (a certificate failed its own check)

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "probcons/analysis.hpp"
#include "probcons/consequence.hpp"
#include "probcons/parser.hpp"
#include "probcons/serialize.hpp"

namespace probcons::cli {

enum ExitCode : int { kOk = 0, kRejected = 1, kUsage = 2, kResource = 3, kInternal = 4 };

namespace detail {

inline std::string show(const Rational& r) {
  if (r.get_den() == 1) return to_string(r);
  return to_string(r) + " (" + to_decimal(r) + ")";
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Non-blank, non-comment lines of a stream.
inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

inline std::string human_model(const ProbModel& m, const Argument* arg) {
  std::string out = "model over atoms";
  if (m.atoms().empty()) out += " (none)";
  for (const auto& a : m.atoms()) out += " " + a;
  out += "\n";
  std::vector<std::vector<std::string>> cells{{"  state", "mass"}};
  for (const auto& [w, mass] : m.masses()) {
    std::string label = state_label(m.atoms(), w);
    cells.push_back({"  " + (label.empty() ? std::string("(all false)") : label), show(mass)});
  }
  out += format_table(cells);
  if (arg) {
    std::vector<std::vector<std::string>> probs{{"  role", "formula", "probability"}};
    for (const auto& g : arg->premises) probs.push_back({"  premise", to_string(g), show(probability(m, g))});
    for (const auto& d : arg->conclusions) probs.push_back({"  conclusion", to_string(d), show(probability(m, d))});
    out += format_table(probs);
  }
  return out;
}

inline std::string describe_target(const Verdict& v) {
  std::string s = to_string(v.relation) + " valid";
  if (v.upset) s += " at " + to_string(*v.upset);
  return s;
}

inline std::string human_verdict(const Verdict& v) {
  std::string out = std::string(v.valid ? "valid" : "invalid") + ": " + to_string(v.argument) + " is " +
                    (v.valid ? "" : "not ") + describe_target(v) + "\n";
  if (const ValidityWitness* w = v.witness()) {
    out += "certificate: " + to_string(w->kind);
    if (!w->rule.empty()) out += " (" + w->rule + ")";
    if (w->value) out += " value " + show(*w->value);
    out += "\n";
  } else {
    out += "counterexample " + human_model(*v.model(), &v.argument);
  }
  return out;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  DecideOptions opts;
};

// Runs one query per input, keeping the most severe exit code.
template <typename F>
int for_each_query(Context& cx, const std::vector<std::string>& inputs, F&& body) {
  int code = kOk;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::string where = inputs.size() > 1 ? "query " + std::to_string(i + 1) + ": " : "";
    try {
      body(inputs[i]);
    } catch (const ParseError& e) {
      cx.err << "error: " << where << "parse error: " << e.what() << "\n";
      code = std::max<int>(code, kUsage);
    } catch (const ResourceLimitError& e) {
      cx.err << "error: " << where << e.what() << "\n";
      code = std::max<int>(code, kResource);
    } catch (const std::logic_error& e) {
      // invalid_argument and length_error derive from logic_error but are
      // input problems, not internal faults.
      bool input = dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::length_error*>(&e) ||
                   dynamic_cast<const std::out_of_range*>(&e);
      cx.err << "error: " << where << e.what() << "\n";
      code = std::max<int>(code, input ? kUsage : kInternal);
    } catch (const std::exception& e) {
      cx.err << "error: " << where << e.what() << "\n";
      code = std::max<int>(code, kUsage);
    }
  }
  return code;
}

inline std::vector<std::string> inputs_or_stdin(Context& cx, const std::vector<std::string>& given) {
  if (!given.empty()) return given;
  return read_lines(cx.in);
}

inline std::optional<Upset> upset_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_upset(text);
}

inline int verify_file(Context& cx, const std::string& path) {
  std::string content;
  if (path == "-") {
    std::stringstream ss;
    ss << cx.in.rdbuf();
    content = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) {
      cx.err << "error: cannot open " << path << "\n";
      return kUsage;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    content = ss.str();
  }
  std::vector<Json> docs;
  try {
    if (Json::accept(content)) {
      docs.push_back(Json::parse(content));
    } else {
      std::istringstream lines(content);
      for (const auto& line : read_lines(lines)) docs.push_back(Json::parse(line));
    }
  } catch (const std::exception& e) {
    cx.err << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  }
  if (docs.empty()) {
    cx.err << "error: nothing to verify\n";
    return kUsage;
  }
  int code = kOk;
  for (const auto& d : docs) {
    try {
      auto r = verify_json(d, cx.opts);
      cx.out << (r.ok ? "verified: " : "rejected: ") << r.reason << "\n";
      if (!r.ok) code = std::max<int>(code, kRejected);
    } catch (const ResourceLimitError& e) {
      cx.err << "error: " << e.what() << "\n";
      code = std::max<int>(code, kResource);
    } catch (const std::exception& e) {
      cx.out << "rejected: " << e.what() << "\n";
      code = std::max<int>(code, kRejected);
    }
  }
  return code;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide material, preservation and symmetric probabilistic consequence", "probcons"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  unsigned atom_cap = kDefaultAtomCap;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--atom-cap", atom_cap, "Maximum atoms per query")->check(CLI::Range(1U, kMaxAtomCap));

  // check / counterexample
  std::string relation, upset_text, verify_path;
  std::vector<std::string> queries;
  auto add_query_options = [&](CLI::App* sub) {
    sub->add_option("--relation", relation, "material|preservation|symmetric|classical|sv|sub");
    sub->add_option("--upset", upset_text, "Upset such as \"[2/3,1]\", \"(7/10,1]\", \"{1}\"");
    sub->add_option("--verify", verify_path, "Re-check a JSON verdict from FILE ('-' for stdin)");
    sub->add_option("argument", queries, "Argument \"g1, g2 |- d1, d2\"; read from stdin when absent");
  };
  CLI::App* check = app.add_subcommand("check", "Decide an argument and print the verdict");
  add_query_options(check);
  CLI::App* cex = app.add_subcommand("counterexample", "Print a counterexample model, or VALID");
  add_query_options(cex);

  CLI::App* maxsat_cmd = app.add_subcommand("maxsat", "Largest t with every formula at probability >= t");
  maxsat_cmd->add_option("formulas", queries, "Comma-separated formulas; read from stdin when absent");

  CLI::App* classify = app.add_subcommand("classify", "Sufficient conditions for preservation invalidity");
  classify->add_option("--upset", upset_text)->required();
  classify->add_option("argument", queries);

  std::string against_text;
  bool witnesses = false;
  CLI::App* compare = app.add_subcommand("compare", "Compare one relation at two upsets over a corpus");
  compare->add_option("--relation", relation)->default_val("preservation");
  compare->add_option("--upset", upset_text)->required();
  compare->add_option("--against", against_text, "Second upset")->required();
  compare->add_flag("--witnesses", witnesses, "Add the fixture arguments separating [x,1] from (x,1]");
  compare->add_option("arguments", queries);

  std::string fixture_kind;
  std::size_t fx_n = 0, fx_m = 0;
  CLI::App* fixtures = app.add_subcommand("fixtures", "Print a fixture family");
  fixtures->add_option("kind", fixture_kind)->required()->check(CLI::IsMember({"pairwise", "rational", "ci", "mp"}));
  fixtures->add_option("--n", fx_n);
  fixtures->add_option("--m", fx_m);

  ProbeOptions probe_opts;
  CLI::App* probe = app.add_subcommand("probe", "Random search for preservation-valid arguments meeting the "
                                                 "Set-Set invalidity conjecture's hypotheses");
  probe->add_option("--atoms", probe_opts.atom_budget)->check(CLI::Range(1, 8));
  probe->add_option("--trials", probe_opts.trials);
  probe->add_option("--seed", probe_opts.seed);
  probe->add_option("--max-denominator", probe_opts.max_denominator)->check(CLI::Range(2L, 1000L));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  detail::Context cx{in, out, err, format == "json", {}};
  cx.opts.limits.atom_cap = atom_cap;
  probe_opts.limits = cx.opts.limits;

  auto emit = [&](const Json& j, const std::string& human) {
    if (cx.json) out << j.dump() << "\n";
    else out << human;
  };

  if (check->parsed() || cex->parsed()) {
    if (!verify_path.empty()) return detail::verify_file(cx, verify_path);
    if (relation.empty()) {
      err << "error: --relation is required\n";
      return kUsage;
    }
    RelationKind kind;
    std::optional<Upset> a;
    try {
      kind = parse_relation(relation);
      a = detail::upset_option(upset_text);
      if (needs_upset(kind) && !a) throw std::invalid_argument(relation + " consequence needs --upset");
      if (!needs_upset(kind) && a) throw std::invalid_argument(relation + " consequence takes no --upset");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    bool only_model = cex->parsed();
    return detail::for_each_query(cx, detail::inputs_or_stdin(cx, queries), [&](const std::string& q) {
      Verdict v = decide(parse_argument(q), a, kind, cx.opts);
      if (only_model && !cx.json) {
        out << (v.valid ? std::string("VALID\n") : detail::human_model(*v.model(), &v.argument));
      } else {
        emit(to_json(v), detail::human_verdict(v));
      }
    });
  }

  if (maxsat_cmd->parsed()) {
    return detail::for_each_query(cx, detail::inputs_or_stdin(cx, queries), [&](const std::string& q) {
      FormulaSet g = parse_formula_list(q);
      auto ms = maxsat(g, cx.opts.limits);
      emit(to_json(ms, g), to_string(ms.value) + "\n");
    });
  }

  if (classify->parsed()) {
    std::optional<Upset> a;
    try {
      a = parse_upset(upset_text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    return detail::for_each_query(cx, detail::inputs_or_stdin(cx, queries), [&](const std::string& q) {
      Argument arg = parse_argument(q);
      auto r = classify_preservation_invalidity(arg, *a, cx.opts.limits);
      std::string h = to_string(arg) + " at " + to_string(*a) + "\n";
      std::string rules;
      for (const auto& s : r.rules()) rules += (rules.empty() ? "" : ", ") + s;
      h += "  rules: " + rules + "\n";
      h += "  guaranteed invalid for: " + r.guaranteed_invalid_for() + "\n";
      emit(to_json(r), h);
    });
  }

  if (compare->parsed()) {
    std::vector<std::string> lines = queries;
    if (lines.empty() && !witnesses) lines = detail::read_lines(in);
    std::vector<std::string> wrapped{""};
    return detail::for_each_query(cx, wrapped, [&](const std::string&) {
      RelationKind kind = parse_relation(relation);
      Upset a = parse_upset(upset_text);
      Upset b = parse_upset(against_text);
      std::vector<Argument> corpus;
      for (const auto& l : lines) corpus.push_back(parse_argument(l));
      if (witnesses) {
        const Rational& x = a.threshold();
        if (x <= 0 || x >= 1) throw std::invalid_argument("--witnesses needs a threshold strictly between 0 and 1");
        auto n = static_cast<std::size_t>(x.get_num().get_ui());
        auto m = static_cast<std::size_t>(x.get_den().get_ui());
        for (auto& w : incomparability_witnesses(n, m, cx.opts.limits)) corpus.push_back(std::move(w));
      }
      auto r = compare_relations(corpus, a, b, kind, cx.opts);
      emit(to_json(r), to_table(r));
    });
  }

  if (fixtures->parsed()) {
    std::vector<std::string> wrapped{""};
    return detail::for_each_query(cx, wrapped, [&](const std::string&) {
      Json j{{"fixture", fixture_kind}};
      std::string h;
      if (fixture_kind == "pairwise" || fixture_kind == "rational") {
        std::vector<Formula> fs;
        if (fixture_kind == "pairwise") {
          fs = fixture_pairwise_inconsistent(fx_m, cx.opts.limits);
        } else {
          auto set = fixture_rational_family(fx_n, fx_m, cx.opts.limits);
          fs = set.items();
        }
        Json list = Json::array();
        for (const auto& f : fs) {
          list.push_back(to_string(f));
          h += to_string(f) + "\n";
        }
        j["formulas"] = list;
      } else {
        Argument arg = fixture_kind == "ci" ? conjunction_introduction(fx_n) : modus_ponens_chain(fx_n);
        j["argument"] = to_string(arg);
        j["size"] = argument_size(arg);
        h = to_string(arg) + "\n";
      }
      emit(j, h);
    });
  }

  if (probe->parsed()) {
    std::vector<std::string> wrapped{""};
    return detail::for_each_query(cx, wrapped, [&](const std::string&) {
      auto r = probe_conjecture(probe_opts);
      emit(to_json(r), to_table(r));
    });
  }
  return kUsage;
}

}  // namespace probcons::cli
