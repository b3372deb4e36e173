#include <gtest/gtest.h>

#include <sstream>

#include "probcons/cli.hpp"

using namespace probcons;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

Json json_line(const std::string& s) { return Json::parse(s.substr(0, s.find('\n'))); }

}  // namespace

TEST(Cli, CheckDieExample) {
  auto r = run({"check", "--relation", "preservation", "--upset", "(7/10,1]", "p, q |- p & q"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("invalid: p, q |- p & q is not preservation valid at (7/10,1]", 0), 0U) << r.out;

  auto j = run({"--format", "json", "check", "--relation", "preservation", "--upset", "(7/10,1]", "p, q |- p & q"});
  ASSERT_EQ(j.code, 0);
  Json doc = json_line(j.out);
  EXPECT_FALSE(doc["valid"].get<bool>());
  EXPECT_EQ(doc["upset"], "(7/10,1]");
  EXPECT_EQ(doc["certificate"]["type"], "counterexample");
  for (const auto& p : doc["certificate"]["probabilities"]) {
    Rational v = parse_rational(p["probability"].get<std::string>());
    if (p["role"] == "premise") EXPECT_GT(v, make_rational(7, 10));
    else EXPECT_LE(v, make_rational(7, 10));
  }
  ProbModel m = model_from_json(doc["certificate"]["model"]);
  EXPECT_TRUE(verify_counterexample(m, parse_argument("p, q |- p & q"), parse_upset("(7/10,1]"),
                                    CounterexampleKind::preservation));
}

TEST(Cli, CheckSymmetricValid) {
  auto r = run({"check", "--relation", "symmetric", "--upset", "(7/10,1]", "p, q |- p & q"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("valid:", 0), 0U) << r.out;
  EXPECT_NE(r.out.find("2/3 (0.6667)"), std::string::npos) << r.out;
}

TEST(Cli, Maxsat) {
  auto r = run({"maxsat", "p & ~q, q & ~p, ~(p | q)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/3\n");
  auto j = run({"--format", "json", "maxsat", "p, ~p"});
  EXPECT_EQ(json_line(j.out)["maxsat"], "1/2");
}

TEST(Cli, SupervaluationLimit) {
  auto r = run({"check", "--relation", "preservation", "--upset", "{1}", "p | ~p |- p, ~p"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("invalid:", 0), 0U);
  auto sv = run({"check", "--relation", "sv", "p | ~p |- p, ~p"});
  EXPECT_EQ(sv.out.rfind("invalid:", 0), 0U);
  auto cl = run({"check", "--relation", "classical", "p | ~p |- p, ~p"});
  EXPECT_EQ(cl.out.rfind("valid:", 0), 0U);
}

TEST(Cli, CounterexampleCommand) {
  auto r = run({"counterexample", "--relation", "symmetric", "--upset", "(7/10,1]", "p, q |- p & q"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "VALID\n");
  auto m = run({"counterexample", "--relation", "symmetric", "--upset", "[1/2,1]", "p |- p"});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(m.out.rfind("model over atoms p", 0), 0U) << m.out;
  EXPECT_NE(m.out.find("1/2 (0.5000)"), std::string::npos);
  EXPECT_NE(m.out.find("(all false)"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check", "--relation", "preservation", "p |- q"}).code, 2);  // missing upset
  EXPECT_EQ(run({"check", "--relation", "classical", "--upset", "{1}", "p |- q"}).code, 2);
  EXPECT_EQ(run({"check", "--relation", "preservation", "--upset", "[0,1]", "p |- q"}).code, 2);
  EXPECT_EQ(run({"check", "--relation", "nonsense", "--upset", "{1}", "p |- q"}).code, 2);
  auto parse = run({"check", "--relation", "classical", "p & |- q"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("parse error"), std::string::npos);
  EXPECT_EQ(run({"--format", "xml", "maxsat", "p"}).code, 2);
  EXPECT_EQ(run({"--atom-cap", "25", "maxsat", "p"}).code, 2);
  EXPECT_EQ(run({"--atom-cap", "2", "maxsat", "p, q, r"}).code, 3);
  EXPECT_EQ(run({"fixtures", "rational", "--n", "3", "--m", "2"}).code, 2);
  EXPECT_EQ(run({"fixtures", "pairwise", "--m", "100000"}).code, 3);
  EXPECT_EQ(run({"probe", "--atoms", "3", "--trials", "5"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyRoundTripAndTamper) {
  auto j = run({"--format", "json", "check", "--relation", "preservation", "--upset", "(7/10,1]", "p, q |- p & q"});
  auto ok = run({"check", "--verify", "-"}, j.out);
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "verified: counterexample verified\n");

  Json doc = json_line(j.out);
  // Put all the mass on the p&q state: no longer a counterexample.
  doc["certificate"]["model"]["masses"] = Json::array({{{"state", "pq"}, {"true_atoms", {"p", "q"}}, {"mass", "1"}}});
  auto bad = run({"check", "--verify", "-"}, doc.dump());
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("rejected:", 0), 0U);

  // Masses that do not sum to one.
  doc["certificate"]["model"]["masses"] = Json::array({{{"state", "pq"}, {"mass", "1/2"}}});
  EXPECT_EQ(run({"check", "--verify", "-"}, doc.dump()).code, 1);

  // A validity claim is reproduced.
  auto v = run({"--format", "json", "check", "--relation", "symmetric", "--upset", "(7/10,1]", "p, q |- p & q"});
  EXPECT_EQ(run({"check", "--verify", "-"}, v.out).code, 0);
  Json flipped = json_line(v.out);
  flipped["upset"] = "[2/3,1]";
  EXPECT_EQ(run({"check", "--verify", "-"}, flipped.dump()).code, 1);

  EXPECT_EQ(run({"check", "--verify", "-"}, "{not json").code, 2);
  EXPECT_EQ(run({"check", "--verify", "/nonexistent/file.json"}).code, 2);
}

TEST(Cli, VerifyEveryEmittedModel) {
  const char* batch =
      "p, q |- p & q\n"
      "p & ~q, q & ~p, ~(p | q) |-\n"
      "p, q |- p & q, p & ~q\n"
      "|-\n"
      "p | ~p |- p, ~p\n";
  for (auto rel : {"material", "preservation", "symmetric"}) {
    for (auto u : {"{1}", "(0,1]", "[2/3,1]", "(1/2,1]", "[3/10,1]"}) {
      auto j = run({"--format", "json", "check", "--relation", rel, "--upset", u}, batch);
      ASSERT_EQ(j.code, 0);
      auto verified = run({"check", "--verify", "-"}, j.out);
      ASSERT_EQ(verified.code, 0) << rel << " " << u << "\n" << verified.out;
    }
  }
  for (auto rel : {"classical", "sv", "sub"}) {
    auto j = run({"--format", "json", "check", "--relation", rel}, batch);
    ASSERT_EQ(run({"check", "--verify", "-"}, j.out).code, 0) << rel;
  }
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds{
      {"--format", "json", "check", "--relation", "preservation", "--upset", "[2/3,1]", "p, q |- p & q, p & ~q"},
      {"check", "--relation", "symmetric", "--upset", "[3/4,1]", "p1, p2, p3 |- p1 & p2 & p3"},
      {"--format", "json", "probe", "--trials", "40", "--seed", "5"},
      {"compare", "--upset", "[2/3,1]", "--against", "(2/3,1]", "--witnesses"},
  };
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(Cli, BatchStdin) {
  auto r = run({"--format", "json", "check", "--relation", "classical"}, "# comment\np |- p\n\np |- q\n");
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string l1, l2, extra;
  std::getline(lines, l1);
  std::getline(lines, l2);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_TRUE(Json::parse(l1)["valid"].get<bool>());
  EXPECT_FALSE(Json::parse(l2)["valid"].get<bool>());

  // A bad line does not stop the batch; the worst code wins.
  auto mixed = run({"check", "--relation", "classical"}, "p |- p\np &\np |- q\n");
  EXPECT_EQ(mixed.code, 2);
  EXPECT_NE(mixed.err.find("query 2"), std::string::npos);
  EXPECT_NE(mixed.out.find("p |- q"), std::string::npos);
}

TEST(Cli, ReportCommands) {
  auto c = run({"classify", "--upset", "[2/3,1]", "p, q |- p & q, p & ~q"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("guaranteed invalid for: undetermined"), std::string::npos) << c.out;
  auto c2 = run({"--format", "json", "classify", "--upset", "[1/2,1]", "p, q | r |- p & q, r"});
  Json d = json_line(c2.out);
  EXPECT_EQ(d["applicable_rules"], Json::array({"setfmla-condition", "fmlaset-condition"}));

  auto cmp = run({"--format", "json", "compare", "--upset", "[2/3,1]", "--against", "(2/3,1]", "--witnesses"});
  EXPECT_EQ(cmp.code, 0);
  Json r = json_line(cmp.out);
  EXPECT_EQ(r["summary"]["a_only"], 1);
  EXPECT_EQ(r["summary"]["b_only"], 1);
  EXPECT_TRUE(r["incomparable"].get<bool>());

  auto fx = run({"fixtures", "pairwise", "--m", "3"});
  EXPECT_EQ(fx.out, "p & q\np & ~q\n~p & q\n");
  auto ci = run({"--format", "json", "fixtures", "ci", "--n", "3"});
  EXPECT_EQ(json_line(ci.out)["size"], 4);
  auto mp = run({"fixtures", "mp", "--n", "2"});
  EXPECT_EQ(mp.out, "p1, ~p1 | p2 |- p2\n");

  auto pr = run({"--format", "json", "probe", "--trials", "60", "--seed", "3"});
  Json p = json_line(pr.out);
  EXPECT_EQ(p["trials"], 60);
  EXPECT_TRUE(p["refutations"].empty());
}
