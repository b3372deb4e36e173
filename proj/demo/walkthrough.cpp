// A short tour of the library: a few arguments decided under each relation,
// with the counterexample models printed when they exist.

#include <iostream>

#include "probcons/probcons.hpp"

using namespace probcons;

static void show(const Verdict& v) {
  std::cout << to_string(v.argument) << "  [" << to_string(v.relation);
  if (v.upset) std::cout << " " << to_string(*v.upset);
  std::cout << "]  " << (v.valid ? "valid" : "invalid") << "\n";
  if (const ProbModel* m = v.model()) {
    for (const auto& g : v.argument.premises) {
      std::cout << "    p(" << to_string(g) << ") = " << to_string(probability(*m, g)) << "\n";
    }
    for (const auto& d : v.argument.conclusions) {
      std::cout << "    p(" << to_string(d) << ") = " << to_string(probability(*m, d)) << "\n";
    }
  }
}

int main() {
  Argument ci = parse_argument("p, q |- p & q");
  Upset high = parse_upset("(7/10,1]");
  show(preservation_valid(ci, high));
  show(symmetric_valid(ci, high));
  show(material_valid(ci, high));

  FormulaSet triple = parse_formula_list("p & ~q, q & ~p, ~(p | q)");
  std::cout << "maxsat(" << to_string(triple) << ") = " << to_string(maxsat(triple).value) << "\n";
  Argument trip{triple, {}};
  show(preservation_valid(trip, parse_upset("[2/5,1]")));
  show(preservation_valid(trip, parse_upset("[3/10,1]")));

  // Conjunction introduction settles into symmetric validity just above
  // n/(n+1).
  for (std::size_t n = 2; n <= 4; ++n) {
    Argument arg = conjunction_introduction(n);
    std::cout << to_string(arg) << ": size " << argument_size(arg) << ", threshold "
              << to_string(minimal_argument_threshold(arg)) << "\n";
  }

  Argument split = parse_argument("p, q |- p & q, p & ~q");
  auto report = classify_preservation_invalidity(split, parse_upset("[2/3,1]"));
  std::cout << to_string(split) << ": rules say " << report.guaranteed_invalid_for() << "\n";
  show(preservation_valid(split, parse_upset("[2/3,1]")));
}
