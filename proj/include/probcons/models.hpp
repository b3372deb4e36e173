#pragma once

// Finite probability models over state descriptions and the independent
// counterexample checker used to gate every invalidity verdict.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "probcons/formula.hpp"
#include "probcons/rational.hpp"
#include "probcons/semantics.hpp"
#include "probcons/upset.hpp"

namespace probcons {

// Point masses on the states of a sorted atom list. The algebra is the full
// power set of states, so every formula over the atoms has a probability.
class ProbModel {
 public:
  ProbModel(std::vector<std::string> atom_list, std::map<std::uint64_t, Rational> masses)
      : atoms_(std::move(atom_list)) {
    if (!std::is_sorted(atoms_.begin(), atoms_.end()) ||
        std::adjacent_find(atoms_.begin(), atoms_.end()) != atoms_.end()) {
      throw std::invalid_argument("model atoms must be sorted and distinct");
    }
    if (atoms_.size() > 63) throw std::invalid_argument("too many model atoms");
    const std::uint64_t states = std::uint64_t{1} << atoms_.size();
    Rational total = 0;
    for (auto& [w, m] : masses) {
      if (w >= states) throw std::invalid_argument("state index " + std::to_string(w) + " out of range");
      if (sgn(m) < 0) throw std::invalid_argument("negative mass " + to_string(m));
      if (sgn(m) == 0) continue;
      total += m;
      masses_.emplace(w, m);
    }
    if (total != 1) throw std::invalid_argument("masses sum to " + to_string(total) + ", not 1");
  }

  const std::vector<std::string>& atoms() const { return atoms_; }
  // Nonzero masses only, ordered by state index.
  const std::map<std::uint64_t, Rational>& masses() const { return masses_; }

  Rational mass(std::uint64_t state) const {
    auto it = masses_.find(state);
    return it == masses_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const ProbModel&, const ProbModel&) = default;

 private:
  std::vector<std::string> atoms_;
  std::map<std::uint64_t, Rational> masses_;
};

inline ProbModel point_mass(std::vector<std::string> atom_list, std::uint64_t state) {
  return ProbModel(std::move(atom_list), {{state, Rational(1)}});
}

// Equal share per listed state; repeated states accumulate their shares.
inline ProbModel uniform_over(std::vector<std::string> atom_list, std::span<const std::uint64_t> states) {
  if (states.empty()) throw std::invalid_argument("uniform_over needs at least one state");
  std::map<std::uint64_t, Rational> masses;
  Rational share = make_rational(1, static_cast<long>(states.size()));
  for (auto w : states) masses[w] += share;
  return ProbModel(std::move(atom_list), std::move(masses));
}

// Sum of masses of the states where f holds, evaluated state by state.
inline Rational probability(const ProbModel& m, const Formula& f) {
  Rational p = 0;
  for (const auto& [w, mass] : m.masses()) {
    if (eval(f, StateDescription{m.atoms(), w})) p += mass;
  }
  return p;
}

// Builds a model from the first 2^n entries of an LP point over the states.
inline ProbModel from_witness(std::span<const Rational> witness, std::vector<std::string> atom_list) {
  const std::uint64_t states = std::uint64_t{1} << atom_list.size();
  if (witness.size() != states) {
    throw std::invalid_argument("witness has " + std::to_string(witness.size()) + " entries; expected " +
                                std::to_string(states));
  }
  std::map<std::uint64_t, Rational> masses;
  for (std::uint64_t w = 0; w < states; ++w) {
    if (sgn(witness[w]) < 0) throw std::invalid_argument("negative witness entry " + to_string(witness[w]));
    if (sgn(witness[w]) > 0) masses.emplace(w, witness[w]);
  }
  return ProbModel(std::move(atom_list), std::move(masses));
}

// Concatenated names of the atoms true at a state ("" for the all-false
// state).
inline std::string state_label(std::span<const std::string> atom_list, std::uint64_t state) {
  std::string out;
  for (std::size_t i = 0; i < atom_list.size(); ++i) {
    if ((state >> i) & 1U) out += atom_list[i];
  }
  return out;
}

enum class CounterexampleKind { material, preservation, symmetric };

// Recomputes every probability from the masses and checks the membership
// conditions of the chosen counterexample notion. Formulas mentioning atoms
// the model does not interpret make the check fail.
inline bool verify_counterexample(const ProbModel& m, const Argument& arg, const Upset& a,
                                  CounterexampleKind kind) {
  try {
    switch (kind) {
      case CounterexampleKind::material:
        return !a.contains(probability(m, implies(big_conj(arg.premises), big_disj(arg.conclusions))));
      case CounterexampleKind::preservation:
        for (const auto& g : arg.premises) {
          if (!a.contains(probability(m, g))) return false;
        }
        for (const auto& d : arg.conclusions) {
          if (a.contains(probability(m, d))) return false;
        }
        return true;
      case CounterexampleKind::symmetric: {
        Downset low = mirror(a);
        for (const auto& g : arg.premises) {
          if (!a.contains(probability(m, g))) return false;
        }
        for (const auto& d : arg.conclusions) {
          if (!low.contains(probability(m, d))) return false;
        }
        return true;
      }
    }
  } catch (const UnknownAtomError&) {
    return false;
  }
  return false;
}

}  // namespace probcons
