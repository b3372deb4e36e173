#pragma once

// Classical truth tables over state descriptions, and the classical,
// supervaluationist and subvaluationist validity tests derived from them.
//
// A state over atoms a_0 < a_1 < ... < a_{n-1} is an index in [0, 2^n); bit i
// of the index is the truth value of a_i.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "probcons/formula.hpp"

namespace probcons {

inline constexpr unsigned kDefaultAtomCap = 16;
inline constexpr unsigned kMaxAtomCap = 24;

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  unsigned atom_cap = kDefaultAtomCap;
};

inline void check_atom_cap(std::size_t atom_count, const Limits& limits) {
  if (limits.atom_cap > kMaxAtomCap) {
    throw std::invalid_argument("atom cap " + std::to_string(limits.atom_cap) + " exceeds hard maximum " +
                                std::to_string(kMaxAtomCap));
  }
  if (atom_count > limits.atom_cap) {
    throw ResourceLimitError("query has " + std::to_string(atom_count) + " atoms; cap is " +
                             std::to_string(limits.atom_cap));
  }
}

// Atoms that index states: everything except the reserved top/bottom atom.
inline std::vector<std::string> state_atoms(std::vector<std::string> names) {
  std::erase(names, std::string(kReservedAtom));
  return names;
}
inline std::vector<std::string> state_atoms(const Formula& f) { return state_atoms(atoms(f)); }
inline std::vector<std::string> state_atoms(const FormulaSet& s) { return state_atoms(atoms(s)); }
inline std::vector<std::string> state_atoms(const Argument& a) { return state_atoms(atoms(a)); }

class UnknownAtomError : public std::invalid_argument {
 public:
  explicit UnknownAtomError(const std::string& name)
      : std::invalid_argument("atom '" + name + "' is not in the state's atom list") {}
};

struct StateDescription {
  std::span<const std::string> atoms;  // sorted
  std::uint64_t index = 0;

  // Truth value of a named atom; the reserved atom is false.
  bool value(const std::string& name) const {
    if (name == kReservedAtom) return false;
    auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
    if (it == atoms.end() || *it != name) throw UnknownAtomError(name);
    return (index >> (it - atoms.begin())) & 1U;
  }
};

inline bool eval(const Formula& f, const StateDescription& w) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      return w.value(f.name());
    case Formula::Kind::negation:
      return !eval(f.child(), w);
    case Formula::Kind::disjunction:
      return eval(f.left(), w) || eval(f.right(), w);
  }
  return false;
}

// Fixed-size set of state indices.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t atom_count, bool full = false)
      : states_(std::uint64_t{1} << atom_count), words_((states_ + 63) / 64, full ? ~0ULL : 0ULL) {
    trim();
  }

  std::uint64_t universe() const { return states_; }
  bool test(std::uint64_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::uint64_t i) { words_[i / 64] |= 1ULL << (i % 64); }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  bool full() const { return count() == states_; }

  std::optional<std::uint64_t> first() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    }
    return std::nullopt;
  }

  std::vector<std::uint64_t> indices() const {
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      for (auto w = words_[k]; w; w &= w - 1) out.push_back(k * 64 + std::countr_zero(w));
    }
    return out;
  }

  StateSet& operator&=(const StateSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  StateSet complement() const {
    StateSet out = *this;
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }
  bool subset_of(const StateSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & ~o.words_[k]) return false;
    }
    return true;
  }

  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend bool operator==(const StateSet&, const StateSet&) = default;

  // States where atom `bit` is true.
  static StateSet atom_states(std::size_t atom_count, std::size_t bit) {
    StateSet s(atom_count);
    static constexpr std::uint64_t kPattern[6] = {
        0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
        0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
    for (std::size_t k = 0; k < s.words_.size(); ++k) {
      s.words_[k] = bit < 6 ? kPattern[bit] : (((k * 64) >> bit) & 1U ? ~0ULL : 0ULL);
    }
    s.trim();
    return s;
  }

 private:
  void trim() {
    if (states_ % 64 && !words_.empty()) words_.back() &= (1ULL << (states_ % 64)) - 1;
  }

  std::uint64_t states_ = 0;
  std::vector<std::uint64_t> words_;
};

// States of `atom_list` (sorted, reserved atom excluded) where f is true.
inline StateSet denotation(const Formula& f, std::span<const std::string> atom_list,
                           const Limits& limits = {}) {
  check_atom_cap(atom_list.size(), limits);
  auto rec = [&](auto&& self, const Formula& g) -> StateSet {
    switch (g.kind()) {
      case Formula::Kind::atom: {
        if (g.name() == kReservedAtom) return StateSet(atom_list.size());
        auto it = std::lower_bound(atom_list.begin(), atom_list.end(), g.name());
        if (it == atom_list.end() || *it != g.name()) throw UnknownAtomError(g.name());
        return StateSet::atom_states(atom_list.size(), it - atom_list.begin());
      }
      case Formula::Kind::negation:
        return self(self, g.child()).complement();
      case Formula::Kind::disjunction:
        return self(self, g.left()) | self(self, g.right());
    }
    return StateSet(atom_list.size());
  };
  return rec(rec, f);
}

// Intersection of denotations (all states when s is empty).
inline StateSet joint_denotation(const FormulaSet& s, std::span<const std::string> atom_list,
                                 const Limits& limits = {}) {
  StateSet out(atom_list.size(), true);
  for (const auto& f : s) out &= denotation(f, atom_list, limits);
  return out;
}

// Union of denotations (no states when s is empty).
inline StateSet any_denotation(const FormulaSet& s, std::span<const std::string> atom_list,
                               const Limits& limits = {}) {
  StateSet out(atom_list.size());
  for (const auto& f : s) out |= denotation(f, atom_list, limits);
  return out;
}

inline bool satisfiable(const FormulaSet& s, const Limits& limits = {}) {
  auto at = state_atoms(s);
  return !joint_denotation(s, at, limits).empty();
}
inline bool satisfiable(const Formula& f, const Limits& limits = {}) {
  return satisfiable(FormulaSet{f}, limits);
}
inline bool tautology(const Formula& f, const Limits& limits = {}) {
  auto at = state_atoms(f);
  return denotation(f, at, limits).full();
}
inline bool contradiction(const Formula& f, const Limits& limits = {}) { return !satisfiable(f, limits); }

// A state making every premise true and every conclusion false, if any.
inline std::optional<std::uint64_t> classical_counterexample_state(const Argument& arg,
                                                                   std::span<const std::string> atom_list,
                                                                   const Limits& limits = {}) {
  StateSet bad = joint_denotation(arg.premises, atom_list, limits);
  bad &= any_denotation(arg.conclusions, atom_list, limits).complement();
  return bad.first();
}

inline bool classical_valid(const Argument& arg, const Limits& limits = {}) {
  auto at = state_atoms(arg);
  return !classical_counterexample_state(arg, at, limits).has_value();
}

// Gamma entails phi classically.
inline bool entails(const FormulaSet& gamma, const Formula& phi, const Limits& limits = {}) {
  return classical_valid(Argument{gamma, FormulaSet{phi}}, limits);
}

// Some world-set model makes all premises true everywhere while each
// conclusion fails somewhere exactly when the premises are jointly satisfiable
// and no single conclusion follows from them.
inline bool sv_valid(const Argument& arg, const Limits& limits = {}) {
  auto at = state_atoms(arg);
  StateSet gamma = joint_denotation(arg.premises, at, limits);
  if (gamma.empty()) return true;
  return std::any_of(arg.conclusions.begin(), arg.conclusions.end(),
                     [&](const Formula& d) { return gamma.subset_of(denotation(d, at, limits)); });
}

inline bool sub_valid(const Argument& arg, const Limits& limits = {}) {
  return sv_valid(Argument{negate_set(arg.conclusions), negate_set(arg.premises)}, limits);
}

}  // namespace probcons
