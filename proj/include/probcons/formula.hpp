#pragma once

// Propositional formulas over the primitive connectives negation and
// disjunction. Conjunction, implication, top and bottom are constructors that
// expand into primitives, so two formulas are equal exactly when their
// primitive trees are.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace probcons {

// Atom used by the expansion of top/bottom. Never accepted from user text and
// treated as constantly false by the semantics.
inline constexpr std::string_view kReservedAtom = "_t0";

inline constexpr std::size_t kMaxFormulaDepth = 10000;

class FormulaDepthError : public std::length_error {
 public:
  FormulaDepthError()
      : std::length_error("formula exceeds maximum depth of " + std::to_string(kMaxFormulaDepth)) {}
};

inline bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

class Formula {
 public:
  enum class Kind { atom, negation, disjunction };

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return node_->kind == Kind::atom; }
  bool is_negation() const { return node_->kind == Kind::negation; }
  bool is_disjunction() const { return node_->kind == Kind::disjunction; }

  // Valid for atoms only.
  const std::string& name() const { return node_->name; }
  // Operand of a negation; left disjunct of a disjunction.
  const Formula& left() const { return *node_->left; }
  const Formula& child() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind ||
        a.node_->depth != b.node_->depth) {
      return false;
    }
    switch (a.kind()) {
      case Kind::atom:
        return a.name() == b.name();
      case Kind::negation:
        return a.child() == b.child();
      case Kind::disjunction:
        return a.left() == b.left() && a.right() == b.right();
    }
    return false;
  }

  friend Formula atom(std::string name);
  friend Formula neg(Formula f);
  friend Formula disj(Formula a, Formula b);
  friend Formula top();

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::unique_ptr<const Formula> left;
    std::unique_ptr<const Formula> right;
    std::size_t depth = 1;
    std::size_t hash = 0;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Formula make_atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::atom;
    n->hash = std::hash<std::string>{}(name) * 0x9e3779b97f4a7c15ULL + 1;
    n->name = std::move(name);
    return Formula(std::move(n));
  }

  static std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  }

  std::shared_ptr<const Node> node_;
};

inline Formula atom(std::string name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  if (name == "T" || name == "F") {
    throw std::invalid_argument("'" + name + "' is reserved for top/bottom");
  }
  return Formula::make_atom(std::move(name));
}

inline Formula neg(Formula f) {
  if (f.depth() + 1 > kMaxFormulaDepth) throw FormulaDepthError();
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::negation;
  n->depth = f.depth() + 1;
  n->hash = Formula::mix(0x51ed27, f.hash());
  n->left = std::make_unique<const Formula>(std::move(f));
  return Formula(std::move(n));
}

inline Formula disj(Formula a, Formula b) {
  std::size_t d = std::max(a.depth(), b.depth()) + 1;
  if (d > kMaxFormulaDepth) throw FormulaDepthError();
  auto n = std::make_shared<Formula::Node>();
  n->kind = Formula::Kind::disjunction;
  n->depth = d;
  n->hash = Formula::mix(Formula::mix(0x2545f4, a.hash()), b.hash());
  n->left = std::make_unique<const Formula>(std::move(a));
  n->right = std::make_unique<const Formula>(std::move(b));
  return Formula(std::move(n));
}

inline Formula conj(Formula a, Formula b) { return neg(disj(neg(std::move(a)), neg(std::move(b)))); }

inline Formula implies(Formula a, Formula b) { return disj(neg(std::move(a)), std::move(b)); }

inline Formula top() {
  Formula t = Formula::make_atom(std::string(kReservedAtom));
  return disj(t, neg(t));
}

inline Formula bottom() { return neg(top()); }

inline bool is_top(const Formula& f) {
  return f.is_disjunction() && f.left().is_atom() && f.left().name() == kReservedAtom &&
         f.right().is_negation() && f.right().child().is_atom() &&
         f.right().child().name() == kReservedAtom;
}

inline bool is_bottom(const Formula& f) { return f.is_negation() && is_top(f.child()); }

// Matches the expansion of conj(a, b); fills the conjuncts when it does.
inline bool match_conjunction(const Formula& f, const Formula** a, const Formula** b) {
  if (!f.is_negation() || !f.child().is_disjunction()) return false;
  const Formula& inner = f.child();
  if (!inner.left().is_negation() || !inner.right().is_negation()) return false;
  *a = &inner.left().child();
  *b = &inner.right().child();
  return true;
}

namespace detail {

// Binding strengths used by the printer; mirrors the parser's table.
enum Prec : int { kTop = 0, kOr = 2, kAnd = 3, kUnary = 4 };

inline void print_into(const Formula& f, int context, std::string& out) {
  if (is_top(f)) {
    out += 'T';
    return;
  }
  if (is_bottom(f)) {
    out += 'F';
    return;
  }
  const Formula* a = nullptr;
  const Formula* b = nullptr;
  if (match_conjunction(f, &a, &b)) {
    bool paren = context > kAnd;
    if (paren) out += '(';
    print_into(*a, kAnd, out);
    out += " & ";
    print_into(*b, kUnary, out);
    if (paren) out += ')';
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::atom:
      out += f.name();
      return;
    case Formula::Kind::negation:
      out += '~';
      print_into(f.child(), kUnary, out);
      return;
    case Formula::Kind::disjunction: {
      bool paren = context > kOr;
      if (paren) out += '(';
      print_into(f.left(), kOr, out);
      out += " | ";
      print_into(f.right(), kAnd, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace detail

// Minimal-parenthesis rendering in the input grammar; parsing it back yields
// an identical tree.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_into(f, detail::kTop, out);
  return out;
}

// Sorted, duplicate-free atom names, including the reserved atom when top or
// bottom occur.
inline std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> names;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    switch (g->kind()) {
      case Formula::Kind::atom:
        names.insert(g->name());
        break;
      case Formula::Kind::negation:
        stack.push_back(&g->child());
        break;
      case Formula::Kind::disjunction:
        stack.push_back(&g->left());
        stack.push_back(&g->right());
        break;
    }
  }
  return {names.begin(), names.end()};
}

// Finite set of formulas, ordered by first insertion, deduplicated
// syntactically.
class FormulaSet {
 public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> items) {
    for (const auto& f : items) insert(f);
  }
  template <typename It>
  FormulaSet(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }

  bool insert(const Formula& f) {
    if (contains(f)) return false;
    items_.push_back(f);
    return true;
  }
  bool contains(const Formula& f) const {
    return std::find(items_.begin(), items_.end(), f) != items_.end();
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Formula& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Formula>& items() const { return items_; }

  // Order-sensitive, like the canonical folds built from it.
  friend bool operator==(const FormulaSet&, const FormulaSet&) = default;

 private:
  std::vector<Formula> items_;
};

inline FormulaSet set_union(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out = a;
  for (const auto& f : b) out.insert(f);
  return out;
}

// Same members regardless of insertion order.
inline bool same_members(const FormulaSet& a, const FormulaSet& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.begin(), a.end(), [&](const Formula& f) { return b.contains(f); });
}

inline std::vector<std::string> atoms(const FormulaSet& s) {
  std::set<std::string> names;
  for (const auto& f : s) {
    for (auto& n : atoms(f)) names.insert(std::move(n));
  }
  return {names.begin(), names.end()};
}

inline FormulaSet negate_set(const FormulaSet& s) {
  FormulaSet out;
  for (const auto& f : s) out.insert(neg(f));
  return out;
}

inline Formula big_conj(const FormulaSet& s) {
  if (s.empty()) return top();
  Formula acc = s[0];
  for (std::size_t i = 1; i < s.size(); ++i) acc = conj(acc, s[i]);
  return acc;
}

inline Formula big_disj(const FormulaSet& s) {
  if (s.empty()) return bottom();
  Formula acc = s[0];
  for (std::size_t i = 1; i < s.size(); ++i) acc = disj(acc, s[i]);
  return acc;
}

inline std::string to_string(const FormulaSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s[i]);
  }
  return out;
}

// A Set-Set argument: premises on the left, conclusions on the right.
struct Argument {
  FormulaSet premises;
  FormulaSet conclusions;

  friend bool operator==(const Argument&, const Argument&) = default;
};

inline std::vector<std::string> atoms(const Argument& arg) {
  return atoms(set_union(arg.premises, arg.conclusions));
}

inline std::string to_string(const Argument& arg) {
  std::string out = to_string(arg.premises);
  out += arg.premises.empty() ? "|-" : " |-";
  if (!arg.conclusions.empty()) out += " " + to_string(arg.conclusions);
  return out;
}

}  // namespace probcons

template <>
struct std::hash<probcons::Formula> {
  std::size_t operator()(const probcons::Formula& f) const noexcept { return f.hash(); }
};
