#pragma once

// Threshold sets of "good" probabilities: (x,1] or [x,1] for a rational x,
// always containing 1 and excluding 0.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "probcons/rational.hpp"

namespace probcons {

enum class Closure { open, closed };

class Upset {
 public:
  // Rejects sets that are not upsets: [0,1] contains 0 and (1,1] is empty.
  Upset(Rational threshold, Closure closure) : threshold_(std::move(threshold)), closure_(closure) {
    if (threshold_ < 0 || threshold_ > 1) {
      throw std::invalid_argument("upset threshold " + to_string(threshold_) + " outside [0,1]");
    }
    if (threshold_ == 0 && closure_ == Closure::closed) {
      throw std::invalid_argument("[0,1] contains 0 and is not an upset; use (0,1]");
    }
    if (threshold_ == 1 && closure_ == Closure::open) {
      throw std::invalid_argument("(1,1] is empty; use {1}");
    }
  }

  static Upset open(Rational x) { return {std::move(x), Closure::open}; }
  static Upset closed(Rational x) { return {std::move(x), Closure::closed}; }
  static Upset certainty() { return closed(Rational(1)); }      // {1}
  static Upset positive() { return open(Rational(0)); }         // (0,1]

  const Rational& threshold() const { return threshold_; }
  Closure closure() const { return closure_; }
  bool is_open() const { return closure_ == Closure::open; }
  bool is_certainty() const { return threshold_ == 1; }
  bool is_positive() const { return threshold_ == 0; }
  bool is_extreme() const { return is_certainty() || is_positive(); }

  bool contains(const Rational& v) const {
    if (v < 0 || v > 1) {
      throw std::invalid_argument("probability " + to_string(v) + " outside [0,1]");
    }
    return is_open() ? v > threshold_ : v >= threshold_;
  }

  // a is a subset of b.
  bool subset_of(const Upset& b) const {
    if (threshold_ != b.threshold_) return threshold_ > b.threshold_;
    return !(b.is_open() && !is_open());
  }

  friend bool operator==(const Upset&, const Upset&) = default;

 private:
  Rational threshold_;
  Closure closure_;
};

// Downward-closed reflection {v : 1 - v in a}: [0,b) or [0,b].
struct Downset {
  Rational bound;
  Closure closure;

  bool contains(const Rational& v) const {
    if (v < 0 || v > 1) {
      throw std::invalid_argument("probability " + to_string(v) + " outside [0,1]");
    }
    return closure == Closure::open ? v < bound : v <= bound;
  }
  friend bool operator==(const Downset&, const Downset&) = default;
};

inline Downset mirror(const Upset& a) { return {1 - a.threshold(), a.closure()}; }

// [0,1] minus the mirror image: closure flips, threshold reflects.
inline Upset dual(const Upset& a) {
  return {1 - a.threshold(), a.is_open() ? Closure::closed : Closure::open};
}

inline std::string to_string(const Upset& a) {
  if (a.is_certainty()) return "{1}";
  return (a.is_open() ? "(" : "[") + to_string(a.threshold()) + ",1]";
}

inline std::string to_string(const Downset& d) {
  if (d.bound == 0 && d.closure == Closure::closed) return "{0}";
  return "[0," + to_string(d.bound) + (d.closure == Closure::open ? ")" : "]");
}

// Interval notation: "[2/3,1]", "(7/10,1]", "{1}", "(0,1]". Whitespace is
// ignored; the threshold is any form accepted by parse_rational.
inline Upset parse_upset(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto fail = [&](const std::string& why) -> Upset {
    throw std::invalid_argument("malformed upset '" + std::string(text) + "': " + why);
  };
  if (s == "{1}") return Upset::certainty();
  if (s.size() < 5) return fail("expected (x,1], [x,1] or {1}");
  char open = s.front();
  if ((open != '(' && open != '[') || s.back() != ']') return fail("expected (x,1], [x,1] or {1}");
  auto comma = s.find(',');
  if (comma == std::string::npos) return fail("missing ','");
  Rational upper;
  try {
    upper = parse_rational(std::string_view(s).substr(comma + 1, s.size() - comma - 2));
  } catch (const std::invalid_argument&) {
    return fail("bad upper bound");
  }
  if (upper != 1) return fail("upper bound must be 1");
  Rational x;
  try {
    x = parse_rational(std::string_view(s).substr(1, comma - 1));
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  return Upset(x, open == '(' ? Closure::open : Closure::closed);
}

}  // namespace probcons
