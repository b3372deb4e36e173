#pragma once

// Text front end for formulas and arguments.
//
//   atom     [a-zA-Z][a-zA-Z0-9_]*   (T and F are top and bottom)
//   ~ & | -> ( )                    precedence ~ > & > | > ->
//   ,  |-                           argument list and turnstile
//
// & and | associate to the left, -> to the right. The parser keeps explicit
// operator/operand stacks, so nesting depth is bounded only by the formula
// depth limit and never by the call stack.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probcons/formula.hpp"

namespace probcons {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  // Zero-based byte offset into the parsed text.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

enum class Tok { atom, top, bottom, lnot, land, lor, limplies, lparen, rparen, comma, turnstile, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      Tok k = word == "T" ? Tok::top : word == "F" ? Tok::bottom : Tok::atom;
      out.push_back({k, start, std::move(word)});
      continue;
    }
    switch (c) {
      case '~': out.push_back({Tok::lnot, start, "~"}); ++i; break;
      case '&': out.push_back({Tok::land, start, "&"}); ++i; break;
      case '(': out.push_back({Tok::lparen, start, "("}); ++i; break;
      case ')': out.push_back({Tok::rparen, start, ")"}); ++i; break;
      case ',': out.push_back({Tok::comma, start, ","}); ++i; break;
      case '|':
        if (i + 1 < s.size() && s[i + 1] == '-') {
          out.push_back({Tok::turnstile, start, "|-"});
          i += 2;
        } else {
          out.push_back({Tok::lor, start, "|"});
          ++i;
        }
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::limplies, start, "->"});
          i += 2;
          break;
        }
        throw ParseError("expected '->'", start);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

inline int binary_precedence(Tok k) {
  switch (k) {
    case Tok::land: return 3;
    case Tok::lor: return 2;
    case Tok::limplies: return 1;
    default: return -1;
  }
}

inline const char* describe(Tok k) {
  switch (k) {
    case Tok::end: return "end of input";
    case Tok::comma: return "','";
    case Tok::turnstile: return "'|-'";
    case Tok::rparen: return "')'";
    default: return "token";
  }
}

// Parses tokens [first, last) as exactly one formula; `last` points at the
// token that terminates it (end, comma or turnstile).
inline Formula parse_tokens(const std::vector<Token>& toks, std::size_t first, std::size_t last) {
  struct Op {
    Tok kind;
    std::size_t pos;
  };
  std::vector<Formula> operands;
  std::vector<Op> ops;

  auto apply = [&](const Op& op) {
    if (op.kind == Tok::lnot) {
      Formula a = std::move(operands.back());
      operands.pop_back();
      operands.push_back(neg(std::move(a)));
      return;
    }
    Formula b = std::move(operands.back());
    operands.pop_back();
    Formula a = std::move(operands.back());
    operands.pop_back();
    switch (op.kind) {
      case Tok::land: operands.push_back(conj(std::move(a), std::move(b))); break;
      case Tok::lor: operands.push_back(disj(std::move(a), std::move(b))); break;
      case Tok::limplies: operands.push_back(implies(std::move(a), std::move(b))); break;
      default: break;
    }
  };

  bool expect_operand = true;
  for (std::size_t i = first; i < last; ++i) {
    const Token& t = toks[i];
    if (expect_operand) {
      switch (t.kind) {
        case Tok::atom: operands.push_back(atom(t.text)); expect_operand = false; break;
        case Tok::top: operands.push_back(top()); expect_operand = false; break;
        case Tok::bottom: operands.push_back(bottom()); expect_operand = false; break;
        case Tok::lnot:
        case Tok::lparen:
          if (ops.size() >= kMaxFormulaDepth) throw ParseError("nesting too deep", t.pos);
          ops.push_back({t.kind, t.pos});
          break;
        default:
          throw ParseError(std::string("expected a formula, found ") +
                               (t.text.empty() ? describe(t.kind) : "'" + t.text + "'"),
                           t.pos);
      }
      continue;
    }
    // Expecting an operator or a closing parenthesis.
    if (t.kind == Tok::rparen) {
      while (!ops.empty() && ops.back().kind != Tok::lparen) {
        apply(ops.back());
        ops.pop_back();
      }
      if (ops.empty()) throw ParseError("unmatched ')'", t.pos);
      ops.pop_back();
      // A closed group is an operand; pending negations bind to it.
      while (!ops.empty() && ops.back().kind == Tok::lnot) {
        apply(ops.back());
        ops.pop_back();
      }
      continue;
    }
    int prec = binary_precedence(t.kind);
    if (prec < 0) throw ParseError("expected an operator, found '" + t.text + "'", t.pos);
    bool right_assoc = t.kind == Tok::limplies;
    while (!ops.empty() && ops.back().kind != Tok::lparen) {
      int top_prec = ops.back().kind == Tok::lnot ? 4 : binary_precedence(ops.back().kind);
      if (top_prec > prec || (top_prec == prec && !right_assoc)) {
        apply(ops.back());
        ops.pop_back();
      } else {
        break;
      }
    }
    if (ops.size() >= kMaxFormulaDepth) throw ParseError("nesting too deep", t.pos);
    ops.push_back({t.kind, t.pos});
    expect_operand = true;
    continue;
  }
  const Token& stop = toks[last];
  if (expect_operand) {
    throw ParseError(std::string("expected a formula, found ") + describe(stop.kind), stop.pos);
  }
  while (!ops.empty()) {
    if (ops.back().kind == Tok::lparen) throw ParseError("unclosed '('", ops.back().pos);
    apply(ops.back());
    ops.pop_back();
  }
  return std::move(operands.back());
}

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  auto toks = detail::tokenize(text);
  std::size_t last = toks.size() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    if (toks[i].kind == detail::Tok::comma || toks[i].kind == detail::Tok::turnstile) {
      throw ParseError("unexpected '" + toks[i].text + "' in formula", toks[i].pos);
    }
  }
  return detail::parse_tokens(toks, 0, last);
}

// Comma-separated formula list, possibly empty.
inline FormulaSet parse_formula_list(std::string_view text) {
  auto toks = detail::tokenize(text);
  FormulaSet out;
  if (toks.size() == 1) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto k = toks[i].kind;
    if (k == detail::Tok::turnstile) throw ParseError("unexpected '|-' in formula list", toks[i].pos);
    if (k == detail::Tok::comma || k == detail::Tok::end) {
      out.insert(detail::parse_tokens(toks, start, i));
      start = i + 1;
    }
  }
  return out;
}

// "g1, ..., gm |- d1, ..., dn"; either side may be empty.
inline Argument parse_argument(std::string_view text) {
  auto toks = detail::tokenize(text);
  std::size_t turnstile = toks.size();
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != detail::Tok::turnstile) continue;
    if (turnstile != toks.size()) throw ParseError("second '|-'", toks[i].pos);
    turnstile = i;
  }
  if (turnstile == toks.size()) throw ParseError("missing '|-'", text.size());

  auto side = [&](std::size_t from, std::size_t to) {
    FormulaSet out;
    if (from == to) return out;
    std::size_t start = from;
    for (std::size_t i = from; i <= to; ++i) {
      if (i == to || toks[i].kind == detail::Tok::comma) {
        out.insert(detail::parse_tokens(toks, start, i));
        start = i + 1;
      }
    }
    return out;
  };
  Argument arg;
  arg.premises = side(0, turnstile);
  arg.conclusions = side(turnstile + 1, toks.size() - 1);
  return arg;
}

}  // namespace probcons
