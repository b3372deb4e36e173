#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace probcons {

// Exact rational. GMP keeps results of arithmetic in lowest terms; values
// built from a numerator/denominator pair go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "n", "n/m", and finite decimals such as "0.7" or ".25".
// A leading '-' is allowed; range checks belong to the caller.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  };
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };

  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) return fail();

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    }
    value = Rational(n, d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) return fail();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class n(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = Rational(n, scale);
    value.canonicalize();
  } else {
    if (!all_digits(body)) return fail();
    value = Rational(mpz_class(std::string(body), 10));
  }
  return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Rounded decimal rendering for display only; never fed back into decisions.
inline std::string to_decimal(const Rational& r, unsigned digits = 4) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational scaled = abs(r) * scale;
  // round half up
  mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = q.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  if (sgn(r) < 0 && q != 0) out.insert(0, "-");
  return out;
}

}  // namespace probcons
