#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "tropical/errors.hpp"
#include "tropical/maxplus.hpp"

namespace tropical {

/// "p/q", "p" or "-inf".
inline std::string to_string(const Scalar& s) {
  if (s.is_epsilon()) return "-inf";
  return s.value().get_str();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/**
 * Parses an exact weight. Accepted forms: integers ("-3"), fractions
 * ("7/2", positive denominator), decimals with optional exponent
 * ("-2.5", "1e-3"), and the token "-inf". Decimals are converted exactly.
 * Anything else throws ParseError with the offending column (1-based).
 */
inline Scalar parse_scalar(std::string_view text) {
  if (text == "-inf") return Scalar();
  auto fail = [&](std::size_t pos, const char* why) -> Scalar {
    throw ParseError("invalid weight '" + std::string(text) + "': " + why, 0, pos + 1);
  };
  if (text.empty()) return fail(0, "empty");

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

  auto digits = [&](std::string& out) {
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) out += text[pos++];
  };

  std::string whole;
  digits(whole);

  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string den;
    digits(den);
    if (whole.empty() || den.empty()) return fail(pos, "malformed fraction");
    if (pos != text.size()) return fail(pos, "trailing characters");
    mpz_class d(den);
    if (d == 0) return fail(pos - 1, "zero denominator");
    Rational q(mpz_class(whole), d);
    q.canonicalize();
    return Scalar(negative ? Rational(-q) : q);
  }

  std::string frac;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    digits(frac);
  }
  if (whole.empty() && frac.empty()) return fail(pos, "expected digits");

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) exp_negative = text[pos++] == '-';
    std::string exp_digits;
    digits(exp_digits);
    if (exp_digits.empty() || exp_digits.size() > 6) return fail(pos, "malformed exponent");
    exponent = std::stol(exp_digits) * (exp_negative ? -1 : 1);
  }
  if (pos != text.size()) return fail(pos, "unexpected character");

  mpz_class mantissa(whole.empty() && frac.empty() ? std::string("0") : whole + frac);
  exponent -= static_cast<long>(frac.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return Scalar(negative ? Rational(-q) : q);
}

}  // namespace tropical
