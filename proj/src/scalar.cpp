#include "seqlab/scalar.hpp"

#include <cmath>
#include <string>

#include "seqlab/errors.hpp"

namespace seqlab {

namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw Error(Errc::ConfigError, "not an integer: '" + std::string(s) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::ConfigError, "empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::ConfigError, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));

  // Decimal literal: read it exactly as a base-10 fraction.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = std::stol(std::string(text.substr(e + 1)));
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) throw Error(Errc::ConfigError, "bad rational literal '" + std::string(text) + "'");
      seen_point = true;
    } else {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    }
  }
  if (!is_integer_literal(digits)) {
    throw Error(Errc::ConfigError, "bad rational literal '" + std::string(text) + "'");
  }
  mpz_class num = parse_integer(digits);
  long shift = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(Errc::NonFiniteCoordinate, "cannot convert non-finite double");
  // mpq_set_d is exact for finite doubles.
  return Rational(x);
}

}  // namespace seqlab
