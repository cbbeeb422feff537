#include "bclab/core/rational.hpp"

#include "bclab/core/errors.hpp"

#include <cctype>

namespace bclab {
namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw ConfigError("malformed rational: '" + std::string(whole) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ConfigError("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Prob parse_prob(std::string_view text) {
  Rational r = parse_rational(text);
  if (!is_probability(r)) {
    throw ConfigError("probability outside [0,1]: '" + std::string(text) + "'");
  }
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

bool is_probability(const Rational& value) { return value >= 0 && value <= 1; }

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  r.canonicalize();
  return r;
}

mpz_class to_mpz(std::uint64_t value) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  mpz_class z;
  mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(value));
  return z;
}

Rational from_u64(std::uint64_t value) { return Rational(to_mpz(value)); }

Rational inverse_power(unsigned base, unsigned exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, exponent);
  return Rational(mpz_class(1), p);
}

Rational decimal_tolerance(unsigned digits) { return inverse_power(10, digits); }

}  // namespace bclab
