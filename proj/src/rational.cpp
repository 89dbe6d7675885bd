#include "permcorr/rational.hpp"

#include <stdexcept>

namespace permcorr {

namespace {

// cpp_int's string constructor treats leading zeros as octal; parse digit
// strings decimally by hand.
BigInt parse_decimal_int(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    start = 1;
  }
  if (start == text.size()) throw std::invalid_argument("malformed integer '" + text + "'");
  BigInt out = 0;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw std::invalid_argument("malformed integer '" + text + "'");
    out = out * 10 + (c - '0');
  }
  return negative ? -out : out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_decimal_int(text.substr(0, slash));
    BigInt den = parse_decimal_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("malformed decimal '" + text + "'");
    BigInt num = parse_decimal_int(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
  }
  return Rational(parse_decimal_int(text));
}

std::string format_rational(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

Rational rational_from_double(double x) { return Rational(x); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational pow_rational(const Rational& q, std::uint64_t e) {
  Rational result = 1;
  Rational base = q;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

}  // namespace permcorr
