#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace permcorr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", a plain integer, or a finite decimal ("0.5") exactly.
Rational parse_rational(const std::string& text);

/// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& q);

/// Exact value of the double's binary representation.
Rational rational_from_double(double x);

double to_double(const Rational& q);

/// q^e for e >= 0.
Rational pow_rational(const Rational& q, std::uint64_t e);

/// True iff q is an integer.
bool is_integer(const Rational& q);

}  // namespace permcorr
