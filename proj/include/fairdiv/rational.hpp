#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fairdiv {

// Every quantity in the library (utilities, probabilities, LP coefficients)
// is an exact rational; nothing is ever rounded to floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "5", "-3/4" or a decimal string like "0.25" without rounding.
/// Throws SchemaError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical form: "p" when the value is an integer, "p/q" otherwise.
std::string format_rational(const Rational& value);

} // namespace fairdiv
