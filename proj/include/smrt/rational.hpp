#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace smrt {

/// Arbitrary-precision rational used by the Q tables and the symbolic oracle.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and finite decimals such as "-0.125".
/// Throws ValidationError on anything else.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace smrt
