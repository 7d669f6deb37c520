#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncsurf {

using Rational = mpq_class;

/// Parses "p/q", integers and decimals ("1.25", "-3e-2") into an exact rational.
/// Throws Error(ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace ncsurf
