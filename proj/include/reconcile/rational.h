#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace reconcile {

using Rational = boost::rational<std::int64_t>;

// Accepts integers, terminating decimals ("1.25") and fractions ("3/2").
// Throws std::invalid_argument on anything else or on a negative value
// when allow_negative is false.
Rational parse_rational(std::string_view text, bool allow_negative = false);

// Integers print bare, terminating fractions print as decimals, everything
// else as "p/q". parse_rational(format_rational(x)) == x for every x.
std::string format_rational(const Rational &value);

}  // namespace reconcile
