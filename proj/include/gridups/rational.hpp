#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace gridups {

// Every grading, exponent, t value and breakpoint in the invariant pipeline is
// an exact rational. Values stay tiny (denominators bounded by a few times the
// grid size), so 64-bit numerators are plenty.
using Rational = boost::rational<std::int64_t>;

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "p", "p/q", "-p/q" (surrounding whitespace allowed).
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

} // namespace gridups
