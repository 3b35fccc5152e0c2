#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

namespace rmarket {

// All prices and cash amounts are exact rationals.  Terminal prices have the
// form 2*(1+eps)^k, so denominators grow with the iteration count; a
// fixed-width type would overflow long before the auction settles.  Lazy
// expression templates are turned off: arithmetic on these types must yield
// plain values, never expressions that can outlive their operands.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

// Largest integer <= x.
inline Int rat_floor(const Rat& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

// Smallest integer >= x.
inline Int rat_ceil(const Rat& x) {
    return -rat_floor(-x);
}

// Accepts "7", "-3" or "num/den" with a positive denominator.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical form: integers render bare ("7"), everything else as "num/den".
std::string format_rational(const Rat& x);

}  // namespace rmarket
