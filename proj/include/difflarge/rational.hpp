#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace difflarge {

using Integer = mpz_class;

// GMP keeps mpq_class canonical (reduced, positive denominator) as long as
// every value goes through canonicalize() after construction from parts.
using Rational = mpq_class;

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q"; throws InvalidArgument on malformed input or q = 0.
Rational parse_rational(std::string_view text);

Rational make_rational(const Integer& num, const Integer& den);

} // namespace difflarge
