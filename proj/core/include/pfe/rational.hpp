#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pfe {

// Exact arithmetic carriers. mpq_class keeps values canonical
// (gcd(num, den) = 1, den > 0) through arithmetic; direct num/den
// manipulation must call canonicalize(), which make_rat() does.
using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

/// Parses "a", "-a", or "a/b" into a canonical rational. Throws Errc::ParseError.
Rat parse_rat(std::string_view text);

std::string rat_str(const Rat& q);  // "a" or "a/b", canonical
std::string int_str(const Int& n);

double to_double(const Rat& q);

bool is_integer(const Rat& q);
/// Floor of a rational as an exact integer.
Int rat_floor(const Rat& q);

/// base^exp as an exact rational; exp may be negative (base != 0).
Rat pow_rat(const Int& base, long exp);
Int pow_int(const Int& base, unsigned long exp);

}  // namespace pfe
