#pragma once

#include <gmpxx.h>

#include <string>

namespace pencils {

// Scalar field: exact rationals in canonical form (denominator > 0, lowest
// terms, zero represented as 0/1). GMP keeps the invariants for us as long as
// every value built from raw parts is canonicalized, which the helpers below
// do.
using Rat = mpq_class;

// Parses "p/q" or a plain integer literal (optional sign, decimal digits
// only). Throws std::invalid_argument on anything else, including q = 0.
Rat rat_from_string(const std::string& text);

// Builds num/den in canonical form; the raw mpq_class(num, den) constructor
// does not reduce, and non-canonical values break comparisons. Throws
// std::invalid_argument when den = 0.
Rat rat_from_parts(long num, long den);

// Prints "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);

}  // namespace pencils
