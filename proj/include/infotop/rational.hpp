#pragma once

#include <gmpxx.h>

#include <string>

namespace infotop {

// Exact rational scalar. All observer entries, rates and probabilities are
// kept as arbitrary-precision rationals so that equality after min/max and
// polynomial chains stays exact; doubles appear only in numeric integration
// and report rendering.
using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p/q", integers, and decimal literals ("0.25", "-1.5e-2" is not
// supported; exponents never occur in the definition format). Decimals are
// converted exactly (0.1 -> 1/10).
Rat parse_rational(const std::string& token);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_to_string(const Rat& value);

// Decimal rendering with 12 significant digits, trailing zeros trimmed.
// Used for every number in reports and CSV output.
std::string format_decimal(double value);
std::string format_decimal(const Rat& value);

Int floor_rat(const Rat& value);

// mpq_class(p, q) does not reduce; GMP comparisons require canonical form,
// so every fraction built from raw integers goes through here.
inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& value) { return value.get_d(); }

inline Rat rat_min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

}  // namespace infotop
