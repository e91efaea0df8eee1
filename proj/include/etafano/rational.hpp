#pragma once

#include <gmpxx.h>

#include <string>

namespace etafano {

// Exact arbitrary-precision scalars. Everything the engine reports is a Rat
// or an algebraic number described by Rat data; doubles appear only in
// advisory decimal hints on output.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p" or "p/q" with an optional leading sign. Throws ValidationError
// on malformed text or q == 0. The result is canonical (lowest terms,
// positive denominator).
Rat rat_parse(const std::string& text);

// Renders canonically: "p" when the denominator is 1, else "p/q" with q > 1.
std::string rat_str(const Rat& v);

Int rat_floor(const Rat& v);
Int rat_ceil(const Rat& v);

// rat_floor narrowed to long; throws ComputationError when out of range.
long rat_floor_long(const Rat& v);

Rat rat_pow(const Rat& base, unsigned exp);
Rat rat_factorial(unsigned n);

inline int rat_sign(const Rat& v) { return sgn(v); }
inline double rat_double(const Rat& v) { return v.get_d(); }

}  // namespace etafano
