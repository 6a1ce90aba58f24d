#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace orthant {

using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p/q" or "p" with optional sign; canonicalizes. Throws Error(parse).
Rat rat_parse(const std::string& s);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string rat_str(const Rat& r);

// Integer exponents, negative allowed (base must be nonzero then).
Rat rat_pow(const Rat& base, long e);

// Natural log of a positive integer, stable for thousands of bits.
double int_log(const Int& z);

// Continued-fraction recognition: the rational p/q with q <= max_den within
// tol of v, if one exists. With tol well below 1/(2*max_den^2) the answer is
// unique and every such rational appears among the convergents.
std::optional<Rat> recognize_rational(double v, long max_den, double tol);

} // namespace orthant
