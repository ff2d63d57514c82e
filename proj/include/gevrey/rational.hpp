#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace gevrey {

// Exact rational scalar. GMP's canonicalized mpq_class supplies arithmetic,
// exact comparison and hashing-free ordered-container use.
using Rational = mpq_class;

Rational rat_from_long(long n, unsigned long d = 1);

// Parses "p", "-p", "p/q" (q > 0 after canonicalization). Rejects anything else.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& r);

// floor(r) as a Rational-safe long; requires the result to fit.
long rational_floor(const Rational& r);

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace gevrey
