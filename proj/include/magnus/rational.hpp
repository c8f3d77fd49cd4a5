#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace magnus {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline int sgn(const Rat& x) { return x.sign(); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// "num/den" with den omitted when 1; canonical (gmp keeps gcd-reduced form).
std::string rat_str(const Rat& x);

// Round-trip for "a/b", "a", and "-a/b".
Rat rat_parse(const std::string& s);

double to_double(const Rat& x);

// Nearby rational with denominator <= max_den, via continued fractions.
Rat rationalize(double x, std::int64_t max_den = 1'000'000);

Rat factorial(int n);
Rat binomial(int n, int k);

// Largest r with den-limited binary search such that r^p <= x (lower=true),
// or smallest r with r^p >= x (lower=false); exact comparisons throughout.
Rat nth_root_bound(const Rat& x, int p, bool lower, const Rat& tol = Rat(1, 1'000'000'000));

// Truncated series bounds: both certified (series truncation underestimates).
// log((1+z)/(1-z)) = 2*sum z^(2i+1)/(2i+1); exp lower via Taylor partial sum.
Rat log_lower(const Rat& x, int terms = 48);   // requires x > 1
Rat exp_lower(const Rat& x, int terms = 32);   // requires x >= 0
Rat exp_upper(const Rat& x, int terms = 32);   // requires x >= 0, x < terms

}  // namespace magnus
