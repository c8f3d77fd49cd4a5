#pragma once

#include <vector>

#include "magnus/words.hpp"

namespace magnus {

// Taylor coefficients of x/(e^x - 1); beta(x) drives the expansion recursions.
// Exact via sum_{i<=j} beta_i / (j+1-i)! = [j == 0].
std::vector<Rat> beta_coeffs(int upto);

// Permutation-sum form: sum over all sigma of
// (-1)^des(sigma) asc(sigma)! des(sigma)! / k! * X_sigma.
NcPoly mu_mp(int k);

// Expansion-in-first-variable recursion: ordered set partitions of {2..k},
// nested ad-products applied to X_1, coefficient beta_s.
NcPoly mu_recursive_left(int k);

// Expansion-in-last-variable recursion: ordered set partitions of {1..k-1},
// coefficient (-1)^s beta_s, applied to X_k.
NcPoly mu_recursive_right(int k);

// Right-nested bracket form with the extra 1/k, already a Lie polynomial.
NcPoly mu_lie(int k);

// Nesting identity: the degree-k term re-expanded through an inner block
// spanning positions h1+1..k-h2. Returns the re-expansion for comparison.
NcPoly mu_nested(int k, int h1, int h2);

// Weighted one-parameter family: sum over sigma in Sigma_{a+b} of
// s^asc(seq) * (s-1)^des(seq) * X_sigma with seq = (a+1/2, sigma(1..a+b)).
// The (s-1)^des factor carries the alternating sign of the permutation-sum
// form; |coefficient| integrates to asc! des! / k! over s in [0,1].
NcPoly mu_weighted(int a, int b, const Rat& s);

// Two-checkpoint variant: seq = (a+1/2, sigma(1..a+b+c), a+b+1/2). The second
// checkpoint sits above the first a+b values and below the remaining c.
NcPoly mu_weighted3(int a, int b, int c, const Rat& s);

}  // namespace magnus
