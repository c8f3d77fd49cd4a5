#pragma once

#include "magnus/rational.hpp"

#include <vector>

namespace magnus {

// Univariate polynomial, coeffs[i] on x^i.
using Poly = std::vector<Rat>;

Rat poly_eval(const Poly& p, const Rat& x);
// Composition p(a + b x).
Poly poly_compose_affine(const Poly& p, const Rat& a, const Rat& b);
// Certified bounds on [lo, hi] via Bernstein coefficients on the interval
// (sup returns an upper bound, inf a lower bound; both exact rationals).
Rat poly_sup_on(const Poly& p, const Rat& lo, const Rat& hi);
Rat poly_inf_on(const Poly& p, const Rat& lo, const Rat& hi);

// Weighted-term norm tables on [0,1]: each entry is the pointwise maximum of
// finitely many polynomial pieces (each piece is the objective of a dual
// functional that stays feasible for every lambda, so the max is exact where
// the table applies and a valid lower envelope everywhere).
struct LambdaTable {
  std::vector<Poly> pieces;
};

// Stored for the printed (a,b); transposed arguments are served through the
// lambda -> 1-lambda symmetry. a+b = 1..4.
Rat theta_lambda_lie(int a, int b, const Rat& lam);
Rat theta_lambda_assoc(int a, int b, const Rat& lam);

// Certified bounds over a lambda interval [lo, hi] subset [0,1].
Rat theta_lambda_lie_sup(int a, int b, const Rat& lo, const Rat& hi);
Rat theta_lambda_assoc_sup(int a, int b, const Rat& lo, const Rat& hi);
Rat theta_lambda_assoc_inf(int a, int b, const Rat& lo, const Rat& hi);

// Machine check that every Lie piece is dominated by the assoc table on
// [0,1] (recursively bisected Bernstein comparison). Throws on failure.
void check_lambda_tables_dominated(int a, int b);

}  // namespace magnus
