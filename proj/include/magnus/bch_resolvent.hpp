#pragma once

#include <map>
#include <vector>

#include "magnus/lambda_terms.hpp"
#include "magnus/words.hpp"

namespace magnus {

// Coefficients a_m(s) of the one-slot group resolvent series: f = sum a_m x^m
// solves f' = 1 + (2s-1) f - s(1-s) f^2, f(0) = 0. Index m runs 0..mmax.
// a_m(1-s) = (-1)^(m+1) a_m(s), so everything built on |a_m| is symmetric.
std::vector<Poly> resolvent_coeff_polys(int mmax);
std::vector<Rat> resolvent_coeff_at(int mmax, const Rat& s);

// Bidegree (n1, n2) piece of the squared two-slot series on the diagonal,
// with the scalar x^(n1+n2) factored out and the (s(1-s))^2 prefactor kept.
// Every word has the run pattern 1^i 2^j 1^k 2^l, so distinct index tuples
// never collide and the word norm of the full square factors exactly.
NcPoly upsilon_sq_component(int n1, int n2, const Rat& s);
std::map<Word, Poly> upsilon_sq_component_polys(int n1, int n2);

// Norms of the (2,4) component core (prefactor divided out) as piecewise
// functions of mu = s(1-s): plain word norm, and the factored norm as the
// maximum of four certified presentation costs.
Rat upsilon24_core_assoc(const Rat& mu);
Rat upsilon24_core_lie(const Rat& mu);
// Full component norm at a rational s, prefactor included.
Rat upsilon24(bool lie, const Rat& s);

struct BchResolventResult {
  Rat bound;         // 2x for the largest certified diagonal coordinate x
  Rat x_certified;
  bool corrections = true;
  int deg_cap = 0;
  // Hull of the parameter cells left standing at the certification edge,
  // mapped to min(s, 1-s). Without corrections this localizes the critical
  // parameter of the word-level threshold.
  Rat critical_lo, critical_hi;
  long cells = 0;
  long gain_solves = 0;
};

// Certified lower bound on the diagonal sum x1 + x2 keeping the squared
// series inside the unit ball for every parameter value. With corrections
// the word-norm envelope is lowered by per-component factored-norm gains up
// to total degree deg_cap; without them the scan reproduces the word-level
// threshold and brackets its critical parameter.
BchResolventResult bch_resolvent_bound(int deg_cap, bool corrections,
                                       int lambda_steps = 128);

}  // namespace magnus
