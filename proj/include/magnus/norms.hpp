#pragma once

#include "magnus/lie.hpp"
#include "magnus/lp.hpp"
#include "magnus/words.hpp"

#include <utility>
#include <vector>

namespace magnus {

// Minimal-cost presentation of a homogeneous Lie element as a rational
// combination of bracket monomials, found by exact LP. `dual` is a word
// functional attaining `value` with |dual(column)| <= 1 on every bracket
// column, so value is certified optimal, not just feasible.
struct LiePresentation {
  Rat value;
  std::vector<std::pair<BTreePtr, Rat>> terms;
  NcPoly dual;
  long pivots = 0;
};

LiePresentation lie_min_norm(const NcPoly& p);

// Same, over ordered products of bracket monomials (the norm on the
// enveloping algebra); valid for any homogeneous element.
struct ProductPresentation {
  Rat value;
  std::vector<std::pair<std::vector<BTreePtr>, Rat>> terms;
  NcPoly dual;
  long pivots = 0;
};

ProductPresentation extended_min_norm(const NcPoly& p);

// Norm of the degree-k expansion term in k distinct letters, divided by k!
// (the time-ordered simplex volume), so the value is the t^k series
// coefficient for a unit-norm field.
Rat theta_lie(int k);
// Word-basis l1 norm of the same term, same k! normalization (the
// associative presentation is unique, so no LP is involved).
Rat theta_assoc(int k);
// Norm of the bidegree (a,b) piece of log(exp X1 exp X2).
Rat gamma_lie(int a, int b);

// Dual pairing sum_w alpha_w p_w.
Rat apply_functional(const NcPoly& alpha, const NcPoly& p);
// max |alpha(column)| over all bracket columns / product columns of the
// multidegree; a functional with sup <= 1 certifies value lower bounds.
Rat functional_sup_lie(const NcPoly& alpha, const Multidegree& m);
Rat functional_sup_extended(const NcPoly& alpha, const Multidegree& m);

Multidegree homogeneous_multidegree(const NcPoly& p);

}  // namespace magnus
