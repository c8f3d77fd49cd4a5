#pragma once

#include "magnus/words.hpp"

#include <vector>

namespace magnus {

// Homogeneous pieces of log(exp X1 exp X2) in the free algebra on two
// letters: bch_terms(kmax)[k] is the total-degree-k component, k >= 1.
// Entry [0] is kept empty so indices match degrees.
std::vector<NcPoly> bch_terms(int kmax);

// Component of bidegree (a letters 1, b letters 2).
NcPoly bch_component(int a, int b);

// log(1 + w) truncated beyond total degree kmax; w must have no
// constant term.
NcPoly log1p_truncated(const NcPoly& w, int kmax);

// exp(p) truncated beyond total degree kmax; p must have no constant term.
NcPoly exp_truncated(const NcPoly& p, int kmax);

}  // namespace magnus
