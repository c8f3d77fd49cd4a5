#pragma once

#include "magnus/rational.hpp"
#include "magnus/words.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace magnus {

struct LogBranchFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Witness Lie algebra on two square-zero generators. Basis keys pair a kind
// with the total degree: 'x' (odd degree 2n+1, norm 2^-n), 'y' (odd degree
// 2m+1, norm 2^-m), 'b' (the bracket family, even degree 2k >= 2, norm
// 2^(1-k)). The only nonzero bracket families are
//   [x_(2n+1), y_(2m+1)] = b_(2n+2m+2)
//   [b_(2k),   x_(2n+1)] = 2 x_(2k+2n+1)
//   [y_(2m+1), b_(2k)]   = 2 y_(2k+2m+1)
// together with their antisymmetric mirrors.
using WitnessElem = std::map<std::pair<char, int>, Rat>;

WitnessElem witness_bracket(const WitnessElem& u, const WitnessElem& v);
Rat witness_generator_norm(char kind, int degree);
Rat witness_norm(const WitnessElem& e);

// Image of a homogeneous Lie element (letters 1 and 2) under letter 1 -> x,
// letter 2 -> y, computed by the right-nested bracketing map scaled by the
// reciprocal degree. Exact; the input must be a Lie element for the map to
// be meaningful.
WitnessElem witness_reduce(const NcPoly& p);

// Diagonal lower-bound series for the two-variable expansion norm:
//   sum_k (k!)^2/(2k+1)! (t^{2k+1} 2^{1-k} + t^{2k+2} 2^{-k-1}).
// Partial sum through k = K, evaluated with iterative term ratios so large K
// stays in floating-point range. Increases in K; diverges once t reaches
// 2 sqrt 2.
double xi_partial(double t, int K);
// Closed form of the full sum below the divergence point:
//   4 (4+t) asin(2^{-3/2} t) / sqrt(8 - t^2),
// +infinity from 2 sqrt 2 on.
double xi_closed(double t);

// Residual of the matrix wrap-up: max-abs entry difference between the
// logarithm of exp(t Xhat) exp(t Yhat) computed by eigendecomposition
// (Xhat/Yhat the elementary nilpotents scaled by sqrt2/2) and the closed form
//   2 asinh(2^{-3/2} t) / sqrt(8 + t^2) * [[t, 2 sqrt 2], [2 sqrt 2, -t]].
// Throws LogBranchFailure if the product's spectrum leaves the positive
// axis.
double sl2_check(double t);

// Divergence-side constants with their witnessing data.
struct UpperBoundsReport {
  double diagonal_divergence = 0;  // 2 sqrt 2, where the witness series blows
  double pair_norm_bound = 0;      // 4 sqrt 2, bound on the two-variable sum
  double radius_upper = 0;         // 4, upper bound for the one-variable radius
  // Halving inequality instance at degree 5, both sides exact:
  // word-basis norm * 2^(1-5) <= minimal bracket-presentation norm.
  Rat halving_lhs;
  Rat halving_rhs;
  int halving_degree = 5;
  std::vector<std::pair<std::string, Rat>> generator_norms;
};
UpperBoundsReport upper_bounds_report();

}  // namespace magnus
