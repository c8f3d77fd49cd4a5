#pragma once

#include <vector>

#include "magnus/words.hpp"

namespace magnus {

// min sum |theta_j| subject to sum_j theta_j * col_j = target, coordinates
// indexed by `rows`. Exact rational two-phase simplex on the split
// theta = u - v with Bland's rule (finite termination, no cycling).
struct LpProblem {
  std::vector<Word> rows;
  std::vector<std::vector<Rat>> cols;  // cols[j][i] = coefficient on rows[i]
  std::vector<Rat> target;
};

struct LpSolution {
  Rat value;
  std::vector<Rat> theta;  // signed coefficient per column
  std::vector<Rat> dual;   // functional per row; |dual . col| <= 1, dual . target = value
  long pivots = 0;
};

LpSolution solve_l1_min(const LpProblem& p);

// Lyndon (strictly least among rotations) words of a multidegree: these
// coordinates are complete for Lie elements, and there are exactly dim many.
bool is_lyndon(const Word& w);
std::vector<Word> lyndon_words(const Multidegree& m);

// Restrict a polynomial to the given coordinate words.
std::vector<Rat> coords_on(const NcPoly& p, const std::vector<Word>& rows);

}  // namespace magnus
