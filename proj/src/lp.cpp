#include "magnus/lp.hpp"

#include <stdexcept>

namespace magnus {

namespace {

// Dense tableau with explicit artificial block; the artificial columns hold
// B^{-1} throughout, which is what the dual extraction reads at the end.
struct Tableau {
  int m;                // rows
  int n;                // structural columns (split variables)
  std::vector<std::vector<Rat>> a;  // m x (n + m + 1), RHS last
  std::vector<int> basis;           // basis[i] = column index basic in row i

  Rat& rhs(int i) { return a[i][n + m]; }

  void pivot(int pr, int pc) {
    Rat inv = 1 / a[pr][pc];
    auto& prow = a[pr];
    for (auto& v : prow) v *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == pr) continue;
      Rat f = a[i][pc];
      if (f == 0) continue;
      auto& row = a[i];
      for (int j = 0; j <= n + m; ++j)
        if (prow[j] != 0) row[j] -= f * prow[j];
    }
    basis[pr] = pc;
  }
};

// One simplex phase. `cost` has length n + m (structural then artificial);
// artificial columns are barred from entering when `allow_artificial` is
// false. Entering by steepest reduced cost; ratio ties are broken
// lexicographically on the B^{-1} block, which keeps the pivot path acyclic
// under degeneracy. A long fully-degenerate streak falls back to Bland's
// rule, which terminates from any basis. Returns pivot count.
long run_phase(Tableau& t, const std::vector<Rat>& cost, bool allow_artificial) {
  long pivots = 0;
  long stall = 0;
  int total = allow_artificial ? t.n + t.m : t.n;
  std::vector<char> in_basis(t.n + t.m, 0);
  for (int i = 0; i < t.m; ++i) in_basis[t.basis[i]] = 1;
  while (true) {
    int enter = -1;
    Rat best_red;
    for (int j = 0; j < total; ++j) {
      if (in_basis[j]) continue;
      // reduced cost c_j - y . A_j, with A_j read from the ORIGINAL column:
      // structural columns of the tableau still store B^{-1} A_j, so use
      // c_j - c_B . (tableau column) instead, which equals the same thing.
      Rat red = cost[j];
      for (int i = 0; i < t.m; ++i)
        if (cost[t.basis[i]] != 0) red -= cost[t.basis[i]] * t.a[i][j];
      if (red < 0 && (enter < 0 || red < best_red)) {
        enter = j;
        best_red = red;
        if (stall > 10000) break;  // Bland: first improving index
      }
    }
    if (enter < 0) return pivots;
    int leave = -1;
    Rat best;
    for (int i = 0; i < t.m; ++i) {
      if (t.a[i][enter] <= 0) continue;
      Rat ratio = t.rhs(i) / t.a[i][enter];
      if (leave < 0 || ratio < best) {
        leave = i;
        best = ratio;
      } else if (ratio == best) {
        for (int j = t.n; j < t.n + t.m; ++j) {
          Rat d = t.a[leave][j] / t.a[leave][enter] - t.a[i][j] / t.a[i][enter];
          if (d != 0) {
            if (d > 0) leave = i;
            break;
          }
        }
      }
    }
    if (leave < 0) throw std::runtime_error("simplex: unbounded");
    stall = best == 0 ? stall + 1 : 0;
    in_basis[t.basis[leave]] = 0;
    in_basis[enter] = 1;
    t.pivot(leave, enter);
    ++pivots;
  }
}

}  // namespace

LpSolution solve_l1_min(const LpProblem& p) {
  int m = static_cast<int>(p.rows.size());
  int ncols = static_cast<int>(p.cols.size());
  int n = 2 * ncols;

  Tableau t;
  t.m = m;
  t.n = n;
  t.a.assign(m, std::vector<Rat>(n + m + 1, Rat(0)));
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    int flip = p.target[i] < 0 ? -1 : 1;
    for (int j = 0; j < ncols; ++j) {
      t.a[i][j] = flip * p.cols[j][i];
      t.a[i][ncols + j] = -t.a[i][j];
    }
    t.a[i][n + i] = 1;
    t.rhs(i) = flip * p.target[i];
    t.basis[i] = n + i;
  }

  LpSolution sol;

  std::vector<Rat> phase1(n + m, Rat(0));
  for (int j = 0; j < m; ++j) phase1[n + j] = 1;
  sol.pivots += run_phase(t, phase1, true);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n && t.rhs(i) != 0)
      throw std::runtime_error("simplex: infeasible target");

  // Drive zero-level artificials out of the basis so phase 2 cannot lift
  // them; a row with no structural entry left is redundant and inert.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (t.a[i][j] != 0) {
        t.pivot(i, j);
        ++sol.pivots;
        break;
      }
    }
  }

  std::vector<Rat> phase2(n + m, Rat(0));
  for (int j = 0; j < n; ++j) phase2[j] = 1;
  sol.pivots += run_phase(t, phase2, false);

  sol.theta.assign(ncols, Rat(0));
  sol.value = 0;
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] >= n) continue;  // artificial stuck at zero level
    int j = t.basis[i];
    if (j < ncols)
      sol.theta[j] += t.rhs(i);
    else
      sol.theta[j - ncols] -= t.rhs(i);
  }
  for (auto& v : sol.theta) sol.value += rat_abs(v);

  // dual on the sign-flipped rows, then undo the flips
  sol.dual.assign(m, Rat(0));
  for (int i = 0; i < m; ++i) {
    const Rat& cb = phase2[t.basis[i]];
    if (cb == 0) continue;
    for (int j = 0; j < m; ++j) sol.dual[j] += cb * t.a[i][n + j];
  }
  for (int i = 0; i < m; ++i)
    if (p.target[i] < 0) sol.dual[i] = -sol.dual[i];

  return sol;
}

bool is_lyndon(const Word& w) {
  int n = w.size();
  if (n == 1) return true;
  for (int s = 1; s < n; ++s) {
    // compare w with its rotation by s; w must be strictly smallest
    for (int i = 0; i < n; ++i) {
      int a = w.letter(i), b = w.letter((i + s) % n);
      if (a < b) break;
      if (a > b) return false;
      if (i == n - 1) return false;  // equal rotation: periodic word
    }
  }
  return true;
}

std::vector<Word> lyndon_words(const Multidegree& m) {
  std::vector<Word> out;
  for (auto& w : words_of_multidegree(m))
    if (is_lyndon(w)) out.push_back(w);
  return out;
}

std::vector<Rat> coords_on(const NcPoly& p, const std::vector<Word>& rows) {
  std::vector<Rat> v(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) v[i] = p.coeff(rows[i]);
  return v;
}

}  // namespace magnus
