#include "magnus/norms.hpp"

#include "magnus/bch.hpp"
#include "magnus/magnus_terms.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace magnus {

Multidegree homogeneous_multidegree(const NcPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero element has no multidegree");
  Multidegree m = multidegree(p.terms.begin()->first);
  for (auto& [w, c] : p.terms)
    if (multidegree(w) != m)
      throw std::invalid_argument("element is not multidegree-homogeneous");
  return m;
}

namespace {

NcPoly dual_from_rows(const std::vector<Word>& rows, const std::vector<Rat>& y) {
  NcPoly alpha;
  for (size_t i = 0; i < rows.size(); ++i) alpha.add(rows[i], y[i]);
  return alpha;
}

}  // namespace

LiePresentation lie_min_norm(const NcPoly& p) {
  Multidegree m = homogeneous_multidegree(p);
  if (!is_lie_element(p))
    throw std::invalid_argument("lie_min_norm: not a Lie element");
  auto cols = bracket_sign_classes(m);
  LpProblem lp;
  lp.rows = lyndon_words(m);
  lp.target = coords_on(p, lp.rows);
  lp.cols.reserve(cols.size());
  for (auto& c : cols) lp.cols.push_back(coords_on(c.expansion, lp.rows));
  LpSolution sol = solve_l1_min(lp);

  LiePresentation out;
  out.value = sol.value;
  out.pivots = sol.pivots;
  for (size_t j = 0; j < cols.size(); ++j)
    if (sol.theta[j] != 0) out.terms.emplace_back(cols[j].tree, sol.theta[j]);
  out.dual = dual_from_rows(lp.rows, sol.dual);

  NcPoly check;
  for (auto& [t, c] : out.terms) check += c * bt_expand(t);
  if (!(check == p)) throw std::logic_error("lie_min_norm: presentation mismatch");
  if (apply_functional(out.dual, p) != out.value)
    throw std::logic_error("lie_min_norm: dual does not attain the value");
  return out;
}

ProductPresentation extended_min_norm(const NcPoly& p) {
  Multidegree m = homogeneous_multidegree(p);
  auto cols = product_columns(m);
  LpProblem lp;
  lp.rows = words_of_multidegree(m);
  lp.target = coords_on(p, lp.rows);
  lp.cols.reserve(cols.size());
  for (auto& c : cols) lp.cols.push_back(coords_on(c.expansion, lp.rows));
  LpSolution sol = solve_l1_min(lp);

  ProductPresentation out;
  out.value = sol.value;
  out.pivots = sol.pivots;
  for (size_t j = 0; j < cols.size(); ++j)
    if (sol.theta[j] != 0) out.terms.emplace_back(cols[j].factors, sol.theta[j]);
  out.dual = dual_from_rows(lp.rows, sol.dual);

  NcPoly check;
  for (auto& [fs, c] : out.terms) {
    NcPoly q(Word{});
    for (auto& f : fs) q = q * bt_expand(f);
    check += c * q;
  }
  if (!(check == p))
    throw std::logic_error("extended_min_norm: presentation mismatch");
  if (apply_functional(out.dual, p) != out.value)
    throw std::logic_error("extended_min_norm: dual does not attain the value");
  return out;
}

Rat theta_lie(int k) {
  if (k == 1) return 1;
  static std::map<int, Rat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end())
    it = cache.emplace(k, lie_min_norm(mu_mp(k)).value / factorial(k)).first;
  return it->second;
}

Rat theta_assoc(int k) { return l1_norm(mu_mp(k)) / factorial(k); }

Rat gamma_lie(int a, int b) {
  static std::map<std::pair<int, int>, Rat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({a, b});
  if (it == cache.end()) {
    NcPoly p = bch_component(a, b);
    Rat v = p.is_zero() ? Rat(0) : lie_min_norm(p).value;
    it = cache.emplace(std::make_pair(a, b), v).first;
  }
  return it->second;
}

Rat apply_functional(const NcPoly& alpha, const NcPoly& p) {
  Rat s = 0;
  for (auto& [w, c] : p.terms) s += alpha.coeff(w) * c;
  return s;
}

Rat functional_sup_lie(const NcPoly& alpha, const Multidegree& m) {
  Rat best = 0;
  for (auto& c : bracket_sign_classes(m)) {
    Rat v = rat_abs(apply_functional(alpha, c.expansion));
    if (v > best) best = v;
  }
  return best;
}

Rat functional_sup_extended(const NcPoly& alpha, const Multidegree& m) {
  Rat best = 0;
  for (auto& c : product_columns(m)) {
    Rat v = rat_abs(apply_functional(alpha, c.expansion));
    if (v > best) best = v;
  }
  return best;
}

}  // namespace magnus
