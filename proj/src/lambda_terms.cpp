#include "magnus/lambda_terms.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace magnus {

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

Poly poly_compose_affine(const Poly& p, const Rat& a, const Rat& b) {
  // Horner on (a + b x) keeps everything exact.
  Poly out{Rat(0)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Poly next(out.size() + 1, Rat(0));
    for (size_t i = 0; i < out.size(); ++i) {
      next[i] += out[i] * a;
      next[i + 1] += out[i] * b;
    }
    next[0] += *it;
    out = std::move(next);
    while (out.size() > 1 && out.back() == 0) out.pop_back();
  }
  return out;
}

namespace {

// Bernstein coefficients of p on [0,1]: b_i = sum_{j<=i} C(i,j)/C(n,j) a_j.
std::vector<Rat> bernstein_coeffs(const Poly& p) {
  int n = static_cast<int>(p.size()) - 1;
  std::vector<Rat> b(n + 1, Rat(0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j)
      if (j < static_cast<int>(p.size()) && p[j] != 0)
        b[i] += p[j] * binomial(i, j) / binomial(n, j);
  return b;
}

}  // namespace

Rat poly_sup_on(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.empty()) return 0;
  auto b = bernstein_coeffs(poly_compose_affine(p, lo, hi - lo));
  Rat best = b[0];
  for (auto& v : b)
    if (v > best) best = v;
  return best;
}

Rat poly_inf_on(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.empty()) return 0;
  auto b = bernstein_coeffs(poly_compose_affine(p, lo, hi - lo));
  Rat best = b[0];
  for (auto& v : b)
    if (v < best) best = v;
  return best;
}

namespace {

Poly mk(std::initializer_list<Rat> cs) { return Poly(cs); }

const LambdaTable* lie_table(int a, int b) {
  static const std::map<std::pair<int, int>, LambdaTable> tables = {
      {{0, 1}, {{mk({0, 1})}}},
      {{0, 2}, {{mk({0, 1, -1}), mk({0, 0, 1})}}},
      {{1, 1}, {{mk({0, 2, -2})}}},
      {{0, 3},
       {{mk({0, 1, 0, -2}), mk({0, 0, 4, -5}), mk({0, -1, 6, -5}),
         mk({0, -1, 4, -2})}}},
      {{1, 2}, {{mk({0, 2, -4, 2}), mk({0, 0, 4, -4})}}},
      {{0, 4},
       {{mk({0, 1, 5, -19, 12}), mk({0, 0, 11, -26, 14}),
         mk({0, -1, 14, -26, 12}), mk({0, -1, 2, 10, -12}),
         mk({0, -1, -1, 16, -14}), mk({0, -1, -3, 17, -12})}}},
      {{1, 3},
       {{mk({0, 2, 1, -15, 12}), mk({0, 1, 8, -27, 18}),
         mk({0, 0, 14, -36, 22}), mk({0, -2, 20, -36, 18}),
         mk({0, -2, 12, -12, 2}), mk({0, -2, 10, -7, -1}),
         mk({0, -2, 7, 0, -5})}}},
      {{2, 2},
       {{mk({0, 4, -9, 2, 3}), mk({0, 3, rat(-5, 2), -8, rat(15, 2)}),
         mk({0, 1, 10, -27, 16}), mk({0, 0, 16, -36, 20}),
         mk({0, rat(-1, 2), rat(33, 2), rat(-67, 2), rat(35, 2)}),
         mk({0, rat(-4, 3), rat(58, 3), -36, 18}),
         mk({0, -2, 21, rat(-73, 2), rat(35, 2)}), mk({0, -4, 28, -44, 20}),
         mk({0, -4, 25, -37, 16}), mk({0, -4, rat(37, 2), -22, rat(15, 2)}),
         mk({0, -4, 15, -14, 3})}}},
  };
  auto it = tables.find({a, b});
  return it == tables.end() ? nullptr : &it->second;
}

const LambdaTable* assoc_table(int a, int b) {
  static const std::map<std::pair<int, int>, LambdaTable> tables = {
      {{0, 1}, {{mk({0, 1})}}},
      {{0, 2}, {{mk({0, 1})}}},
      {{1, 1}, {{mk({0, 2, -2})}}},
      {{0, 3}, {{mk({0, 1, 2, -2})}}},
      {{1, 2}, {{mk({0, 2, 0, -2})}}},
      {{0, 4}, {{mk({0, 1, 8, -8})}}},
      {{1, 3}, {{mk({0, 2, 8, -14, 4})}}},
      {{2, 2}, {{mk({0, 4, 4, -16, 8})}}},
  };
  auto it = tables.find({a, b});
  return it == tables.end() ? nullptr : &it->second;
}

struct TableRef {
  const LambdaTable* t;
  bool mirrored;  // evaluate at 1-lambda
};

TableRef find_table(int a, int b, bool lie) {
  auto* get = lie ? lie_table : assoc_table;
  if (const LambdaTable* t = get(a, b)) return {t, false};
  if (const LambdaTable* t = get(b, a)) return {t, true};
  throw std::out_of_range("no weighted-norm table for this bidegree");
}

Rat table_eval(const TableRef& r, Rat lam) {
  if (r.mirrored) lam = 1 - lam;
  Rat best = poly_eval(r.t->pieces[0], lam);
  for (auto& p : r.t->pieces) {
    Rat v = poly_eval(p, lam);
    if (v > best) best = v;
  }
  return best;
}

Rat table_sup(const TableRef& r, Rat lo, Rat hi) {
  if (r.mirrored) {
    Rat nlo = 1 - hi, nhi = 1 - lo;
    lo = nlo;
    hi = nhi;
  }
  Rat best = poly_sup_on(r.t->pieces[0], lo, hi);
  for (auto& p : r.t->pieces) {
    Rat v = poly_sup_on(p, lo, hi);
    if (v > best) best = v;
  }
  return best;
}

Rat table_inf(const TableRef& r, Rat lo, Rat hi) {
  if (r.mirrored) {
    Rat nlo = 1 - hi, nhi = 1 - lo;
    lo = nlo;
    hi = nhi;
  }
  // max of pointwise maxima >= max of per-piece infima
  Rat best = poly_inf_on(r.t->pieces[0], lo, hi);
  for (auto& p : r.t->pieces) {
    Rat v = poly_inf_on(p, lo, hi);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

Rat theta_lambda_lie(int a, int b, const Rat& lam) {
  return table_eval(find_table(a, b, true), lam);
}

Rat theta_lambda_assoc(int a, int b, const Rat& lam) {
  return table_eval(find_table(a, b, false), lam);
}

Rat theta_lambda_lie_sup(int a, int b, const Rat& lo, const Rat& hi) {
  return table_sup(find_table(a, b, true), lo, hi);
}

Rat theta_lambda_assoc_sup(int a, int b, const Rat& lo, const Rat& hi) {
  return table_sup(find_table(a, b, false), lo, hi);
}

Rat theta_lambda_assoc_inf(int a, int b, const Rat& lo, const Rat& hi) {
  return table_inf(find_table(a, b, false), lo, hi);
}

namespace {

// Is max_j assoc_piece_j - lie_piece >= 0 on [lo,hi]? Bernstein positivity of
// some single difference certifies the interval; otherwise bisect.
bool dominated_on(const Poly& lie, const LambdaTable& assoc, const Rat& lo,
                  const Rat& hi, int depth) {
  for (auto& q : assoc.pieces) {
    Poly diff = q;
    diff.resize(std::max(diff.size(), lie.size()), Rat(0));
    for (size_t i = 0; i < lie.size(); ++i) diff[i] -= lie[i];
    if (poly_inf_on(diff, lo, hi) >= 0) return true;
  }
  if (depth == 0) return false;
  Rat mid = (lo + hi) / 2;
  return dominated_on(lie, assoc, lo, mid, depth - 1) &&
         dominated_on(lie, assoc, mid, hi, depth - 1);
}

}  // namespace

void check_lambda_tables_dominated(int a, int b) {
  auto lie = find_table(a, b, true);
  auto assoc = find_table(a, b, false);
  // Either both mirrored or both direct; compare in the stored orientation.
  if (lie.mirrored != assoc.mirrored)
    throw std::logic_error("table orientations disagree");
  for (auto& p : lie.t->pieces)
    if (!dominated_on(p, *assoc.t, 0, 1, 14))
      throw std::logic_error("lie piece exceeds assoc table");
}

}  // namespace magnus
