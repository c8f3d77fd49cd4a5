#include "magnus/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace magnus {

namespace {

// (1-tau)^a tau^b / (a! b!) as a monomial Poly in tau.
Poly shape_poly(int a, int b) {
  Poly p(a + b + 1, Rat(0));
  Rat scale = Rat(1) / (factorial(a) * factorial(b));
  for (int i = 0; i <= a; ++i)
    p[b + i] = scale * binomial(a, i) * (i % 2 ? -1 : 1);
  return p;
}

Poly weighted_shape_sum(int pm1, const std::function<Rat(int)>& entry) {
  Poly acc(pm1 + 1, Rat(0));
  for (int b = 0; b <= pm1; ++b) {
    Rat c = entry(b);
    if (c == 0) continue;
    Poly s = shape_poly(pm1 - b, b);
    for (size_t i = 0; i < s.size(); ++i) acc[i] += c * s[i];
  }
  return acc;
}

}  // namespace

Rat kernel_value(int pm1, bool lie, const Rat& lam, const Rat& tau) {
  if (tau < 0) return kernel_value(pm1, lie, 1 - lam, -tau);
  Poly p = weighted_shape_sum(pm1, [&](int b) {
    return lie ? theta_lambda_lie(pm1 - b, b, lam)
               : theta_lambda_assoc(pm1 - b, b, lam);
  });
  return lam * poly_eval(p, tau);
}

const ThetaProvider& table_theta_provider() {
  static const ThetaProvider tp{
      [](int a, int b, const Rat& lo, const Rat& hi) {
        return theta_lambda_lie_sup(a, b, lo, hi);
      },
      [](int a, int b, const Rat& lo, const Rat& hi) {
        return theta_lambda_assoc_sup(a, b, lo, hi);
      },
      [](int a, int b, const Rat& lo, const Rat& hi) {
        return theta_lambda_assoc_inf(a, b, lo, hi);
      }};
  return tp;
}

namespace {

Rat kernel_sup_pos(int pm1, bool lie, const Rat& l1, const Rat& l2,
                   const Rat& t1, const Rat& t2, const ThetaProvider& tp) {
  Poly p = weighted_shape_sum(pm1, [&](int b) {
    return lie ? tp.lie_sup(pm1 - b, b, l1, l2)
               : tp.assoc_sup(pm1 - b, b, l1, l2);
  });
  Rat s = poly_sup_on(p, t1, t2);
  return s > 0 ? l2 * s : l1 * s;
}

}  // namespace

Rat kernel_sup(int pm1, bool lie, const Rat& l1, const Rat& l2, const Rat& t1,
               const Rat& t2, const ThetaProvider& tp) {
  Rat lo = std::max(t1, Rat(-1)), hi = std::min(t2, Rat(1));
  if (lo > hi) throw std::invalid_argument("kernel_sup: empty tau interval");
  Rat best;
  bool have = false;
  if (hi > 0 || (lo == 0 && hi == 0)) {
    best = kernel_sup_pos(pm1, lie, l1, l2, std::max(lo, Rat(0)), hi, tp);
    have = true;
  }
  if (lo < 0) {
    Rat v = kernel_sup_pos(pm1, lie, 1 - l2, 1 - l1, -std::min(hi, Rat(0)),
                           -lo, tp);
    if (!have || v > best) best = v;
  }
  return best;
}

Rat kernel_inf_assoc(int pm1, const Rat& l1, const Rat& l2, const Rat& t1,
                     const Rat& t2, const ThetaProvider& tp) {
  if (t1 < 0) throw std::invalid_argument("kernel_inf_assoc: tau must be >= 0");
  Poly p = weighted_shape_sum(
      pm1, [&](int b) { return tp.assoc_inf(pm1 - b, b, l1, l2); });
  Rat s = poly_inf_on(p, t1, t2);
  return s > 0 ? l1 * s : l2 * s;
}

Rat w_sup_on(const Rat& lo, const Rat& hi, int series_terms) {
  if (lo < 0 || hi > 1 || lo > hi) throw std::invalid_argument("w_sup_on");
  Rat half = rat(1, 2);
  if (lo < half && hi > half)
    return std::max(w_sup_on(lo, half, series_terms),
                    w_sup_on(half, hi, series_terms));
  // Map to u = |1-2x|; w = u / (2 atanh u) decreases in u, so the sup sits at
  // the endpoint nearest 1/2. A truncated (hence smaller) atanh keeps the
  // quotient an upper bound.
  Rat u = hi <= half ? Rat(1 - 2 * hi) : Rat(2 * lo - 1);
  if (u == 0) return half;
  if (u >= 1) u = 1 - rat(1, 1u << 30);  // w -> 0 at the ends; any cap works
  Rat at = 0, pw = u, u2 = u * u;
  for (int k = 0; k < series_terms; ++k) {
    at += pw / (2 * k + 1);
    pw *= u2;
  }
  return u / (2 * at);
}

RadiusBound qualitative_bound(int pm1, int lambda_cells, int t_cells,
                              const ThetaProvider& tp) {
  // The ratio fallback S <= 1 below relies on the Lie table never exceeding
  // the associative one; certify that first.
  for (int b = 0; b <= pm1; ++b) check_lambda_tables_dominated(pm1 - b, b);

  int p = pm1 + 1;
  RadiusBound out;
  out.pm1 = pm1;
  out.lambda_cells = lambda_cells;
  out.extra = t_cells;
  Rat one(1);
  for (int i = 0; i < lambda_cells; ++i) {
    Rat l1 = rat(i, lambda_cells), l2 = rat(i + 1, lambda_cells);
    Rat w = w_sup_on(l1, l2);
    Rat s_cell = 0;
    for (int sign = 0; sign < 2; ++sign) {
      for (int j = 0; j < t_cells && s_cell < one; ++j) {
        Rat t1 = rat(j, t_cells), t2 = rat(j + 1, t_cells);
        Rat num, den;
        if (sign == 0) {
          num = kernel_sup(pm1, true, l1, l2, t1, t2, tp);
          den = kernel_inf_assoc(pm1, l1, l2, t1, t2, tp);
        } else {
          num = kernel_sup(pm1, true, l1, l2, -t2, -t1, tp);
          den = kernel_inf_assoc(pm1, 1 - l2, 1 - l1, t1, t2, tp);
        }
        Rat r = (den <= 0) ? one : std::min(one, Rat(num / den));
        if (r > s_cell) s_cell = r;
      }
    }
    Rat root = nth_root_bound(s_cell, p, false, rat(1, 1 << 20));
    if (root > 1) root = 1;  // s_cell <= 1 certified above
    Rat q = w * root;
    if (q > out.quantity) {
      out.quantity = q;
      out.argmax_lo = l1;
      out.argmax_hi = l2;
    }
  }
  out.bound = 1 / out.quantity;
  return out;
}

namespace {

// Exact Collatz-Wielandt upper bound for the Perron root of the nonnegative
// Toeplitz matrix with diagonals diag[d+s-1], d = j-i: rho <= max_i (Av)_i/v_i
// for any positive v. v comes from double power iteration, then is frozen to
// integers; exactness of the final ratios is what certifies the bound.
Rat toeplitz_radius_upper(const std::vector<Rat>& diag, int s,
                          double* residual_out = nullptr) {
  std::vector<double> dd(diag.size());
  for (size_t i = 0; i < diag.size(); ++i) dd[i] = to_double(diag[i]);
  std::vector<double> v(s, 1.0), nv(s);
  for (int it = 0; it < 4000; ++it) {
    double mx = 0;
    for (int i = 0; i < s; ++i) {
      double acc = 0;
      for (int j = 0; j < s; ++j) acc += dd[j - i + s - 1] * v[j];
      nv[i] = acc;
      mx = std::max(mx, acc);
    }
    if (mx <= 0) break;
    double drift = 0;
    for (int i = 0; i < s; ++i) {
      double t = nv[i] / mx;
      drift = std::max(drift, std::abs(t - v[i]));
      v[i] = t;
    }
    if (it > 32 && drift < 1e-15) break;
  }
  const double kScale = 1e15;
  double lo = 1.0;
  for (int i = 0; i < s; ++i) lo = std::min(lo, v[i]);
  double floor_v = std::max(lo * 0.5, 1e-30);
  std::vector<Int> iv(s);
  for (int i = 0; i < s; ++i)
    iv[i] = Int(static_cast<long long>(std::max(v[i], floor_v) * kScale) + 1);
  std::vector<Rat> av(s);
  for (int i = 0; i < s; ++i) {
    Rat acc = 0;
    for (int j = 0; j < s; ++j) {
      const Rat& d = diag[j - i + s - 1];
      if (d != 0) acc += d * iv[j];
    }
    av[i] = acc;
  }
  Rat best = 0;
  for (int i = 0; i < s; ++i) {
    Rat ratio = av[i] / iv[i];
    if (ratio > best) best = ratio;
  }
  if (residual_out) {
    Int vmax = iv[0];
    for (int i = 1; i < s; ++i) vmax = std::max(vmax, iv[i]);
    Rat res = 0;
    for (int i = 0; i < s; ++i) {
      Rat gap = rat_abs(av[i] - best * iv[i]);
      if (gap > res) res = gap;
    }
    *residual_out = to_double(res / vmax);
  }
  return best;
}

}  // namespace

RadiusBound toeplitz_bound(int pm1, int s, int lambda_cells,
                           const ThetaProvider& tp) {
  int p = pm1 + 1;
  RadiusBound out;
  out.pm1 = pm1;
  out.lambda_cells = lambda_cells;
  out.extra = s;
  for (int i = 0; i < lambda_cells; ++i) {
    Rat l1 = rat(i, lambda_cells), l2 = rat(i + 1, lambda_cells);
    std::vector<Rat> diag(2 * s - 1);
    for (int d = -(s - 1); d <= s - 1; ++d)
      diag[d + s - 1] =
          kernel_sup(pm1, true, l1, l2, rat(d - 1, s), rat(d + 1, s), tp) / s;
    double res = 0;
    Rat r = toeplitz_radius_upper(diag, s, &res);
    if (r > out.quantity) {
      out.quantity = r;
      out.argmax_lo = l1;
      out.argmax_hi = l2;
      out.perron_residual = res;
    }
  }
  out.bound = 1 / nth_root_bound(out.quantity, p, false, rat(1, 1 << 24));
  return out;
}

Rat kernel_bilinear_constant(int pm1, bool lie, const Rat& lam) {
  // int_0^1 K(tau)(1-tau) dtau plus the mirrored negative side.
  Rat total = 0;
  for (int side = 0; side < 2; ++side) {
    Rat l = side == 0 ? lam : 1 - lam;
    Poly k = weighted_shape_sum(pm1, [&](int b) {
      return lie ? theta_lambda_lie(pm1 - b, b, l)
                 : theta_lambda_assoc(pm1 - b, b, l);
    });
    for (auto& c : k) c *= l;
    // multiply by (1 - tau), then integrate on [0,1]
    Poly m(k.size() + 1, Rat(0));
    for (size_t i = 0; i < k.size(); ++i) {
      m[i] += k[i];
      m[i + 1] -= k[i];
    }
    for (size_t i = 0; i < m.size(); ++i) total += m[i] / Rat(i + 1);
  }
  return total;
}

}  // namespace magnus
