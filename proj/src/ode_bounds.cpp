#include "magnus/ode_bounds.hpp"

#include "magnus/magnus_terms.hpp"

#include <algorithm>
#include <cmath>

namespace magnus {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

double cot(double x) { return std::cos(x) / std::sin(x); }

// Telescoping remainders: sum_{N>65-1} 1/(N^2-1) and sum_{N>=65} 1/(N^2-4).
const double kFarTailEven = 0.5 * (1.0 / 64 + 1.0 / 65);
const double kFarTailDeriv =
    (65.0 * 65 / (65.0 * 65 - 4)) * 0.25 *
    (1.0 / 63 + 1.0 / 64 + 1.0 / 65 + 1.0 / 66);

std::vector<Rat> abs_beta(int upto) {
  std::vector<Rat> b = beta_coeffs(upto);
  for (Rat& v : b) v = rat_abs(v);
  return b;
}

// Truncated product of coefficient vectors, degree < cut.
std::vector<Rat> mul_trunc(const std::vector<Rat>& p, const std::vector<Rat>& q,
                           int cut) {
  std::vector<Rat> r(cut, Rat(0));
  for (int i = 0; i < cut && i < (int)p.size(); ++i) {
    if (p[i] == 0) continue;
    for (int j = 0; i + j < cut && j < (int)q.size(); ++j)
      if (q[j] != 0) r[i + j] += p[i] * q[j];
  }
  return r;
}

}  // namespace

double beta_tilde(double x) {
  if (std::abs(x) < 0.5) {
    double x2 = x * x;
    return 1 + x / 2 +
           x2 * (1.0 / 12 +
                 x2 * (1.0 / 720 + x2 * (1.0 / 30240 + x2 / 1209600)));
  }
  return 2 + x / 2 - x / 2 * cot(x / 2);
}

double beta_tilde_rest(double x) {
  if (std::abs(x) < 0.5) {
    double x2 = x * x;
    return x2 * (1.0 / 12 +
                 x2 * (1.0 / 720 + x2 * (1.0 / 30240 + x2 / 1209600)));
  }
  return 1 - x / 2 * cot(x / 2);
}

double beta_tilde_rest_deriv(double x) {
  if (std::abs(x) < 0.5) {
    double x2 = x * x;
    return x * (1.0 / 6 +
                x2 * (1.0 / 180 + x2 * (1.0 / 5040 + x2 / 151200)));
  }
  double c = cot(x / 2);
  return -c / 2 + x / 4 * (1 + c * c);
}

double beta_pole_even(double x) { return x * x / (4 * kPi * kPi - x * x); }

double beta_pole_odd(double x) {
  return x * x * x / (kTwoPi * (4 * kPi * kPi - x * x));
}

double beta_half_even(double x) { return x * x / (16 * kPi * kPi - x * x); }

double beta_half_odd(double x) {
  return x * x * x / (2 * kTwoPi * (16 * kPi * kPi - x * x));
}

double beta_far_tail(double x) {
  return x * x / (2 * kPi * kPi) * kFarTailEven;
}

double beta_far(double x) {
  double s = 0;
  for (int n = 64; n >= 2; --n) {
    double d = 2 * kPi * n;
    s += 2 * x * x / (d * d - x * x);
  }
  return s + beta_far_tail(x);
}

double beta_far_deriv(double x) {
  double s = 0;
  for (int n = 64; n >= 2; --n) {
    double d = 2 * kPi * n;
    double den = d * d - x * x;
    s += 4 * x * d * d / (den * den);
  }
  return s + x / (kPi * kPi) * kFarTailDeriv;
}

double second_order_forcing(double x) {
  if (std::abs(x) < 0.25) {
    return 0.5 +
           x * (1.0 / 3 +
                x * (1.0 / 8 +
                     x * (13.0 / 720 +
                          x * (1.0 / 480 +
                               x * (19.0 / 30240 +
                                    x * (1.0 / 20160 + x * 5.0 / 241920))))));
  }
  double c = cot(x / 2);
  return 2 + x / 2 + 1 / x - 2 * c - 0.75 * x * c + 0.75 * x * c * c;
}

double lambda_weight(double lambda) {
  double u = std::abs(1 - 2 * lambda);
  if (u >= 1) return 0;
  if (u < 1e-4) return 0.5 * (1 - u * u / 3);
  return u / (2 * std::atanh(u));
}

std::vector<Rat> majorant_series(int upto) {
  std::vector<Rat> b = abs_beta(std::max(0, upto - 1));
  std::vector<Rat> psi(upto + 1, Rat(0));
  for (int k = 1; k <= upto; ++k) {
    // conv holds the s-fold convolution of psi (positive indices only),
    // truncated at degree k-1; entries below index k are already final.
    std::vector<Rat> conv(k, Rat(0));
    conv[0] = 1;
    Rat rhs = b[0] * conv[k - 1];
    for (int s = 1; s < k && s < (int)b.size(); ++s) {
      std::vector<Rat> next(k, Rat(0));
      for (int i = 0; i < k; ++i) {
        if (conv[i] == 0) continue;
        for (int l = 1; i + l < k; ++l) next[i + l] += conv[i] * psi[l];
      }
      conv = std::move(next);
      rhs += b[s] * conv[k - 1];
    }
    psi[k] = rhs / k;
  }
  return psi;
}

std::vector<Rat> majorant_defect(const std::vector<Rat>& theta) {
  int cut = (int)theta.size() - 1;
  if (cut < 1 || theta[0] != 0)
    throw std::invalid_argument("majorant_defect: series must vanish at 0");
  std::vector<Rat> d(cut, Rat(0));
  for (int i = 0; i < cut; ++i) d[i] = Rat(i + 1) * theta[i + 1];
  std::vector<Rat> b = abs_beta(cut - 1);
  std::vector<Rat> pw(cut, Rat(0));
  pw[0] = 1;
  for (int j = 0; j < (int)b.size(); ++j) {
    if (j > 0) pw = mul_trunc(pw, theta, cut);
    if (b[j] == 0) continue;
    for (int i = 0; i < cut; ++i)
      if (pw[i] != 0) d[i] -= b[j] * pw[i];
  }
  return d;
}

const std::vector<Rat>& forcing_defect() {
  static const std::vector<Rat> kDefect = {
      Rat(0),        Rat(0),        Rat(1, 24),
      Rat(1, 72),    Rat(53, 8640), Rat(11, 4320)};
  return kDefect;
}

double forcing_defect_at(double x) {
  const std::vector<Rat>& d = forcing_defect();
  double v = 0;
  for (int i = (int)d.size() - 1; i >= 0; --i) v = v * x + to_double(d[i]);
  return v;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double m,
                   double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (std::abs(delta) <= 15 * tol || b - a < 1e-13)
    return left + right + delta / 15;
  if (depth > 60) throw QuadratureFailure("adaptive refinement exhausted");
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2, depth + 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (a == b) return 0;
  double m = (a + b) / 2;
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, 0);
}

namespace {

void rk4_step(const IvpSystem& s, double x, const std::vector<double>& y,
              double h, std::vector<double>& out) {
  int n = s.dim;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), t(n);
  s.rhs(x, y.data(), k1.data());
  for (int i = 0; i < n; ++i) t[i] = y[i] + h / 2 * k1[i];
  s.rhs(x + h / 2, t.data(), k2.data());
  for (int i = 0; i < n; ++i) t[i] = y[i] + h / 2 * k2[i];
  s.rhs(x + h / 2, t.data(), k3.data());
  for (int i = 0; i < n; ++i) t[i] = y[i] + h * k3[i];
  s.rhs(x + h, t.data(), k4.data());
  for (int i = 0; i < n; ++i)
    out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

bool blown(const IvpSystem& s, const std::vector<double>& y) {
  if (!(y[0] < s.first_cap)) return true;  // also catches NaN
  for (double v : y)
    if (!(std::abs(v) < s.comp_cap)) return true;
  return false;
}

// Integrates from 0 to x_end; *ok reports whether blow-up was avoided.
std::vector<double> run_ivp(const IvpSystem& s, double x_end, bool* ok) {
  std::vector<double> y = s.y0, one(s.dim), half(s.dim), two(s.dim);
  double x = 0, h = x_end / 64;
  long steps = 0;
  *ok = true;
  while (x < x_end) {
    if (blown(s, y)) {
      *ok = false;
      return y;
    }
    if (h > x_end - x) h = x_end - x;
    rk4_step(s, x, y, h, one);
    rk4_step(s, x, y, h / 2, half);
    rk4_step(s, x + h / 2, half, h / 2, two);
    double err = 0;
    bool finite = true;
    for (int i = 0; i < s.dim; ++i) {
      if (!std::isfinite(one[i]) || !std::isfinite(two[i])) {
        finite = false;
        break;
      }
      err = std::max(err,
                     std::abs(one[i] - two[i]) / (1 + std::abs(two[i])));
    }
    if (!finite || err > s.step_tol) {
      h /= 2;
      if (h < 1e-12) {  // step underflow: the flow is past saving
        *ok = false;
        return y;
      }
      continue;
    }
    for (int i = 0; i < s.dim; ++i) y[i] = two[i] + (two[i] - one[i]) / 15;
    x += h;
    if (err < s.step_tol / 16) h *= 2;
    if (++steps > 4000000)
      throw QuadratureFailure("integration step budget exhausted");
  }
  if (blown(s, y)) *ok = false;
  return y;
}

}  // namespace

bool ivp_survives(const IvpSystem& sys, double x_end) {
  bool ok = false;
  run_ivp(sys, x_end, &ok);
  return ok;
}

std::vector<double> ivp_state(const IvpSystem& sys, double x_end) {
  bool ok = false;
  std::vector<double> y = run_ivp(sys, x_end, &ok);
  if (!ok) throw std::runtime_error("ivp_state: blow-up before requested x");
  return y;
}

double blowup_abscissa(const IvpSystem& sys, double x_max) {
  double lo = 0, hi = 0;
  bool found = false;
  for (double x = 0.25; x <= x_max + 1e-12; x += 0.25) {
    if (!ivp_survives(sys, x)) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
  }
  if (!found) throw BlowupNotFound("system stayed bounded over the scan");
  while (hi - lo > 1e-5) {
    double mid = (lo + hi) / 2;
    (ivp_survives(sys, mid) ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

IvpSystem standard_system() {
  IvpSystem s;
  s.dim = 1;
  s.y0 = {0};
  s.first_cap = kTwoPi - 1e-6;
  s.rhs = [](double, const double* y, double* dy) { dy[0] = beta_tilde(y[0]); };
  return s;
}

IvpSystem forced_system() {
  IvpSystem s;
  s.dim = 1;
  s.y0 = {0};
  s.first_cap = kTwoPi - 1e-6;
  s.rhs = [](double x, const double* y, double* dy) {
    dy[0] = beta_tilde(y[0]) - forcing_defect_at(x);
  };
  return s;
}

IvpSystem compartment_system(CompartmentVariant v) {
  IvpSystem s;
  switch (v) {
    case CompartmentVariant::simple:
      s.dim = 2;
      s.y0 = {0, 0};
      s.first_cap = kTwoPi - 1e-6;  // rest_deriv pole
      s.rhs = [](double, const double* y, double* dy) {
        double psi = y[0], rest = y[1];
        dy[0] = 1 + psi / 2 + rest;
        dy[1] = beta_tilde_rest_deriv(psi) * (1 + rest) + rest;
      };
      break;
    case CompartmentVariant::fine:
      s.dim = 4;
      s.y0 = {0, 0, 0, 0};
      s.first_cap = 2 * kTwoPi - 1e-6;  // far_deriv pole
      s.rhs = [](double, const double* y, double* dy) {
        double psi = y[0], even = y[1], odd = y[2], far = y[3];
        double gate = 1 + 2 * even + far;
        double shift = psi / kTwoPi + odd;
        dy[0] = 1 + psi / 2 + 2 * even + far;
        dy[1] = 2 / kTwoPi * shift * (1 + even) * gate + even;
        dy[2] = (2 * even + even * even + shift * shift) / kTwoPi * gate + odd;
        dy[3] = beta_far_deriv(psi) * gate + far;
      };
      break;
    case CompartmentVariant::polynomial:
      s.dim = 5;
      s.y0 = {0, 0, 0, 0, 0};
      s.rhs = [](double, const double* y, double* dy) {
        double th = y[0], e = y[1], o = y[2], ee = y[3], oo = y[4];
        // Far poles replaced by the half-scale pair; their sum contributes
        // through the constant 8(pi^2/6 - 1).
        double gate = 1 + 2 * e + 8 * (kPi * kPi / 6 - 1) * ee;
        double s1 = th / kTwoPi + o;
        double s2 = th / (2 * kTwoPi) + oo;
        dy[0] = gate + th / 2;
        dy[1] = 2 / kTwoPi * s1 * (1 + e) * gate + e;
        dy[2] = (2 * e + e * e + s1 * s1) / kTwoPi * gate + o;
        dy[3] = 2 / (2 * kTwoPi) * s2 * (1 + ee) * gate + ee;
        dy[4] = (2 * ee + ee * ee + s2 * s2) / (2 * kTwoPi) * gate + oo;
      };
      break;
  }
  return s;
}

namespace {

double inv_beta(double y) {
  if (y >= kTwoPi - 1e-12) return 0;
  return 1 / beta_tilde(y);
}

}  // namespace

double delta_standard() {
  return integrate(inv_beta, 0, kTwoPi, 1e-9);
}

ForcedBound forced_bound() {
  double delta = delta_standard();
  // Closed-form integral of the defect polynomial over [0, delta].
  const std::vector<Rat>& d = forcing_defect();
  double shift = 0;
  for (int i = (int)d.size() - 1; i >= 0; --i)
    shift = shift * delta + to_double(d[i]) / (i + 1);
  shift *= delta;
  ForcedBound out;
  out.l_hat = delta - integrate(inv_beta, 0, kTwoPi - shift, 1e-9);
  out.radius = blowup_abscissa(forced_system());
  return out;
}

double second_order_bound() {
  // Lockstep cumulative integrals: y = (inner, outer) over u in [0, 2pi).
  IvpSystem s;
  s.dim = 2;
  s.y0 = {0, 0};
  s.comp_cap = 1e30;
  s.rhs = [](double u, const double* y, double* dy) {
    dy[0] = second_order_forcing(u);
    dy[1] = 1 / std::sqrt(1 + 2 * y[0]);
  };
  double end = kTwoPi - 1e-6;
  std::vector<double> y = ivp_state(s, end);
  // The outer integrand decreases, so the clipped sliver is below
  // 1e-6 / sqrt(1 + 2 inner(end)); add it whole (it is ~1e-10).
  return y[1] + 1e-6 / std::sqrt(1 + 2 * y[0]);
}

double compartment_bound(CompartmentVariant v) {
  return blowup_abscissa(compartment_system(v));
}

double bch_region(double y) {
  if (y < 0 || y > kTwoPi)
    throw std::invalid_argument("bch_region: argument outside [0, 2pi]");
  return integrate(inv_beta, y, kTwoPi, 1e-9);
}

double bch_diag() {
  double lo = 0, hi = kTwoPi;
  while (hi - lo > 1e-6) {
    double mid = (lo + hi) / 2;
    (bch_region(mid) >= mid ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace magnus
