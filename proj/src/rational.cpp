#include "magnus/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace magnus {

std::string rat_str(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

double to_double(const Rat& x) { return x.convert_to<double>(); }

Rat rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite");
  bool neg = x < 0;
  double v = neg ? -x : x;
  // Stern-Brocot style continued fraction expansion.
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    Int a(static_cast<long long>(fl));
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r(p1, q1 == 0 ? Int(1) : q1);
  return neg ? Rat(-r) : r;
}

Rat factorial(int n) {
  Rat r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rat binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rat r = 1;
  for (int i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
  return r;
}

Rat nth_root_bound(const Rat& x, int p, bool lower, const Rat& tol) {
  if (x < 0) throw std::invalid_argument("nth_root_bound: negative");
  if (x == 0) return 0;
  double guess = std::pow(to_double(x), 1.0 / p);
  Rat lo = rationalize(guess * 0.5), hi = rationalize(guess * 2.0 + 1.0);
  auto pow_p = [&](const Rat& r) { Rat v = 1; for (int i = 0; i < p; ++i) v *= r; return v; };
  while (pow_p(lo) > x) lo /= 2;
  while (pow_p(hi) < x) hi *= 2;
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    if (pow_p(mid) <= x) lo = mid; else hi = mid;
  }
  return lower ? lo : hi;
}

Rat log_lower(const Rat& x, int terms) {
  if (x <= 1) throw std::invalid_argument("log_lower: needs x > 1");
  Rat z = (x - 1) / (x + 1);
  Rat z2 = z * z, term = z, sum = 0;
  for (int i = 0; i < terms; ++i) {
    sum += term / (2 * i + 1);
    term *= z2;
  }
  return 2 * sum;  // partial sum of positive series: certified lower bound
}

Rat exp_lower(const Rat& x, int terms) {
  Rat term = 1, sum = 1;
  for (int i = 1; i <= terms; ++i) { term *= x; term /= i; sum += term; }
  return sum;
}

Rat exp_upper(const Rat& x, int terms) {
  if (x >= terms) throw std::invalid_argument("exp_upper: x too large for term count");
  Rat term = 1, sum = 1;
  for (int i = 1; i < terms; ++i) { term *= x; term /= i; sum += term; }
  // geometric tail bound: remaining terms <= term * x/terms / (1 - x/terms)
  Rat q = x / terms;
  sum += term * q / (1 - q);
  return sum;
}

}  // namespace magnus
