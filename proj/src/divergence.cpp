#include "magnus/divergence.hpp"

#include "magnus/norms.hpp"

#include <cmath>
#include <limits>

namespace magnus {
namespace {

const double kSqrt2 = std::sqrt(2.0);

void add_term(WitnessElem& out, char kind, int degree, const Rat& c) {
  if (c == 0) return;
  Rat& slot = out[{kind, degree}];
  slot += c;
  if (slot == 0) out.erase({kind, degree});
}

}  // namespace

WitnessElem witness_bracket(const WitnessElem& u, const WitnessElem& v) {
  WitnessElem out;
  for (const auto& [ku, cu] : u) {
    for (const auto& [kv, cv] : v) {
      int d = ku.second + kv.second;
      Rat c = cu * cv;
      char a = ku.first, b = kv.first;
      if (a == 'x' && b == 'y') add_term(out, 'b', d, c);
      else if (a == 'y' && b == 'x') add_term(out, 'b', d, -c);
      else if (a == 'b' && b == 'x') add_term(out, 'x', d, 2 * c);
      else if (a == 'x' && b == 'b') add_term(out, 'x', d, -2 * c);
      else if (a == 'y' && b == 'b') add_term(out, 'y', d, 2 * c);
      else if (a == 'b' && b == 'y') add_term(out, 'y', d, -2 * c);
      // matching kinds commute
    }
  }
  return out;
}

Rat witness_generator_norm(char kind, int degree) {
  if (kind == 'x' || kind == 'y') {
    if (degree < 1 || degree % 2 == 0)
      throw std::invalid_argument("witness_generator_norm: odd degree required");
    return Rat(1, Int(1) << ((degree - 1) / 2));
  }
  if (kind == 'b') {
    if (degree < 2 || degree % 2 == 1)
      throw std::invalid_argument("witness_generator_norm: even degree required");
    return Rat(2, Int(1) << (degree / 2));
  }
  throw std::invalid_argument("witness_generator_norm: unknown kind");
}

Rat witness_norm(const WitnessElem& e) {
  Rat s = 0;
  for (const auto& [k, c] : e)
    s += rat_abs(c) * witness_generator_norm(k.first, k.second);
  return s;
}

WitnessElem witness_reduce(const NcPoly& p) {
  WitnessElem total;
  for (const auto& [w, c] : p.terms) {
    int n = w.size();
    if (n == 0) continue;
    WitnessElem acc;
    for (int i = n - 1; i >= 0; --i) {
      int l = w.letter(i);
      if (l != 1 && l != 2)
        throw std::invalid_argument("witness_reduce: letters 1 and 2 only");
      WitnessElem gen = {{{l == 1 ? 'x' : 'y', 1}, Rat(1)}};
      acc = i == n - 1 ? gen : witness_bracket(gen, acc);
    }
    for (const auto& [k, v] : acc) add_term(total, k.first, k.second, c * v / n);
  }
  return total;
}

double xi_partial(double t, int K) {
  double odd = 2 * t;  // coefficient-weighted t^{2k+1} term, k = 0
  double total = 0;
  for (int k = 0; k <= K; ++k) {
    total += odd * (1 + t / 4);  // the even term is t/4 times the odd one
    odd *= t * t * (k + 1) / (4.0 * (2 * k + 3));
  }
  return total;
}

double xi_closed(double t) {
  double edge = 2 * kSqrt2;
  if (t >= edge) return std::numeric_limits<double>::infinity();
  return 4 * (4 + t) * std::asin(t / edge) / std::sqrt(8 - t * t);
}

double sl2_check(double t) {
  // Product of the two unipotent exponentials; symmetric with determinant 1.
  double m00 = 1 + t * t / 2, m01 = t / kSqrt2, m11 = 1;
  double phi = 0.5 * std::atan2(2 * m01, m00 - m11);
  double c = std::cos(phi), s = std::sin(phi);
  double l1 = c * c * m00 + 2 * c * s * m01 + s * s * m11;
  double l2 = s * s * m00 - 2 * c * s * m01 + c * c * m11;
  if (!(l1 > 0) || !(l2 > 0))
    throw LogBranchFailure("sl2_check: spectrum leaves the positive axis");
  double g1 = std::log(l1), g2 = std::log(l2);
  double log00 = c * c * g1 + s * s * g2;
  double log01 = c * s * (g1 - g2);
  double log11 = s * s * g1 + c * c * g2;

  double pre = 2 * std::asinh(t / (2 * kSqrt2)) / std::sqrt(8 + t * t);
  double r = std::abs(log00 - pre * t);
  r = std::max(r, std::abs(log01 - pre * 2 * kSqrt2));
  r = std::max(r, std::abs(log11 + pre * t));
  return r;
}

UpperBoundsReport upper_bounds_report() {
  UpperBoundsReport rep;
  rep.diagonal_divergence = 2 * kSqrt2;
  rep.pair_norm_bound = 4 * kSqrt2;
  rep.radius_upper = 4;
  rep.halving_degree = 5;
  rep.halving_lhs = theta_assoc(5) / 16;
  rep.halving_rhs = theta_lie(5);
  for (int d = 1; d <= 9; d += 2) {
    rep.generator_norms.push_back(
        {"x" + std::to_string(d), witness_generator_norm('x', d)});
    rep.generator_norms.push_back(
        {"y" + std::to_string(d), witness_generator_norm('y', d)});
  }
  for (int d = 2; d <= 10; d += 2)
    rep.generator_norms.push_back(
        {"b" + std::to_string(d), witness_generator_norm('b', d)});
  return rep;
}

}  // namespace magnus
