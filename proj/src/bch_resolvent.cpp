#include "magnus/bch_resolvent.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magnus/lie.hpp"
#include "magnus/lp.hpp"

namespace magnus {

namespace {

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

void paxpy(Poly& acc, const Rat& c, const Poly& p) {
  if (c == 0 || p.empty()) return;
  if (acc.size() < p.size()) acc.resize(p.size(), Rat(0));
  for (size_t i = 0; i < p.size(); ++i) acc[i] += c * p[i];
}

// Directed rounding to 62 significant bits. Keeps interval endpoints small
// without losing the enclosure property (up never decreases, dn never
// increases the value). Relative precision: no absolute resolution floor,
// so geometrically decaying sequences stay geometrically small.
Rat round_pos(const Rat& r, bool up) {
  Int n = numerator(r), d = denominator(r);
  long e = 61 - (static_cast<long>(msb(n)) - static_cast<long>(msb(d)));
  if (e >= 0) {
    Int m = up ? Int(((n << e) + d - 1) / d) : Int((n << e) / d);
    return Rat(m, Int(1) << e);
  }
  Int dd = d << (-e);
  Int m = up ? Int((n + dd - 1) / dd) : Int(n / dd);
  return Rat(Int(m << (-e)));
}

Rat dyadic_up(const Rat& r) {
  if (r == 0) return r;
  return r > 0 ? round_pos(r, true) : Rat(-round_pos(Rat(-r), false));
}

Rat dyadic_dn(const Rat& r) {
  if (r == 0) return r;
  return r > 0 ? round_pos(r, false) : Rat(-round_pos(Rat(-r), true));
}

// Dyadic interval with directed rounding on every operation.
struct DyI {
  Rat lo, hi;
};

DyI di_point(const Rat& v) { return {dyadic_dn(v), dyadic_up(v)}; }
DyI di_add(const DyI& a, const DyI& b) {
  return {dyadic_dn(a.lo + b.lo), dyadic_up(a.hi + b.hi)};
}
DyI di_sub(const DyI& a, const DyI& b) {
  return {dyadic_dn(a.lo - b.hi), dyadic_up(a.hi - b.lo)};
}
DyI di_mul(const DyI& a, const DyI& b) {
  Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  Rat lo = std::min(std::min(c1, c2), std::min(c3, c4));
  Rat hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return {dyadic_dn(lo), dyadic_up(hi)};
}
DyI di_mulr(const DyI& a, const Rat& c) {
  if (c >= 0) return {dyadic_dn(a.lo * c), dyadic_up(a.hi * c)};
  return {dyadic_dn(a.hi * c), dyadic_up(a.lo * c)};
}
DyI di_divk(const DyI& a, int k) {
  return {dyadic_dn(a.lo / k), dyadic_up(a.hi / k)};
}
Rat di_mag(const DyI& a) { return std::max(rat_abs(a.lo), rat_abs(a.hi)); }

Multidegree md2(int n1, int n2) {
  Multidegree m{};
  m[1] = static_cast<std::uint8_t>(n1);
  m[2] = static_cast<std::uint8_t>(n2);
  return m;
}

Word letter_word(int l) {
  Word w;
  w.push_back(l);
  return w;
}

}  // namespace

std::vector<Poly> resolvent_coeff_polys(int mmax) {
  static std::mutex mu;
  static std::vector<Poly> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(cache.size()) < mmax + 1) {
    const Poly lin = {Rat(-1), Rat(2)};          // 2s - 1
    const Poly muq = {Rat(0), Rat(1), Rat(-1)};  // s(1-s)
    std::vector<Poly> a(mmax + 1);
    a[0] = {};
    if (mmax >= 1) a[1] = {Rat(1)};
    for (int m = 1; m < mmax; ++m) {
      Poly conv;
      for (int i = 1; i <= m - 1; ++i) {
        Poly t = pmul(a[i], a[m - i]);
        paxpy(conv, Rat(1), t);
      }
      Poly nxt = pmul(lin, a[m]);
      Poly sub = pmul(muq, conv);
      paxpy(nxt, Rat(-1), sub);
      for (auto& c : nxt) c /= m + 1;
      a[m + 1] = std::move(nxt);
    }
    cache = std::move(a);
  }
  return std::vector<Poly>(cache.begin(), cache.begin() + mmax + 1);
}

std::vector<Rat> resolvent_coeff_at(int mmax, const Rat& s) {
  std::vector<Rat> a(mmax + 1, Rat(0));
  if (mmax >= 1) a[1] = 1;
  Rat lin = 2 * s - 1, muq = s * (1 - s);
  for (int m = 1; m < mmax; ++m) {
    Rat conv = 0;
    for (int i = 1; i <= m - 1; ++i) conv += a[i] * a[m - i];
    a[m + 1] = (lin * a[m] - muq * conv) / (m + 1);
  }
  return a;
}

std::map<Word, Poly> upsilon_sq_component_polys(int n1, int n2) {
  std::map<Word, Poly> out;
  if (n1 < 2 || n2 < 2) return out;
  auto a = resolvent_coeff_polys(std::max(n1, n2) - 1);
  const Poly pref = {Rat(0), Rat(0), Rat(1), Rat(-2), Rat(1)};  // (s(1-s))^2
  for (int i1 = 1; i1 <= n1 - 1; ++i1) {
    int i2 = n1 - i1;
    for (int j1 = 1; j1 <= n2 - 1; ++j1) {
      int j2 = n2 - j1;
      Word w;
      for (int t = 0; t < i1; ++t) w.push_back(1);
      for (int t = 0; t < j1; ++t) w.push_back(2);
      for (int t = 0; t < i2; ++t) w.push_back(1);
      for (int t = 0; t < j2; ++t) w.push_back(2);
      Poly c = pmul(pmul(a[i1], a[j1]), pmul(a[i2], a[j2]));
      out[w] = pmul(pref, c);
    }
  }
  return out;
}

NcPoly upsilon_sq_component(int n1, int n2, const Rat& s) {
  NcPoly p;
  for (auto& [w, poly] : upsilon_sq_component_polys(n1, n2))
    p.add(w, poly_eval(poly, s));
  return p;
}

Rat upsilon24_core_assoc(const Rat& mu) {
  if (mu < 0 || mu > Rat(1, 4)) throw std::invalid_argument("mu out of range");
  if (mu <= Rat(1, 6)) return Rat(7, 12) - 3 * mu;
  return mu - Rat(1, 12);
}

Rat upsilon24_core_lie(const Rat& mu) {
  if (mu < 0 || mu > Rat(1, 4)) throw std::invalid_argument("mu out of range");
  Rat best = Rat(7, 12) - 3 * mu;
  best = std::max(best, Rat(5, 12) - 2 * mu);
  best = std::max(best, Rat(1, 8) - mu / 2);
  best = std::max(best, Rat(17, 6) * mu - Rat(13, 24));
  return best;
}

Rat upsilon24(bool lie, const Rat& s) {
  Rat mu = s * (1 - s);
  Rat core = lie ? upsilon24_core_lie(mu) : upsilon24_core_assoc(mu);
  return mu * mu * core;
}

namespace {

// ----- certified per-cell data for the coefficient series -----
//
// For a parameter cell [lo, hi] the coefficients a_m(s) are enclosed by a
// centered form around the midpoint: exact enclosures of a_m(mid) and
// a_m'(mid) plus interval bounds A, D, E on |a_m|, |a_m'|, |a_m''| over the
// whole cell. The sum of |a_m| x^m is then bounded by a piecewise-linear
// convex function of the offset (its sup sits at a cell endpoint), with the
// quadratic Taylor remainder and the series tail folded into a constant.
// That makes the per-cell overestimate quadratic in the cell width, which is
// what lets the critical-parameter search converge.

const int kM = 104;

struct Cell {
  Rat lo, hi, mid, w;
  Rat mu_sup, b_sup;      // sup s(1-s), sup |2s-1| over the cell
  Rat mu_mid, mu_d_mid;   // s(1-s) and 1-2s at the midpoint (exact)
  std::vector<Rat> A, D, E;  // sup bounds for |a_m|, |a_m'|, |a_m''|
  std::vector<DyI> am, ad;   // enclosures of a_m(mid), a_m'(mid)
  std::vector<signed char> sig;  // sign of a_m on the cell, 0 = may flip
  std::vector<Rat> kflip;        // per-m compensation when sig = 0
  bool tail_ok = false;
  Rat tq, tCA, tCD, tCE;  // |a_m| <= CA q^m, |a'| <= CD m q^m, |a''| <= CE m^2 q^m, m > M
  Rat width() const { return w; }
};

// Inductive closure checks for the polynomially-weighted geometric tails.
// Each check verifies that the recurrence maps the claimed envelope family
// into itself for every index past M; the envelope is quadratic or cubic in
// the index, so positivity is checked up to a certified root bound.
bool tail_closure(Cell& c, int M) {
  static const Rat qs[] = {Rat(1, 4), Rat(17, 50), Rat(2, 5), Rat(51, 100)};
  for (const Rat& q : qs) {
    Rat CA = 0, qp = 1;
    for (int i = 1; i <= M; ++i) {
      qp *= q;
      CA = std::max(CA, Rat(c.A[i] / qp));
    }
    if (!(c.b_sup / (M + 1) + c.mu_sup * CA <= q)) continue;
    Rat CD = 0, CE = 0;
    qp = 1;
    for (int i = 1; i <= M; ++i) {
      qp *= q;
      CD = std::max(CD, Rat(c.D[i] / (i * qp)));
      CE = std::max(CE, Rat(c.E[i] / (i * i * qp)));
    }
    if (CD == 0) CD = Rat(1, 1000000);
    // Enlarge CE until the cubic's leading coefficient has a q/12 margin;
    // q - 2 mu CA / 3 - q/4 > q/12 holds because mu CA < q.
    {
      Rat denom = q - 2 * c.mu_sup * CA / 3 - q / 4;
      Rat floorCE = c.mu_sup * CD * CD / (3 * denom);
      CE = std::max(CE, floorCE);
      if (CE == 0) CE = Rat(1, 1000000);
    }
    // First-derivative closure: quadratic phi(m) >= 0 for m > M.
    auto phi = [&](const Rat& m) {
      return CD * q * (m + 1) * (m + 1) - c.mu_sup * CA * CD * m * (m - 1) -
             c.b_sup * CD * m - c.b_sup * CA * CA * (m - 1) - 2 * CA;
    };
    Rat L2 = CD * (q - c.mu_sup * CA);
    if (!(L2 > 0)) continue;
    Rat L1 = CD * (2 * q + c.mu_sup * CA - c.b_sup) - c.b_sup * CA * CA;
    bool ok = phi(Rat(M + 1)) >= 0;
    if (ok && L1 < 0) {
      // vertex of the quadratic may lie past M+1
      Rat vtx = -L1 / (2 * L2);
      Int vi = numerator(vtx) / denominator(vtx);
      for (Int m = vi; ok && m <= vi + 1; ++m)
        if (Rat(m) > M) ok = phi(Rat(m)) >= 0;
    }
    if (!ok) continue;
    // Second-derivative closure: cubic psi(m) >= 0 for m > M.
    Rat lead = CE * q - c.mu_sup * (2 * CA * CE + CD * CD) / 3;
    if (!(lead > 0)) continue;
    auto psi = [&](const Rat& m) {
      return CE * q * (m + 1) * (m + 1) * (m + 1) -
             c.mu_sup * (2 * CA * CE + CD * CD) * m * m * m / 3 -
             c.b_sup * CE * m * m - 2 * c.b_sup * CA * CD * m * (m - 1) -
             4 * CD * m - 2 * CA * CA * (m - 1);
    };
    // Root bound: psi(m) >= lead m^3 - G(m^2+m+1) with
    // G = max of the magnitudes of the lower coefficients, so psi > 0 once
    // m > 3G/lead + 1.
    Rat G = 3 * CE * q + c.b_sup * CE + 2 * c.b_sup * CA * CD + CE * q +
            4 * CD + 2 * CA * CA + CE * q;
    Rat root_hi = 3 * G / lead + 2;
    Int cap = numerator(root_hi) / denominator(root_hi) + 1;
    if (cap > 20000) continue;
    ok = true;
    for (Int m = M + 1; ok && m <= cap; ++m) ok = psi(Rat(m)) >= 0;
    if (!ok) continue;
    c.tq = q;
    c.tCA = dyadic_up(CA);
    c.tCD = dyadic_up(CD);
    c.tCE = dyadic_up(CE);
    c.tail_ok = true;
    return true;
  }
  c.tail_ok = false;
  return false;
}

Cell make_cell(const Rat& lo, const Rat& hi) {
  Cell c;
  c.lo = lo;
  c.hi = hi;
  c.mid = (lo + hi) / 2;
  c.w = hi - lo;
  Rat half(1, 2);
  c.mu_sup = (lo <= half && half <= hi)
                 ? Rat(1, 4)
                 : std::max(lo * (1 - lo), hi * (1 - hi));
  c.b_sup = std::max(rat_abs(1 - 2 * lo), rat_abs(1 - 2 * hi));
  c.mu_mid = c.mid * (1 - c.mid);
  c.mu_d_mid = 1 - 2 * c.mid;
  const int M = kM;
  c.A.assign(M + 1, Rat(0));
  c.D.assign(M + 1, Rat(0));
  c.E.assign(M + 1, Rat(0));
  c.A[1] = 1;
  std::vector<Rat> CAA(M + 1, Rat(0));
  for (int m = 1; m < M; ++m) {
    Rat caa = 0, cad = 0, cee = 0;
    for (int i = 1; i <= m - 1; ++i) {
      caa += c.A[i] * c.A[m - i];
      cad += c.D[i] * c.A[m - i] + c.A[i] * c.D[m - i];
      cee += c.E[i] * c.A[m - i] + 2 * c.D[i] * c.D[m - i] +
             c.A[i] * c.E[m - i];
    }
    CAA[m] = caa;
    c.A[m + 1] = dyadic_up((c.b_sup * c.A[m] + c.mu_sup * caa) / (m + 1));
    c.D[m + 1] = dyadic_up(
        (2 * c.A[m] + c.b_sup * c.D[m] + c.b_sup * caa + c.mu_sup * cad) /
        (m + 1));
    c.E[m + 1] =
        dyadic_up((4 * c.D[m] + c.b_sup * c.E[m] + 2 * caa +
                   2 * c.b_sup * cad + c.mu_sup * cee) /
                  (m + 1));
  }
  // Midpoint enclosures: value and derivative recurrences at s = mid.
  Rat beta = 2 * c.mid - 1;
  c.am.assign(M + 1, DyI{Rat(0), Rat(0)});
  c.ad.assign(M + 1, DyI{Rat(0), Rat(0)});
  c.am[1] = {Rat(1), Rat(1)};
  for (int m = 1; m < M; ++m) {
    DyI conv{Rat(0), Rat(0)}, convd{Rat(0), Rat(0)};
    for (int i = 1; i <= m - 1; ++i) {
      conv = di_add(conv, di_mul(c.am[i], c.am[m - i]));
      convd = di_add(convd, di_add(di_mul(c.ad[i], c.am[m - i]),
                                   di_mul(c.am[i], c.ad[m - i])));
    }
    DyI num = di_sub(di_mulr(c.am[m], beta), di_mulr(conv, c.mu_mid));
    c.am[m + 1] = di_divk(num, m + 1);
    DyI numd = di_add(di_mulr(c.am[m], Rat(2)), di_mulr(c.ad[m], beta));
    numd = di_add(numd, di_mulr(conv, beta));
    numd = di_sub(numd, di_mulr(convd, c.mu_mid));
    c.ad[m + 1] = di_divk(numd, m + 1);
  }
  // Sign pattern: sig[m] != 0 only when a_m provably keeps one sign on the
  // whole cell; otherwise the term is moved into the additive compensation.
  c.sig.assign(M + 1, 0);
  c.kflip.assign(M + 1, Rat(0));
  Rat hw = c.w / 2;
  for (int m = 1; m <= M; ++m) {
    Rat reach = dyadic_up(di_mag(c.ad[m]) * hw + c.E[m] * hw * hw / 2);
    if (c.am[m].lo > reach)
      c.sig[m] = 1;
    else if (c.am[m].hi < -reach)
      c.sig[m] = -1;
    else
      c.kflip[m] = dyadic_up(di_mag(c.am[m]) + di_mag(c.ad[m]) * hw);
  }
  tail_closure(c, M);
  return c;
}

const Rat kHuge = Rat(1000000000);

// Tail sums: sum_{m>M} r^m and sum_{m>M} m^2 r^m in closed form.
Rat tail_geo(const Rat& r, int M) {
  Rat tp = 1;
  for (int i = 0; i <= M; ++i) tp = dyadic_up(tp * r);
  return dyadic_up(tp / (1 - r));
}

Rat tail_geo_m2(const Rat& r, int M) {
  Rat tp = 1;
  for (int i = 0; i <= M; ++i) tp = dyadic_up(tp * r);
  Rat num = Rat(M + 1) * (M + 1) - (2 * Rat(M) * M + 2 * M - 1) * r +
            Rat(M) * M * r * r;
  Rat den = (1 - r) * (1 - r) * (1 - r);
  return dyadic_up(tp * num / den);
}

// Corner pieces for the cell: four polynomials in the offset d from the
// cell midpoint, each of the form (mu_mid + mu' d - d^2)(a + kappa + b d)^2
// with (a, b) an interval corner of the signed coefficient sums. For every
// offset each piece is nonnegative and their max dominates mu(s) h(s)^2,
// h = sum |a_m| x^m, so the corner sweep stays sound after squaring. The
// signed midpoint linearization keeps the pieces quadratically tight in the
// cell width.
bool q_pieces(const Cell& c, const Rat& x, Poly out[4], Rat* hw_out) {
  if (!c.tail_ok) return false;
  Rat r = dyadic_up(c.tq * x);
  if (r >= 1) return false;
  const int M = static_cast<int>(c.A.size()) - 1;
  DyI alpha{Rat(0), Rat(0)}, beta{Rat(0), Rat(0)};
  Rat kf = 0, he = 0;
  DyI xp{Rat(1), Rat(1)};
  DyI xi = di_point(x);
  for (int m = 1; m <= M; ++m) {
    xp = di_mul(xp, xi);
    if (c.sig[m] != 0) {
      DyI t = di_mulr(c.am[m], Rat(c.sig[m]));
      alpha = di_add(alpha, di_mul(t, xp));
      DyI td = di_mulr(c.ad[m], Rat(c.sig[m]));
      beta = di_add(beta, di_mul(td, xp));
    } else {
      kf = dyadic_up(kf + c.kflip[m] * xp.hi);
    }
    he = dyadic_up(he + c.E[m] * xp.hi);
  }
  Rat hw = c.w / 2;
  Rat kappa = dyadic_up(kf + (he + c.tCE * tail_geo_m2(r, M)) * hw * hw / 2 +
                        c.tCA * tail_geo(r, M));
  Poly mu_poly = {c.mu_mid, c.mu_d_mid, Rat(-1)};
  int idx = 0;
  for (int ca = 0; ca < 2; ++ca) {
    for (int cb = 0; cb < 2; ++cb) {
      Rat a = (ca ? alpha.hi : alpha.lo) + kappa;
      Rat b = cb ? beta.hi : beta.lo;
      Poly sq = {a * a, 2 * a * b, b * b};
      out[idx++] = pmul(mu_poly, sq);
    }
  }
  *hw_out = hw;
  return true;
}

// Certified upper bound for mu(s) h(s)^2 over the cell.
Rat q_sup(const Cell& c, const Rat& x) {
  Poly pieces[4];
  Rat hw;
  if (!q_pieces(c, x, pieces, &hw)) return kHuge;
  Rat best = 0;
  for (int i = 0; i < 4; ++i)
    best = std::max(best, poly_sup_on(pieces[i], Rat(-hw), hw));
  return best;
}

// Lower bound on mu h^2 at an exact parameter point (for upper bounds on the
// per-point threshold). Tail dropped, rounding directed down.
struct PointData {
  std::vector<Rat> abs_lo;
  Rat mu_lo;
};

PointData make_point(const Rat& s) {
  PointData p;
  const int M = kM;
  std::vector<DyI> a(M + 1, DyI{Rat(0), Rat(0)});
  a[1] = {Rat(1), Rat(1)};
  Rat beta = 2 * s - 1, mu = s * (1 - s);
  for (int m = 1; m < M; ++m) {
    DyI conv{Rat(0), Rat(0)};
    for (int i = 1; i <= m - 1; ++i)
      conv = di_add(conv, di_mul(a[i], a[m - i]));
    a[m + 1] = di_divk(di_sub(di_mulr(a[m], beta), di_mulr(conv, mu)), m + 1);
  }
  p.abs_lo.assign(M + 1, Rat(0));
  for (int m = 1; m <= M; ++m) {
    if (a[m].lo > 0)
      p.abs_lo[m] = a[m].lo;
    else if (a[m].hi < 0)
      p.abs_lo[m] = -a[m].hi;
  }
  p.mu_lo = dyadic_dn(mu);
  return p;
}

Rat point_q_low(const PointData& p, const Rat& x) {
  Rat f = 0;
  const int M = static_cast<int>(p.abs_lo.size()) - 1;
  for (int m = M; m >= 1; --m) f = dyadic_dn((f + p.abs_lo[m]) * x);
  return dyadic_dn(p.mu_lo * dyadic_dn(f * f));
}

// Largest x in [0, cap] with value(x) < 1 (value nondecreasing); the return
// is certified passing. With ret_hi the first failing x is returned instead.
template <class F>
Rat bisect_threshold(F&& value, const Rat& cap, int rounds, bool ret_hi) {
  if (value(cap) < 1) return ret_hi ? kHuge : cap;
  Rat lo = 0, hi = cap;
  for (int i = 0; i < rounds; ++i) {
    Rat mid = (lo + hi) / 2;
    if (value(mid) < 1)
      lo = mid;
    else
      hi = mid;
  }
  return ret_hi ? hi : lo;
}

// ----- per-component correction machinery -----

struct Component {
  int n1 = 0, n2 = 0, d = 0;
  std::map<Word, Poly> polys;  // coefficient polynomials, prefactor included
  std::vector<Word> rows;
  std::vector<Poly> theta;  // presentation costs; exact for every parameter
  bool built = false;
  std::map<std::pair<Rat, Rat>, Rat> gcache;
  std::map<std::pair<Rat, Rat>, Poly> gpoly;  // sign-resolved gain lower bound
};

// Restricted column pool for large bidegrees: every word, all products with
// one bracket factor (bracket degree <= cap1), and all products with two
// bracket factors (combined degree <= cap2). Always feasible via the words.
std::vector<NcPoly> restricted_pool(int n1, int n2, int cap1, int cap2) {
  std::vector<NcPoly> pool;
  std::set<std::string> seen;
  auto push = [&](const std::vector<BTreePtr>& fs, const NcPoly& exp) {
    if (exp.is_zero()) return;
    if (!seen.insert(product_str(fs)).second) return;
    pool.push_back(exp);
  };
  for (const Word& w : words_of_multidegree(md2(n1, n2))) {
    std::vector<BTreePtr> fs;
    for (int i = 0; i < w.size(); ++i) fs.push_back(bt_leaf(w.letter(i)));
    push(fs, NcPoly(w));
  }
  auto singleton_split = [&](int r1, int r2) {
    return words_of_multidegree(md2(r1, r2));
  };
  for (int a = 0; a <= n1; ++a) {
    for (int b = 0; b <= n2; ++b) {
      if (a + b < 2 || a + b > cap1) continue;
      auto classes = bracket_sign_classes(md2(a, b));
      if (classes.empty()) continue;
      for (const Word& u : singleton_split(n1 - a, n2 - b)) {
        for (int pos = 0; pos <= u.size(); ++pos) {
          for (auto& cl : classes) {
            std::vector<BTreePtr> fs;
            NcPoly pre(Word{});
            for (int i = 0; i < pos; ++i) {
              fs.push_back(bt_leaf(u.letter(i)));
              pre = pre * NcPoly(letter_word(u.letter(i)));
            }
            fs.push_back(cl.tree);
            NcPoly exp = pre * cl.expansion;
            for (int i = pos; i < u.size(); ++i) {
              fs.push_back(bt_leaf(u.letter(i)));
              exp = exp * NcPoly(letter_word(u.letter(i)));
            }
            push(fs, exp);
          }
        }
      }
    }
  }
  for (int a1 = 0; a1 <= n1; ++a1) {
    for (int b1 = 0; b1 <= n2; ++b1) {
      if (a1 + b1 < 2) continue;
      for (int a2 = 0; a2 + a1 <= n1; ++a2) {
        for (int b2 = 0; b2 + b1 <= n2; ++b2) {
          if (a2 + b2 < 2 || a1 + b1 + a2 + b2 > cap2) continue;
          auto cls1 = bracket_sign_classes(md2(a1, b1));
          auto cls2 = bracket_sign_classes(md2(a2, b2));
          if (cls1.empty() || cls2.empty()) continue;
          int r1 = n1 - a1 - a2, r2 = n2 - b1 - b2;
          for (const Word& u : singleton_split(r1, r2)) {
            for (int p1 = 0; p1 <= u.size(); ++p1) {
              for (int p2 = p1; p2 <= u.size(); ++p2) {
                for (auto& c1 : cls1) {
                  for (auto& c2 : cls2) {
                    std::vector<BTreePtr> fs;
                    NcPoly exp(Word{});
                    for (int i = 0; i < p1; ++i) {
                      fs.push_back(bt_leaf(u.letter(i)));
                      exp = exp * NcPoly(letter_word(u.letter(i)));
                    }
                    fs.push_back(c1.tree);
                    exp = exp * c1.expansion;
                    for (int i = p1; i < p2; ++i) {
                      fs.push_back(bt_leaf(u.letter(i)));
                      exp = exp * NcPoly(letter_word(u.letter(i)));
                    }
                    fs.push_back(c2.tree);
                    exp = exp * c2.expansion;
                    for (int i = p2; i < u.size(); ++i) {
                      fs.push_back(bt_leaf(u.letter(i)));
                      exp = exp * NcPoly(letter_word(u.letter(i)));
                    }
                    push(fs, exp);
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return pool;
}

const Rat kProbe = Rat(2869, 8000);

// Solve the restricted minimal-presentation problem at the probe parameter by
// column generation, then freeze a square basis and pull the presentation
// coefficients back through it as polynomials: the resulting presentation is
// exact for every parameter value, so its cost bounds the factored norm on
// whole cells at once.
void build_component_basis(Component& comp, long& gain_solves) {
  comp.rows = words_of_multidegree(md2(comp.n1, comp.n2));
  const int m = static_cast<int>(comp.rows.size());
  std::map<Word, int> rowidx;
  for (int i = 0; i < m; ++i) rowidx[comp.rows[i]] = i;

  std::vector<NcPoly> pool;
  if (comp.d <= 7) {
    for (auto& pc : product_columns(md2(comp.n1, comp.n2)))
      pool.push_back(pc.expansion);
  } else {
    int cap1 = comp.d >= 9 ? 5 : 6, cap2 = comp.d >= 9 ? 4 : 6;
    pool = restricted_pool(comp.n1, comp.n2, cap1, cap2);
  }
  std::vector<std::vector<std::pair<int, Rat>>> coords(pool.size());
  std::vector<int> word_cols;
  for (size_t j = 0; j < pool.size(); ++j) {
    for (auto& [w, c] : pool[j].terms) coords[j].push_back({rowidx.at(w), c});
    if (coords[j].size() == 1 && coords[j][0].second == 1)
      word_cols.push_back(static_cast<int>(j));
  }

  std::vector<Rat> target(m, Rat(0));
  for (auto& [w, poly] : comp.polys) target[rowidx.at(w)] = poly_eval(poly, kProbe);

  std::vector<int> active = word_cols;
  std::vector<char> in_active(pool.size(), 0);
  for (int j : active) in_active[j] = 1;
  LpSolution sol;
  for (int round = 0; round < 80; ++round) {
    LpProblem lp;
    lp.rows = comp.rows;
    lp.target = target;
    lp.cols.reserve(active.size());
    for (int j : active) {
      std::vector<Rat> dense(m, Rat(0));
      for (auto& [i, c] : coords[j]) dense[i] = c;
      lp.cols.push_back(std::move(dense));
    }
    sol = solve_l1_min(lp);
    ++gain_solves;
    std::vector<std::pair<Rat, int>> viol;
    for (size_t j = 0; j < pool.size(); ++j) {
      if (in_active[j]) continue;
      Rat v = 0;
      for (auto& [i, c] : coords[j]) v += sol.dual[i] * c;
      Rat excess = rat_abs(v) - 1;
      if (excess > 0) viol.push_back({excess, static_cast<int>(j)});
    }
    if (viol.empty()) break;
    std::sort(viol.begin(), viol.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    // Keep the solves small: once the active set gets large, trim it to the
    // support (which keeps the next restricted problem feasible and no worse
    // than the last) before admitting the next batch.
    if (active.size() > 800) {
      std::vector<int> keep;
      for (size_t k = 0; k < active.size(); ++k)
        if (sol.theta[k] != 0) keep.push_back(active[k]);
      std::fill(in_active.begin(), in_active.end(), 0);
      for (int j : keep) in_active[j] = 1;
      active = std::move(keep);
    }
    int take = std::min<int>(150, static_cast<int>(viol.size()));
    for (int t = 0; t < take; ++t) {
      int j = viol[t].second;
      if (in_active[j]) continue;
      active.push_back(j);
      in_active[j] = 1;
    }
  }

  // Support columns plus unit completions form a square invertible basis.
  std::vector<int> support;
  for (size_t k = 0; k < active.size(); ++k)
    if (sol.theta[k] != 0) support.push_back(active[k]);
  std::vector<std::vector<Rat>> basis_cols;
  for (int j : support) {
    std::vector<Rat> dense(m, Rat(0));
    for (auto& [i, c] : coords[j]) dense[i] = c;
    basis_cols.push_back(std::move(dense));
  }
  {
    std::vector<std::vector<Rat>> work = basis_cols;
    std::vector<char> row_used(m, 0);
    for (auto& col : work) {
      int piv = -1;
      for (int i = 0; i < m; ++i)
        if (!row_used[i] && col[i] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;  // dependent support column; harmless
      row_used[piv] = 1;
      for (auto& other : work) {
        if (&other == &col || other[piv] == 0) continue;
        Rat f = other[piv] / col[piv];
        for (int i = 0; i < m; ++i) other[i] -= f * col[i];
      }
    }
    for (int i = 0; i < m; ++i) {
      if (row_used[i]) continue;
      std::vector<Rat> unit(m, Rat(0));
      unit[i] = 1;
      basis_cols.push_back(std::move(unit));
    }
  }
  if (static_cast<int>(basis_cols.size()) < m)
    throw std::logic_error("component basis: rank completion failed");
  // Invert B (rows x columns = m x m) by Gauss-Jordan.
  std::vector<std::vector<Rat>> aug(m, std::vector<Rat>(2 * m, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) aug[i][j] = basis_cols[j][i];
    aug[i][m + i] = 1;
  }
  for (int cpos = 0; cpos < m; ++cpos) {
    int piv = -1;
    for (int i = cpos; i < m; ++i)
      if (aug[i][cpos] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::logic_error("component basis: singular");
    std::swap(aug[cpos], aug[piv]);
    Rat d = aug[cpos][cpos];
    for (int j = 0; j < 2 * m; ++j) aug[cpos][j] /= d;
    for (int i = 0; i < m; ++i) {
      if (i == cpos || aug[i][cpos] == 0) continue;
      Rat f = aug[i][cpos];
      for (int j = 0; j < 2 * m; ++j) aug[i][j] -= f * aug[cpos][j];
    }
  }
  // theta_i = row i of B^-1 dotted with the target polynomial vector.
  std::vector<Poly> target_polys(m);
  for (auto& [w, poly] : comp.polys) target_polys[rowidx.at(w)] = poly;
  comp.theta.assign(m, Poly{});
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      paxpy(comp.theta[i], aug[i][m + k], target_polys[k]);

  // Reconstruction check: the presentation must reproduce the component's
  // coefficient polynomials identically.
  std::map<Word, Poly> recon;
  for (int i = 0; i < m; ++i) {
    if (comp.theta[i].empty()) continue;
    const auto& col = basis_cols[i];
    for (int r = 0; r < m; ++r)
      if (col[r] != 0) paxpy(recon[comp.rows[r]], col[r], comp.theta[i]);
  }
  auto normalized = [](Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
  };
  for (int r = 0; r < m; ++r) {
    Poly want;
    auto it = comp.polys.find(comp.rows[r]);
    if (it != comp.polys.end()) want = it->second;
    Poly got;
    auto it2 = recon.find(comp.rows[r]);
    if (it2 != recon.end()) got = it2->second;
    if (normalized(want) != normalized(got))
      throw std::logic_error("component basis: presentation mismatch");
  }
  comp.built = true;
}

Rat sup_abs_poly(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.empty()) return 0;
  if (lo == hi) return rat_abs(poly_eval(p, lo));
  return std::max(poly_sup_on(p, lo, hi), Rat(-poly_inf_on(p, lo, hi)));
}

Rat inf_abs_poly(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.empty()) return 0;
  if (lo == hi) return rat_abs(poly_eval(p, lo));
  Rat up = poly_sup_on(p, lo, hi), dn = poly_inf_on(p, lo, hi);
  Rat r = std::max(dn, Rat(-up));
  return r > 0 ? r : Rat(0);
}

// Certified lower bound on the word-vs-factored norm gap of the component
// over a parameter cell; by the s <-> 1-s sign symmetry of the coefficients
// the gap only depends on min(s, 1-s), and cells are kept on that side.
Rat component_gain(Component& comp, const Rat& lo, const Rat& hi,
                   long& gain_solves) {
  auto key = std::make_pair(lo, hi);
  auto it = comp.gcache.find(key);
  if (it != comp.gcache.end()) return it->second;
  if (!comp.built) build_component_basis(comp, gain_solves);
  Rat assoc_inf = 0;
  for (auto& [w, poly] : comp.polys) assoc_inf += inf_abs_poly(poly, lo, hi);
  Rat cost_sup = 0;
  for (auto& th : comp.theta) cost_sup += sup_abs_poly(th, lo, hi);
  Rat g = assoc_inf - cost_sup;
  if (g < 0) g = 0;
  comp.gcache[key] = g;
  return g;
}

// Polynomial lower bound for the gap on the cell. Where the coefficient and
// cost polynomials have constant sign the absolute values resolve exactly,
// so the bound tracks the pointwise gap to second order in the cell width;
// sign-ambiguous terms fall back to constants. A possibly-negative result
// falls back to the constant bound, which is clamped at zero.
const Poly& component_gain_poly(Component& comp, const Rat& lo, const Rat& hi,
                                long& gain_solves) {
  auto key = std::make_pair(lo, hi);
  auto it = comp.gpoly.find(key);
  if (it != comp.gpoly.end()) return it->second;
  if (!comp.built) build_component_basis(comp, gain_solves);
  Poly g;
  for (auto& [w, poly] : comp.polys) {
    if (poly_inf_on(poly, lo, hi) > 0)
      paxpy(g, Rat(1), poly);
    else if (poly_sup_on(poly, lo, hi) < 0)
      paxpy(g, Rat(-1), poly);
    // ambiguous sign: pointwise |.| >= 0, contributes nothing
  }
  for (auto& th : comp.theta) {
    if (poly_inf_on(th, lo, hi) > 0)
      paxpy(g, Rat(-1), th);
    else if (poly_sup_on(th, lo, hi) < 0)
      paxpy(g, Rat(1), th);
    else {
      if (g.empty()) g.resize(1, Rat(0));
      g[0] -= sup_abs_poly(th, lo, hi);
    }
  }
  if (g.empty() || poly_inf_on(g, lo, hi) < 0)
    g = Poly{component_gain(comp, lo, hi, gain_solves)};
  return comp.gpoly.emplace(key, std::move(g)).first->second;
}

struct ScanState {
  std::vector<Component> comps;  // canonical n1 <= n2; mirrors via mult
  std::vector<int> mult;
  bool corrections = false;
  long cells = 0;
  long gain_solves = 0;
  std::map<std::pair<Rat, Rat>, Cell> cache;

  const Cell& cell_at(const Rat& lo, const Rat& hi) {
    auto key = std::make_pair(lo, hi);
    auto it = cache.find(key);
    if (it == cache.end()) {
      ++cells;
      it = cache.emplace(key, make_cell(lo, hi)).first;
    }
    return it->second;
  }
};

// Criterion value on a cell: squared envelope minus certified gains; the
// scan passes the cell when this is < 1 for every parameter in it. The
// letter-swap relabeling is an isometry, so the gain of the (n2, n1)
// component equals that of (n1, n2); mult carries the pair. Gains are
// subtracted inside the piecewise evaluation as polynomials in the offset,
// keeping the criterion quadratically tight in the cell width.
Rat cell_criterion(const Cell& c, const Rat& x, ScanState& st) {
  Rat qs = q_sup(c, x);
  if (qs >= kHuge) return kHuge;
  Rat v = qs * qs;
  if (v < 1 || !st.corrections) return v;
  Poly gd;  // total correction, polynomial in the offset from the midpoint
  for (size_t k = 0; k < st.comps.size(); ++k) {
    const Poly& gl =
        component_gain_poly(st.comps[k], c.lo, c.hi, st.gain_solves);
    if (gl.empty() || (gl.size() == 1 && gl[0] == 0)) continue;
    Rat xp = st.mult[k];
    for (int t = 0; t < st.comps[k].d; ++t) xp *= x;
    paxpy(gd, xp, poly_compose_affine(gl, c.mid, Rat(1)));
  }
  if (gd.empty()) return v;
  Poly pieces[4];
  Rat hw;
  if (!q_pieces(c, x, pieces, &hw)) return kHuge;
  Rat best = 0;
  for (int i = 0; i < 4; ++i) {
    Poly p = pmul(pieces[i], pieces[i]);
    if (p.size() < gd.size()) p.resize(gd.size(), Rat(0));
    for (size_t j = 0; j < gd.size(); ++j) p[j] -= gd[j];
    best = std::max(best, poly_sup_on(p, Rat(-hw), hw));
  }
  return best;
}

const Rat kMinWidth = Rat(1, 1 << 24);

// Everything scanned is symmetric under s -> 1-s (coefficient magnitudes,
// the envelope, and the component gains), so only [0, 1/2] is covered.
bool scan(const Rat& x, int lambda_steps, ScanState& st, bool collect,
          Rat* hull_lo, Rat* hull_hi) {
  std::vector<std::pair<Rat, Rat>> work;
  for (int i = 0; i < lambda_steps / 2; ++i)
    work.push_back({rat(i, lambda_steps), rat(i + 1, lambda_steps)});
  bool ok = true;
  Rat flo = 1, fhi = 0;
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    const Cell& c = st.cell_at(lo, hi);
    if (cell_criterion(c, x, st) < 1) continue;
    if (hi - lo > kMinWidth) {
      Rat mid = (lo + hi) / 2;
      work.push_back({lo, mid});
      work.push_back({mid, hi});
      continue;
    }
    ok = false;
    if (!collect) return false;
    flo = std::min(flo, lo);
    fhi = std::max(fhi, hi);
  }
  if (collect && !ok) {
    *hull_lo = flo;
    *hull_hi = fhi;
  }
  return ok;
}

}  // namespace

BchResolventResult bch_resolvent_bound(int deg_cap, bool corrections,
                                       int lambda_steps) {
  if (lambda_steps < 4 || lambda_steps % 2 != 0)
    throw std::invalid_argument("lambda_steps must be even and >= 4");
  BchResolventResult res;
  res.corrections = corrections;
  res.deg_cap = deg_cap;
  ScanState st;
  st.corrections = corrections;
  if (corrections) {
    for (int d = 4; d <= deg_cap; ++d)
      for (int n1 = 2; 2 * n1 <= d; ++n1) {
        Component c;
        c.n1 = n1;
        c.n2 = d - n1;
        c.d = d;
        c.polys = upsilon_sq_component_polys(c.n1, c.n2);
        st.comps.push_back(std::move(c));
        st.mult.push_back(n1 == d - n1 ? 1 : 2);
      }
  }

  if (corrections) {
    Rat xlo = Rat(7, 5), xhi = Rat(8, 5);
    while (xlo > Rat(1, 2) &&
           !scan(xlo, lambda_steps, st, false, nullptr, nullptr))
      xlo -= Rat(1, 5);
    while (xhi < 3 && scan(xhi, lambda_steps, st, false, nullptr, nullptr)) {
      xlo = xhi;
      xhi += Rat(1, 5);
    }
    for (int i = 0; i < 20; ++i) {
      Rat mid = (xlo + xhi) / 2;
      if (scan(mid, lambda_steps, st, false, nullptr, nullptr))
        xlo = mid;
      else
        xhi = mid;
    }
    res.x_certified = xlo;
    res.bound = 2 * xlo;
    // Critical-parameter localization is owned by the corrections-off
    // branch-and-bound; a collect pass here would grind the whole
    // near-critical region down to minimum cell width for no gain.
    res.critical_lo = 0;
    res.critical_hi = Rat(1, 2);
  } else {
    // Branch and bound over parameter cells: per-cell certified threshold
    // bisection gives lower bounds, point evaluations give upper bounds.
    auto lb_of = [&](const Cell& c) {
      return bisect_threshold([&](const Rat& x) { return q_sup(c, x); },
                              Rat(3), 44, false);
    };
    auto ub_at = [&](const Rat& s) {
      PointData pt = make_point(s);
      return bisect_threshold([&](const Rat& x) { return point_q_low(pt, x); },
                              Rat(3), 44, true);
    };
    std::multimap<Rat, Cell> live;
    for (int i = 0; i < lambda_steps / 2; ++i) {
      Cell c = make_cell(rat(i, lambda_steps), rat(i + 1, lambda_steps));
      ++st.cells;
      live.insert({lb_of(c), std::move(c)});
    }
    Rat best_ub = ub_at(kProbe);
    Rat w_stop = Rat(1, 1 << 21);
    std::vector<std::pair<Rat, Cell>> final_cells;
    Rat pruned_min = kHuge;
    Rat hlo = 1, hhi = 0;
    for (int round = 0; round < 3; ++round) {
      for (long iter = 0; iter < 200000 && !live.empty(); ++iter) {
        auto top = live.begin();
        Rat lb = top->first;
        Cell c = std::move(top->second);
        live.erase(top);
        if (lb > best_ub) {
          pruned_min = std::min(pruned_min, lb);
          break;  // everything remaining is certified past best_ub
        }
        if (c.width() <= w_stop) {
          final_cells.push_back({lb, std::move(c)});
          continue;
        }
        Rat mid = (c.lo + c.hi) / 2;
        Cell l = make_cell(c.lo, mid);
        Cell r = make_cell(mid, c.hi);
        st.cells += 2;
        Rat ub = ub_at(mid);
        if (ub < best_ub) best_ub = ub;
        live.insert({lb_of(l), std::move(l)});
        live.insert({lb_of(r), std::move(r)});
      }
      hlo = 1;
      hhi = 0;
      for (auto& [lb, c] : final_cells) {
        if (lb <= best_ub) {
          hlo = std::min(hlo, c.lo);
          hhi = std::max(hhi, c.hi);
        }
      }
      if (hhi - hlo <= Rat(8, 1000000) || round == 2) break;
      for (auto& fc : final_cells) live.insert(fc);
      final_cells.clear();
      w_stop /= 4;
    }
    Rat xmin = pruned_min;
    for (auto& [lb, c] : live) xmin = std::min(xmin, lb);
    for (auto& [lb, c] : final_cells) xmin = std::min(xmin, lb);
    res.x_certified = xmin;
    res.bound = 2 * xmin;
    res.critical_lo = hlo;
    res.critical_hi = hhi;
  }
  res.cells = st.cells;
  res.gain_solves = st.gain_solves;
  return res;
}

}  // namespace magnus
