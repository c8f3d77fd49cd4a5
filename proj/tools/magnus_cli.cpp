#include "magnus/bch.hpp"
#include "magnus/bch_resolvent.hpp"
#include "magnus/divergence.hpp"
#include "magnus/kernels.hpp"
#include "magnus/lambda_terms.hpp"
#include "magnus/lie.hpp"
#include "magnus/magnus_terms.hpp"
#include "magnus/norms.hpp"
#include "magnus/ode_bounds.hpp"
#include "magnus/rational.hpp"
#include "magnus/reports.hpp"
#include "magnus/words.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace magnus;

struct Ctx {
  std::string format = "text";
  std::string out;
  bool long_jobs = false;
  unsigned seed = 20240901;
};

void write_out(const Ctx& ctx, const std::string& payload) {
  if (ctx.out.empty()) {
    fmt::print("{}", payload);
    return;
  }
  std::ofstream f(ctx.out, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file: " + ctx.out);
  f << payload;
}

void emit(const Ctx& ctx, const Doc& d) { write_out(ctx, render_doc(d, ctx.format)); }

// Checkpoint line for jobs long enough to be worth watching; goes next to
// the output file when one is set, to stderr otherwise.
void progress(const Ctx& ctx, const std::string& msg) {
  if (ctx.out.empty()) {
    std::fputs((msg + "\n").c_str(), stderr);
    return;
  }
  std::ofstream f(ctx.out + ".progress", std::ios::app);
  f << msg << "\n";
}

void require_long(const Ctx& ctx, const std::string& what) {
  if (!ctx.long_jobs)
    throw CLI::ValidationError(what + " exceeds the default budget; pass --allow-long-jobs");
}

std::string ncpoly_json(const NcPoly& p) {
  std::string out = "{\"terms\": [";
  bool first = true;
  for (auto& [w, c] : p.terms) {
    out += first ? "\n  " : ",\n  ";
    first = false;
    out += "{\"word\": [";
    for (int i = 0; i < w.size(); ++i)
      out += fmt::format("{}{}", i ? ", " : "", w.letter(i));
    out += fmt::format("], \"num\": \"{}\", \"den\": \"{}\"}}",
                       numerator(c).str(), denominator(c).str());
  }
  return out + (first ? "]}\n" : "\n]}\n");
}

Doc scalar_doc(std::string name,
               std::vector<std::pair<std::string, std::string>> scalars) {
  Doc d;
  d.name = std::move(name);
  d.scalars = std::move(scalars);
  return d;
}

// ---- verification suites ----------------------------------------------

struct CheckList {
  Doc doc;
  bool all_ok = true;
  void row(const std::string& what, bool ok, const std::string& detail = "") {
    doc.rows.push_back({what, ok ? "pass" : "FAIL", detail});
    all_ok &= ok;
  }
};

CheckList make_checklist(const std::string& name) {
  CheckList c;
  c.doc.name = name;
  c.doc.columns = {"check", "status", "detail"};
  return c;
}

int finish(const Ctx& ctx, CheckList& c) {
  c.doc.scalars.emplace_back("result", c.all_ok ? "pass" : "FAIL");
  emit(ctx, c.doc);
  return c.all_ok ? 0 : 1;
}

int run_verify_certificates(const Ctx& ctx) {
  auto c = make_checklist("verify-certificates");
  try {
    for (auto& cc : verify_certificates())
      c.row(fmt::format("log({},{})", cc.n1, cc.n2), cc.ok,
            fmt::format("sup {} value {}", rat_str(cc.sup), rat_str(cc.target)));
  } catch (const CertificateMismatch& e) {
    c.row("log-components", false, e.what());
  }
  try {
    for (auto& tc : verify_term_certificates(6))
      c.row(fmt::format("term k={}", tc.k), tc.ok,
            fmt::format("sup {} value {}", rat_str(tc.sup), rat_str(tc.target)));
  } catch (const CertificateMismatch& e) {
    c.row("expansion-terms", false, e.what());
  }
  return finish(ctx, c);
}

int run_verify_routes(const Ctx& ctx, int max_k, int sym_max_k) {
  auto c = make_checklist("verify-routes");
  for (int k = 2; k <= max_k; ++k) {
    progress(ctx, fmt::format("[routes] k={}", k));
    NcPoly mp = mu_mp(k);
    c.row(fmt::format("first-slot recursion k={}", k), mp == mu_recursive_left(k));
    c.row(fmt::format("last-slot recursion k={}", k), mp == mu_recursive_right(k));
  }
  for (int k = 2; k <= sym_max_k; ++k) {
    NcPoly mp = mu_mp(k);
    c.row(fmt::format("reflection symmetry k={}", k), poly_reflect(mp, k) == mp);
    c.row(fmt::format("rotation symmetry k={}", k), poly_rotate(mp, k) == mp);
  }
  for (int k = 3; k <= std::min(sym_max_k, 5); ++k)
    for (int h1 = 1; h1 + 1 <= k - 1; ++h1)
      c.row(fmt::format("nesting identity k={} h=({},{})", k, h1, 1),
            mu_nested(k, h1, 1) == mu_mp(k));
  return finish(ctx, c);
}

const std::vector<Rat>& lambda_samples() {
  static const std::vector<Rat> s = {rat(1, 10), rat(1, 4),  rat(1, 3), rat(2, 5),
                                     rat(1, 2),  rat(13, 17), rat(7, 9)};
  return s;
}

int run_verify_lambda(const Ctx& ctx) {
  auto c = make_checklist("verify-lambda");
  for (int p = 1; p <= 4; ++p)
    for (int a = 0; a <= p; ++a) {
      int b = p - a;
      for (const Rat& lam : lambda_samples()) {
        NcPoly m = mu_weighted(a, b, lam);
        Rat lp = m.is_zero() ? Rat(0) : lie_min_norm(m).value;
        Rat tl = theta_lambda_lie(a, b, lam);
        c.row(fmt::format("lie ({},{}) lambda={}", a, b, rat_str(lam)), lp == tl,
              lp == tl ? rat_str(lp)
                       : fmt::format("lp {} table {}", rat_str(lp), rat_str(tl)));
        Rat l1 = l1_norm(m);
        Rat ta = theta_lambda_assoc(a, b, lam);
        c.row(fmt::format("assoc ({},{}) lambda={}", a, b, rat_str(lam)), l1 == ta,
              l1 == ta ? rat_str(l1)
                       : fmt::format("l1 {} table {}", rat_str(l1), rat_str(ta)));
      }
    }
  return finish(ctx, c);
}

int run_verify_upsilon24(const Ctx& ctx) {
  auto c = make_checklist("verify-upsilon24");
  // One parameter value per active piece of the factored-norm maximum, plus
  // the mirrored point; mu = s(1-s) lands at .09 / .1875 / .1971 / .24.
  const std::vector<Rat> samples = {rat(1, 10), rat(1, 4), rat(27, 100),
                                    rat(2, 5), rat(9, 10), rat(3, 5)};
  for (const Rat& s : samples) {
    NcPoly comp = upsilon_sq_component(2, 4, s);
    Rat lp = extended_min_norm(comp).value;
    Rat formula = upsilon24(true, s);
    c.row(fmt::format("factored norm s={}", rat_str(s)), lp == formula,
          lp == formula
              ? rat_str(lp)
              : fmt::format("lp {} formula {}", rat_str(lp), rat_str(formula)));
    Rat l1 = l1_norm(comp);
    Rat af = upsilon24(false, s);
    c.row(fmt::format("word norm s={}", rat_str(s)), l1 == af,
          l1 == af ? rat_str(l1)
                   : fmt::format("l1 {} formula {}", rat_str(l1), rat_str(af)));
  }
  return finish(ctx, c);
}

NcPoly bracket_poly(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

NcPoly random_lie_element(int degree, std::mt19937& rng) {
  Multidegree m{};
  for (int i = 1; i <= degree; ++i) m[i] = 1;
  auto trees = bracket_trees(m);
  std::uniform_int_distribution<int> coeff(-6, 6);
  NcPoly p;
  for (auto& t : trees) {
    int c = coeff(rng);
    if (c != 0) p += Rat(c) * bt_expand(t);
  }
  return p;
}

int run_verify_properties(const Ctx& ctx, int max_k) {
  auto c = make_checklist("verify-properties");
  // Two-sided comparison between the minimal Lie presentation cost and the
  // word-basis cost of the expansion terms.
  for (int k = 2; k <= max_k; ++k) {
    progress(ctx, fmt::format("[properties] sandwich k={}", k));
    Rat lie = theta_lie(k), assoc = theta_assoc(k);
    c.row(fmt::format("sandwich lower k={}", k), assoc / (Int(1) << (k - 1)) <= lie);
    c.row(fmt::format("sandwich upper k={}", k), lie <= assoc / k);
  }
  // Explicit optimality rechecks on a standing instance set: presentation
  // re-expands to the input, dual pairs to the value, dual stays in the unit
  // ball over all columns, and the minimum never exceeds the word cost.
  std::mt19937 rng(ctx.seed);
  std::vector<std::pair<std::string, NcPoly>> instances;
  for (int k = 2; k <= 4; ++k)
    instances.emplace_back(fmt::format("term k={}", k), mu_mp(k));
  for (int n1 = 1; n1 <= 3; ++n1)
    for (int n2 = n1; n1 + n2 <= 6; ++n2) {
      NcPoly p = bch_component(n1, n2);
      if (!p.is_zero())
        instances.emplace_back(fmt::format("log({},{})", n1, n2), p);
    }
  for (int i = 0; i < 3; ++i) {
    NcPoly p = random_lie_element(4, rng);
    if (!p.is_zero()) instances.emplace_back(fmt::format("random #{}", i + 1), p);
  }
  for (auto& [label, p] : instances) {
    auto pres = lie_min_norm(p);
    NcPoly rebuilt;
    Rat cost = 0;
    for (auto& [t, coeff] : pres.terms) {
      rebuilt += coeff * bt_expand(t);
      cost += rat_abs(coeff);
    }
    Multidegree m = homogeneous_multidegree(p);
    c.row("feasible " + label, rebuilt == p && cost == pres.value);
    c.row("dual " + label, apply_functional(pres.dual, p) == pres.value &&
                               functional_sup_lie(pres.dual, m) <= 1);
    c.row("word-cost " + label, pres.value <= l1_norm(p));
  }
  // Transposition symmetry of the weighted tables.
  const std::vector<Rat> lts = {rat(0), rat(1, 7), rat(1, 3),
                                rat(1, 2), rat(3, 4), rat(1)};
  for (int p = 1; p <= 4; ++p)
    for (int a = 0; a <= p; ++a)
      for (const Rat& lam : lts)
        if (theta_lambda_lie(a, p - a, 1 - lam) != theta_lambda_lie(p - a, a, lam))
          c.row(fmt::format("table transpose ({},{})", a, p - a), false);
  c.row("table transpose grid", true);
  // Bracketing against a fresh letter preserves the minimal cost.
  for (int k = 2; k <= 3; ++k) {
    NcPoly p = mu_mp(k);
    NcPoly z(Word{k + 1});
    c.row(fmt::format("fresh-letter bracket term k={}", k),
          lie_min_norm(bracket_poly(p, z)).value == lie_min_norm(p).value);
  }
  {
    NcPoly p = random_lie_element(3, rng);
    NcPoly z(Word{4});
    c.row("fresh-letter bracket random",
          p.is_zero() ||
              lie_min_norm(bracket_poly(p, z)).value == lie_min_norm(p).value);
  }
  return finish(ctx, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rational norms for Magnus/BCH expansion terms"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", ctx.out, "write output to this file");
  app.add_flag("--allow-long-jobs", ctx.long_jobs,
               "permit computations beyond the default time budget");
  app.add_option("--seed", ctx.seed, "seed for sampled property checks")
      ->capture_default_str();

  int exit_code = 0;
  auto run = [&](auto&& fn) {
    return [&, fn]() { exit_code = fn(); };
  };

  // magnus term
  auto* sc_magnus = app.add_subcommand("magnus", "expansion-term generators");
  auto* sc_mterm = sc_magnus->add_subcommand("term", "one expansion term as canonical JSON");
  int mt_k = 2, mt_a = -1, mt_b = -1;
  std::string mt_lambda, mt_route = "mp";
  sc_mterm->add_option("--k", mt_k, "degree (distinct letters)")->check(CLI::Range(1, 8));
  sc_mterm->add_option("--route", mt_route, "construction route")
      ->check(CLI::IsMember({"mp", "left", "right", "lie"}));
  sc_mterm->add_option("--lambda", mt_lambda, "weight parameter P/Q (with --a/--b)");
  sc_mterm->add_option("--a", mt_a, "letters below the checkpoint");
  sc_mterm->add_option("--b", mt_b, "letters above the checkpoint");
  sc_mterm->callback(run([&]() {
    NcPoly p;
    if (!mt_lambda.empty()) {
      if (mt_a < 0 || mt_b < 0)
        throw CLI::ValidationError("--lambda requires --a and --b");
      p = mu_weighted(mt_a, mt_b, rat_parse(mt_lambda));
    } else if (mt_route == "mp") {
      p = mu_mp(mt_k);
    } else if (mt_route == "left") {
      p = mu_recursive_left(mt_k);
    } else if (mt_route == "right") {
      p = mu_recursive_right(mt_k);
    } else {
      p = mu_lie(mt_k);
    }
    write_out(ctx, ncpoly_json(p));
    return 0;
  }));

  // bch term
  auto* sc_bch = app.add_subcommand("bch", "two-generator log series");
  auto* sc_bterm = sc_bch->add_subcommand("term", "one bidegree component as canonical JSON");
  int bt_n1 = 1, bt_n2 = 1;
  sc_bterm->add_option("--n1", bt_n1, "degree in the first generator")->required();
  sc_bterm->add_option("--n2", bt_n2, "degree in the second generator")->required();
  sc_bterm->callback(run([&]() {
    if (bt_n1 < 0 || bt_n2 < 0 || bt_n1 + bt_n2 < 1 || bt_n1 + bt_n2 > 12)
      throw CLI::ValidationError("need n1,n2 >= 0 with 1 <= n1+n2 <= 12");
    write_out(ctx, ncpoly_json(bch_component(bt_n1, bt_n2)));
    return 0;
  }));

  // norm
  auto* sc_norm = app.add_subcommand("norm", "exact minimal-presentation norms");
  auto* sc_ntl = sc_norm->add_subcommand("theta-lie", "normalized minimal Lie cost of a term");
  int ntl_k = 2;
  sc_ntl->add_option("--k", ntl_k, "degree")->check(CLI::Range(1, 7));
  sc_ntl->callback(run([&]() {
    if (ntl_k >= 7) require_long(ctx, "degree 7");
    progress(ctx, fmt::format("[theta-lie] k={}", ntl_k));
    Rat v = theta_lie(ntl_k);
    emit(ctx, scalar_doc("theta-lie", {{"k", fmt::format("{}", ntl_k)},
                                       {"value", rat_str(v)},
                                       {"value_float", float_str(to_double(v))}}));
    return 0;
  }));
  auto* sc_ngl = sc_norm->add_subcommand("gamma-lie", "minimal Lie cost of a log component");
  int ngl_n1 = 1, ngl_n2 = 1;
  sc_ngl->add_option("--n1", ngl_n1)->required();
  sc_ngl->add_option("--n2", ngl_n2)->required();
  sc_ngl->callback(run([&]() {
    int total = ngl_n1 + ngl_n2;
    if (ngl_n1 < 1 || ngl_n2 < 1 || total > 12)
      throw CLI::ValidationError("need n1,n2 >= 1 with n1+n2 <= 12");
    if (total > 10) require_long(ctx, fmt::format("total degree {}", total));
    progress(ctx, fmt::format("[gamma-lie] ({},{})", ngl_n1, ngl_n2));
    Rat v = gamma_lie(ngl_n1, ngl_n2);
    emit(ctx, scalar_doc("gamma-lie", {{"n1", fmt::format("{}", ngl_n1)},
                                       {"n2", fmt::format("{}", ngl_n2)},
                                       {"value", rat_str(v)},
                                       {"value_float", float_str(to_double(v))}}));
    return 0;
  }));
  auto* sc_ntlam = sc_norm->add_subcommand("theta-lambda", "weighted-term norm from the stored tables");
  int nla = 0, nlb = 1;
  std::string nlam = "1/2";
  bool nl_assoc = false;
  sc_ntlam->add_option("--a", nla)->required();
  sc_ntlam->add_option("--b", nlb)->required();
  sc_ntlam->add_option("--lambda", nlam, "rational weight P/Q in [0,1]");
  sc_ntlam->add_flag("--assoc", nl_assoc, "word-basis norm instead of the Lie norm");
  sc_ntlam->callback(run([&]() {
    Rat lam = rat_parse(nlam);
    Rat v = nl_assoc ? theta_lambda_assoc(nla, nlb, lam)
                     : theta_lambda_lie(nla, nlb, lam);
    emit(ctx, scalar_doc("theta-lambda",
                         {{"a", fmt::format("{}", nla)},
                          {"b", fmt::format("{}", nlb)},
                          {"lambda", rat_str(lam)},
                          {"kind", nl_assoc ? "assoc" : "lie"},
                          {"value", rat_str(v)},
                          {"value_float", float_str(to_double(v))}}));
    return 0;
  }));

  // bounds
  auto* sc_bounds = app.add_subcommand("bounds", "convergence-radius bounds");
  auto* sc_ode = sc_bounds->add_subcommand("ode", "scalar/compartment majorant flows");
  std::string ode_method = "standard";
  sc_ode->add_option("--method", ode_method)
      ->check(CLI::IsMember({"standard", "forced", "second-order", "compartment-simple",
                             "compartment-fine", "compartment-variant", "bch-diag"}))
      ->capture_default_str();
  sc_ode->callback(run([&]() {
    double bound = 0;
    std::string note = "quadrature abs tol 1e-7";
    std::vector<std::pair<std::string, std::string>> extra;
    if (ode_method == "standard") {
      bound = delta_standard();
    } else if (ode_method == "forced") {
      ForcedBound fb = forced_bound();
      bound = fb.radius;
      extra.emplace_back("gain", float_str(fb.l_hat));
      note = "RK4 step-doubling 1e-8, blow-up bisection 1e-5";
    } else if (ode_method == "second-order") {
      bound = second_order_bound();
      note = "nested quadrature abs tol 1e-7";
    } else if (ode_method == "bch-diag") {
      bound = bch_diag();
      note = "fixed point of the region boundary, bisection 1e-7";
    } else {
      auto v = ode_method == "compartment-simple" ? CompartmentVariant::simple
               : ode_method == "compartment-fine" ? CompartmentVariant::fine
                                                  : CompartmentVariant::polynomial;
      bound = compartment_bound(v);
      note = "RK4 step-doubling 1e-8, blow-up bisection 1e-5";
    }
    Doc d = scalar_doc("ode-bound", {{"method", ode_method},
                                     {"bound", float_str(bound)},
                                     {"tolerance_note", note}});
    for (auto& kv : extra) d.scalars.push_back(kv);
    emit(ctx, d);
    return 0;
  }));

  auto* sc_res = sc_bounds->add_subcommand("resolvent", "Toeplitz spectral lower bound");
  int res_pm1 = 2, res_s = 64, res_cells = 128;
  sc_res->add_option("--pm1,--p", res_pm1, "kernel degree")->check(CLI::Range(1, 6));
  sc_res->add_option("--s", res_s, "Toeplitz matrix size")->check(CLI::Range(2, 4096));
  sc_res->add_option("--lambda-steps", res_cells, "weight-grid cells")->capture_default_str();
  sc_res->callback(run([&]() {
    if (res_pm1 >= 5) require_long(ctx, fmt::format("degree {}", res_pm1));
    progress(ctx, fmt::format("[resolvent] pm1={} s={} cells={}", res_pm1, res_s, res_cells));
    RadiusBound rb = toeplitz_bound(res_pm1, res_s, res_cells);
    emit(ctx, scalar_doc("resolvent-bound",
                         {{"pm1", fmt::format("{}", rb.pm1)},
                          {"s", fmt::format("{}", res_s)},
                          {"bound", rat_str(rb.bound)},
                          {"bound_float", float_str(to_double(rb.bound))},
                          {"argmax_lambda", fmt::format("[{}, {}]", rat_str(rb.argmax_lo),
                                                        rat_str(rb.argmax_hi))},
                          {"lambda_cells", fmt::format("{}", rb.lambda_cells)},
                          {"perron_residual", float_str(rb.perron_residual)}}));
    return 0;
  }));

  auto* sc_qual = sc_bounds->add_subcommand("qualitative", "weighted-average lower bound");
  int q_pm1 = 2, q_cells = 128, q_tcells = 64;
  sc_qual->add_option("--pm1,--p", q_pm1, "kernel degree")->check(CLI::Range(1, 6));
  sc_qual->add_option("--lambda-cells", q_cells)->capture_default_str();
  sc_qual->add_option("--t-cells", q_tcells)->capture_default_str();
  sc_qual->callback(run([&]() {
    if (q_pm1 >= 5) require_long(ctx, fmt::format("degree {}", q_pm1));
    progress(ctx, fmt::format("[qualitative] pm1={}", q_pm1));
    RadiusBound rb = qualitative_bound(q_pm1, q_cells, q_tcells);
    emit(ctx, scalar_doc("qualitative-bound",
                         {{"pm1", fmt::format("{}", rb.pm1)},
                          {"bound", rat_str(rb.bound)},
                          {"bound_float", float_str(to_double(rb.bound))},
                          {"argmax_lambda", fmt::format("[{}, {}]", rat_str(rb.argmax_lo),
                                                        rat_str(rb.argmax_hi))}}));
    return 0;
  }));

  auto* sc_bres = sc_bounds->add_subcommand("bch-resolvent", "group resolvent diagonal bound");
  int br_deg = 9, br_steps = 128;
  bool br_nocorr = false;
  sc_bres->add_option("--deg", br_deg, "correction degree cap")->check(CLI::Range(0, 9));
  sc_bres->add_option("--lambda-steps", br_steps)->capture_default_str();
  sc_bres->add_flag("--no-corrections", br_nocorr, "word-level envelope only");
  sc_bres->callback(run([&]() {
    progress(ctx, fmt::format("[bch-resolvent] deg={} corrections={}", br_deg, !br_nocorr));
    BchResolventResult r = bch_resolvent_bound(br_deg, !br_nocorr, br_steps);
    emit(ctx, scalar_doc("bch-resolvent-bound",
                         {{"deg", fmt::format("{}", r.deg_cap)},
                          {"corrections", r.corrections ? "on" : "off"},
                          {"bound", rat_str(r.bound)},
                          {"bound_float", float_str(to_double(r.bound))},
                          {"critical_lo", rat_str(r.critical_lo)},
                          {"critical_hi", rat_str(r.critical_hi)},
                          {"cells", fmt::format("{}", r.cells)}}));
    return 0;
  }));

  // witness
  auto* sc_wit = app.add_subcommand("witness", "divergence witnesses");
  auto* sc_xi = sc_wit->add_subcommand("xi", "diagonal lower-bound series");
  double xi_t = 2.0;
  int xi_k = 60;
  sc_xi->add_option("--t", xi_t)->required();
  sc_xi->add_option("--k", xi_k, "partial-sum cutoff")->capture_default_str();
  sc_xi->callback(run([&]() {
    emit(ctx, scalar_doc("xi", {{"t", float_str(xi_t)},
                                {"k", fmt::format("{}", xi_k)},
                                {"partial", float_str(xi_partial(xi_t, xi_k))},
                                {"closed", float_str(xi_closed(xi_t))}}));
    return 0;
  }));
  auto* sc_sl2 = sc_wit->add_subcommand("sl2", "matrix wrap-up residual");
  double sl2_t = 1.0;
  sc_sl2->add_option("--t", sl2_t)->required();
  sc_sl2->callback(run([&]() {
    emit(ctx, scalar_doc("sl2", {{"t", float_str(sl2_t)},
                                 {"residual", float_str(sl2_check(sl2_t))}}));
    return 0;
  }));
  auto* sc_ub = sc_wit->add_subcommand("upper-bounds", "divergence-side constants");
  sc_ub->callback(run([&]() {
    UpperBoundsReport r = upper_bounds_report();
    Doc d = scalar_doc("upper-bounds",
                       {{"diagonal_divergence", float_str(r.diagonal_divergence)},
                        {"pair_norm_bound", float_str(r.pair_norm_bound)},
                        {"radius_upper", float_str(r.radius_upper)},
                        {"halving_degree", fmt::format("{}", r.halving_degree)},
                        {"halving_lhs", rat_str(r.halving_lhs)},
                        {"halving_rhs", rat_str(r.halving_rhs)}});
    d.columns = {"generator", "norm"};
    for (auto& [name, v] : r.generator_norms) d.rows.push_back({name, rat_str(v)});
    emit(ctx, d);
    return 0;
  }));

  // table
  auto* sc_table = app.add_subcommand("table", "golden tables and reports");
  auto* sc_tth = sc_table->add_subcommand("theta", "normalized term norms");
  int tth_k = 6;
  sc_tth->add_option("--max-k", tth_k)->check(CLI::Range(1, 7))->capture_default_str();
  sc_tth->callback(run([&]() {
    if (tth_k >= 7) require_long(ctx, "degree 7");
    std::vector<ThetaRow> rows;
    for (int k = 1; k <= tth_k; ++k) {
      progress(ctx, fmt::format("[theta] k={}", k));
      rows.push_back({k, theta_lie(k), theta_assoc(k)});
    }
    emit(ctx, theta_table_doc(rows));
    return 0;
  }));
  auto* sc_tga = sc_table->add_subcommand("gamma", "log-component norms");
  int tga_total = 10;
  sc_tga->add_option("--max-total", tga_total)->check(CLI::Range(2, 12))->capture_default_str();
  sc_tga->callback(run([&]() {
    if (tga_total > 10) require_long(ctx, fmt::format("total degree {}", tga_total));
    std::vector<GammaEntry> entries;
    for (int total = 2; total <= tga_total; ++total) {
      progress(ctx, fmt::format("[gamma] total={}", total));
      for (int n1 = 1; n1 < total; ++n1)
        entries.push_back({n1, total - n1, gamma_lie(n1, total - n1)});
    }
    emit(ctx, gamma_table_doc(entries));
    return 0;
  }));
  auto* sc_the = sc_table->add_subcommand("heuristic", "growth-rate extrapolation (advisory)");
  int the_k = 6;
  sc_the->add_option("--max-k", the_k)->check(CLI::Range(2, 7))->capture_default_str();
  sc_the->callback(run([&]() {
    if (the_k >= 7) require_long(ctx, "degree 7");
    std::vector<Rat> theta;
    for (int k = 1; k <= the_k; ++k) {
      progress(ctx, fmt::format("[heuristic] k={}", k));
      theta.push_back(theta_lie(k));
    }
    emit(ctx, heuristic_doc(heuristic_report(theta)));
    return 0;
  }));

  // verify
  auto* sc_verify = app.add_subcommand("verify", "exact re-verification suites");
  sc_verify->add_subcommand("certificates", "bundled dual functionals vs fresh solves")
      ->callback(run([&]() { return run_verify_certificates(ctx); }));
  auto* sc_routes = sc_verify->add_subcommand("routes", "construction-route and symmetry identities");
  int vr_max_k = 7, vr_sym_k = 6;
  sc_routes->add_option("--max-k", vr_max_k)->check(CLI::Range(2, 8))->capture_default_str();
  sc_routes->add_option("--sym-max-k", vr_sym_k)->check(CLI::Range(2, 8))->capture_default_str();
  sc_routes->callback(run([&]() { return run_verify_routes(ctx, vr_max_k, vr_sym_k); }));
  sc_verify->add_subcommand("lambda", "weighted-norm tables vs fresh solves")
      ->callback(run([&]() { return run_verify_lambda(ctx); }));
  sc_verify->add_subcommand("upsilon24", "factored-norm branches vs fresh solves")
      ->callback(run([&]() { return run_verify_upsilon24(ctx); }));
  auto* sc_props = sc_verify->add_subcommand("properties", "exact structural property suite");
  int vp_max_k = 6;
  sc_props->add_option("--max-k", vp_max_k)->check(CLI::Range(2, 6))->capture_default_str();
  sc_props->callback(run([&]() { return run_verify_properties(ctx, vp_max_k); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return exit_code;
}
