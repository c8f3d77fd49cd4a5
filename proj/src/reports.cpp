#include "magnus/reports.hpp"

#include "magnus/bch.hpp"
#include "magnus/magnus_terms.hpp"
#include "magnus/norms.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstring>

namespace magnus {

std::string float_str(double v) { return fmt::format("{:.10g}", v); }

namespace {

std::string json_escape(const std::string& s) {
  std::string r;
  r.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': r += "\\\""; break;
      case '\\': r += "\\\\"; break;
      case '\n': r += "\\n"; break;
      case '\t': r += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20)
          r += fmt::format("\\u{:04x}", c);
        else
          r += c;
    }
  }
  return r;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string render_json(const Doc& d) {
  std::string out = "{\n";
  out += fmt::format("  \"name\": \"{}\"", json_escape(d.name));
  for (auto& [k, v] : d.scalars)
    out += fmt::format(",\n  \"{}\": \"{}\"", json_escape(k), json_escape(v));
  if (!d.columns.empty()) {
    out += ",\n  \"rows\": [";
    for (size_t i = 0; i < d.rows.size(); ++i) {
      out += i ? ",\n    {" : "\n    {";
      for (size_t j = 0; j < d.columns.size(); ++j)
        out += fmt::format("{}\"{}\": \"{}\"", j ? ", " : "",
                           json_escape(d.columns[j]),
                           json_escape(j < d.rows[i].size() ? d.rows[i][j] : ""));
      out += "}";
    }
    out += "\n  ]";
  }
  return out + "\n}\n";
}

std::string render_csv(const Doc& d) {
  std::string out;
  for (auto& [k, v] : d.scalars) out += fmt::format("# {}: {}\n", k, v);
  if (!d.columns.empty()) {
    for (size_t j = 0; j < d.columns.size(); ++j)
      out += (j ? "," : "") + csv_cell(d.columns[j]);
    out += "\n";
    for (auto& row : d.rows) {
      for (size_t j = 0; j < d.columns.size(); ++j)
        out += (j ? "," : "") + csv_cell(j < row.size() ? row[j] : "");
      out += "\n";
    }
  }
  return out;
}

std::string render_text(const Doc& d) {
  std::string out = d.name + "\n" + std::string(d.name.size(), '-') + "\n";
  for (auto& [k, v] : d.scalars) out += fmt::format("{}: {}\n", k, v);
  if (d.columns.empty()) return out;
  std::vector<size_t> width(d.columns.size());
  for (size_t j = 0; j < d.columns.size(); ++j) width[j] = d.columns[j].size();
  for (auto& row : d.rows)
    for (size_t j = 0; j < row.size() && j < width.size(); ++j)
      width[j] = std::max(width[j], row[j].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (size_t j = 0; j < d.columns.size(); ++j)
      s += fmt::format("{}{:<{}}", j ? "  " : "",
                       j < cells.size() ? cells[j] : "", width[j]);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  if (!d.scalars.empty()) out += "\n";
  out += line(d.columns);
  for (auto& row : d.rows) out += line(row);
  return out;
}

}  // namespace

std::string render_doc(const Doc& d, const std::string& format) {
  if (format == "json") return render_json(d);
  if (format == "csv") return render_csv(d);
  if (format == "text") return render_text(d);
  throw std::invalid_argument("unknown format: " + format);
}

std::vector<ThetaRow> theta_table(int max_k) {
  std::vector<ThetaRow> rows;
  for (int k = 1; k <= max_k; ++k)
    rows.push_back({k, theta_lie(k), theta_assoc(k)});
  return rows;
}

Doc theta_table_doc(const std::vector<ThetaRow>& rows) {
  Doc d;
  d.name = "theta";
  d.columns = {"k", "lie", "lie_float", "assoc", "sandwich_low", "sandwich_high"};
  for (auto& r : rows) {
    Rat low = r.assoc / (Int(1) << (r.k - 1));
    Rat high = r.assoc / r.k;
    d.rows.push_back({fmt::format("{}", r.k), rat_str(r.lie),
                      float_str(to_double(r.lie)), rat_str(r.assoc),
                      rat_str(low), rat_str(high)});
  }
  return d;
}

std::vector<GammaEntry> gamma_table(int max_total) {
  std::vector<GammaEntry> entries;
  for (int total = 2; total <= max_total; ++total)
    for (int n1 = 1; n1 < total; ++n1)
      entries.push_back({n1, total - n1, gamma_lie(n1, total - n1)});
  return entries;
}

Doc gamma_table_doc(const std::vector<GammaEntry>& entries) {
  Doc d;
  d.name = "gamma";
  d.columns = {"total", "n1", "n2", "value", "value_float"};
  for (auto& e : entries)
    d.rows.push_back({fmt::format("{}", e.n1 + e.n2), fmt::format("{}", e.n1),
                      fmt::format("{}", e.n2), rat_str(e.value),
                      float_str(to_double(e.value))});
  return d;
}

HeuristicReport heuristic_report(const std::vector<Rat>& theta) {
  HeuristicReport r;
  for (size_t i = 0; i < theta.size(); ++i) {
    int n = static_cast<int>(i) + 1;
    double root = std::exp(std::log(to_double(theta[i])) / n);
    r.transformed.push_back(1.0 / (4.0 - root));
  }
  size_t N = r.transformed.size();
  if (N >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < N; ++i) {
      double x = static_cast<double>(i + 1), y = r.transformed[i];
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    double den = N * sxx - sx * sx;
    r.slope = (N * sxy - sx * sy) / den;
    r.intercept = (sy * sxx - sx * sxy) / den;
    for (size_t i = 0; i < N; ++i) {
      double fit = r.slope * (i + 1) + r.intercept;
      r.max_residual = std::max(r.max_residual, std::fabs(r.transformed[i] - fit));
    }
  }
  r.note =
      "heuristic extrapolation only, no acceptance weight; "
      "suggests a limiting growth constant of 3.85±0.15";
  return r;
}

Doc heuristic_doc(const HeuristicReport& r) {
  Doc d;
  d.name = "growth-heuristic";
  d.scalars = {{"slope", float_str(r.slope)},
               {"intercept", float_str(r.intercept)},
               {"max_residual", float_str(r.max_residual)},
               {"note", r.note}};
  d.columns = {"n", "transformed", "fit", "residual"};
  for (size_t i = 0; i < r.transformed.size(); ++i) {
    double fit = r.slope * (i + 1) + r.intercept;
    d.rows.push_back({fmt::format("{}", i + 1), float_str(r.transformed[i]),
                      float_str(fit), float_str(r.transformed[i] - fit)});
  }
  return d;
}

namespace {

Word word_from_digits(const char* s) {
  Word w;
  for (; *s; ++s) w.push_back(*s - '0');
  return w;
}

struct RawTerm {
  const char* word;
  const char* coeff;
};

struct RawCase {
  int n1, n2;
  std::vector<RawTerm> terms;
};

// Optimality certificates bundled with the library: one dual functional per
// nonvanishing bidegree of log(exp X1 exp X2) through total degree 10, each
// with sup 1 over bracket columns and pairing equal to the minimal cost.
const std::vector<RawCase>& raw_certificates() {
  static const std::vector<RawCase> cases = {
      {1, 1, {{"12", "1"}}},
      {1, 2, {{"122", "1"}}},
      {2, 2, {{"1122", "1"}}},
      {1, 4, {{"12222", "-1"}}},
      {2, 3, {{"21122", "-1"}}},
      {2, 4, {{"112222", "-1"}}},
      {3, 3, {{"122112", "-1"}}},
      {1, 6, {{"1222222", "1"}}},
      {2, 5, {{"2112222", "1"}, {"2211222", "1"}}},
      {3, 4, {{"1221122", "-1"}, {"1221221", "1/12"}}},
      {2, 6, {{"11222222", "1"}}},
      {3, 5, {{"12211222", "1"}, {"12222112", "1"}}},
      {4, 4, {{"11221122", "-1"}}},
      {1, 8, {{"122222222", "-1"}}},
      {2, 7, {{"112222222", "1"}, {"122222221", "1/2"}}},
      {3, 6, {{"122112222", "1"}, {"122221122", "1"}}},
      {4, 5,
       {{"112222112", "1/3"},
        {"121222121", "1/24"},
        {"211122212", "-1/12"},
        {"211212212", "-5/108"},
        {"211221122", "53/54"},
        {"221121122", "1/108"}}},
      {2, 8, {{"1122222222", "-1"}}},
      {3, 7, {{"1221122222", "-1"}, {"1222211222", "-1"}, {"1222222112", "-1"}}},
      {4, 6, {{"1122112222", "1"}, {"1122221122", "1"}}},
      {5, 5, {{"1221122112", "1"}}},
  };
  return cases;
}

// Duals for the multilinear expansion terms, degrees 4..6, signed
// permutation words (all coefficients +-1).
const std::vector<const char*>& raw_term_dual(int k) {
  static const std::vector<const char*> a4 = {"+1234", "-1342", "-1423",
                                              "-1432"};
  static const std::vector<const char*> a5 = {
      "+12345", "-12453", "-12534", "-12543", "-13425", "-13452",
      "-14235", "-14253", "-14325", "-14523", "-15234", "+15432"};
  static const std::vector<const char*> a6 = {
      "+123456", "-123564", "-123645", "-123654", "-124536", "-124563",
      "-125346", "-125364", "-125436", "-125634", "-126345", "+126543",
      "-134256", "-134526", "-134562", "-134625", "+135264", "+135642",
      "-136245", "-136254", "+136452", "+136542", "-142356", "-142536",
      "+142635", "+142653", "-143256", "-143625", "-145236", "+145362",
      "+145632", "+146253", "+146352", "+146523", "+146532", "-152346",
      "+152463", "+152643", "+153264", "+153462", "+153624", "+153642",
      "+154263", "+154326", "+154362", "+154623", "+154632", "+156243",
      "+156324", "-162345", "+162453", "+162534", "+162543", "+163425",
      "+163452", "+163524", "+163542", "+164235", "+164253", "+164325",
      "+164352", "+165234", "+165243", "+165324", "-165432"};
  switch (k) {
    case 4: return a4;
    case 5: return a5;
    case 6: return a6;
    default: throw std::invalid_argument("no bundled dual for this degree");
  }
}

NcPoly signed_words(const std::vector<const char*>& list) {
  NcPoly alpha;
  for (const char* s : list)
    alpha.add(word_from_digits(s + 1), s[0] == '-' ? -1 : 1);
  return alpha;
}

}  // namespace

std::vector<CertificateCase> certificate_cases() {
  std::vector<CertificateCase> cases;
  for (auto& raw : raw_certificates()) {
    CertificateCase c;
    c.n1 = raw.n1;
    c.n2 = raw.n2;
    for (auto& t : raw.terms) c.alpha.add(word_from_digits(t.word), rat_parse(t.coeff));
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<CertificateCase> verify_certificates() {
  auto cases = certificate_cases();
  for (auto& c : cases) {
    Multidegree m{};
    m[1] = static_cast<std::uint8_t>(c.n1);
    m[2] = static_cast<std::uint8_t>(c.n2);
    c.sup = functional_sup_lie(c.alpha, m);
    c.attained = apply_functional(c.alpha, bch_component(c.n1, c.n2));
    c.target = gamma_lie(c.n1, c.n2);
    c.ok = c.sup == 1 && c.attained == c.target && c.target > 0;
    if (!c.ok)
      throw CertificateMismatch(fmt::format(
          "certificate ({},{}) failed: sup {} attained {} target {}", c.n1,
          c.n2, rat_str(c.sup), rat_str(c.attained), rat_str(c.target)));
  }
  return cases;
}

Doc certificates_doc(const std::vector<CertificateCase>& cases) {
  Doc d;
  d.name = "certificates";
  d.columns = {"n1", "n2", "dual_terms", "sup", "value", "ok"};
  for (auto& c : cases)
    d.rows.push_back({fmt::format("{}", c.n1), fmt::format("{}", c.n2),
                      fmt::format("{}", c.alpha.terms.size()), rat_str(c.sup),
                      rat_str(c.target), c.ok ? "yes" : "no"});
  return d;
}

std::vector<TermCertificate> term_certificates(int max_k) {
  std::vector<TermCertificate> cases;
  for (int k = 4; k <= max_k && k <= 6; ++k) {
    TermCertificate c;
    c.k = k;
    c.alpha = signed_words(raw_term_dual(k));
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<TermCertificate> verify_term_certificates(int max_k) {
  auto cases = term_certificates(max_k);
  for (auto& c : cases) {
    Multidegree m{};
    for (int i = 1; i <= c.k; ++i) m[i] = 1;
    c.sup = functional_sup_lie(c.alpha, m);
    c.attained = apply_functional(c.alpha, mu_mp(c.k));
    c.target = theta_lie(c.k) * factorial(c.k);
    c.ok = c.sup == 1 && c.attained == c.target;
    if (!c.ok)
      throw CertificateMismatch(fmt::format(
          "degree-{} term certificate failed: sup {} attained {} target {}",
          c.k, rat_str(c.sup), rat_str(c.attained), rat_str(c.target)));
  }
  return cases;
}

Doc term_certificates_doc(const std::vector<TermCertificate>& cases) {
  Doc d;
  d.name = "term-certificates";
  d.columns = {"k", "dual_terms", "sup", "value", "ok"};
  for (auto& c : cases)
    d.rows.push_back({fmt::format("{}", c.k),
                      fmt::format("{}", c.alpha.terms.size()), rat_str(c.sup),
                      rat_str(c.target), c.ok ? "yes" : "no"});
  return d;
}

}  // namespace magnus
