#pragma once

#include "magnus/rational.hpp"
#include "magnus/words.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace magnus {

// Flat render-agnostic document: named scalar fields plus one optional table.
// All cells are preformatted strings (rationals as "num/den", floats at 10
// significant digits) so json/csv/text renderings agree byte-for-byte on
// numeric content.
struct Doc {
  std::string name;
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// format is one of "json", "csv", "text".
std::string render_doc(const Doc& d, const std::string& format);

std::string float_str(double v);

struct ThetaRow {
  int k;
  Rat lie;    // minimal Lie-presentation cost of the degree-k term, over k!
  Rat assoc;  // word-basis l1 cost, same normalization
};

std::vector<ThetaRow> theta_table(int max_k);
Doc theta_table_doc(const std::vector<ThetaRow>& rows);

struct GammaEntry {
  int n1, n2;
  Rat value;
};

// All (n1,n2), n1,n2 >= 1, n1+n2 <= max_total, ordered by total degree.
std::vector<GammaEntry> gamma_table(int max_total);
Doc gamma_table_doc(const std::vector<GammaEntry>& entries);

// Extrapolation diagnostic for the growth rate of the theta sequence:
// transforms x_n = 1/(4 - theta_n^(1/n)), fits x ~ slope*n + intercept by
// least squares, reports the fit and its worst residual. Advisory output
// only; nothing downstream consumes it.
struct HeuristicReport {
  std::vector<double> transformed;
  double slope = 0, intercept = 0, max_residual = 0;
  std::string note;
};

// theta[i] is the exact normalized Lie value for degree i+1.
HeuristicReport heuristic_report(const std::vector<Rat>& theta);
Doc heuristic_doc(const HeuristicReport& r);

struct CertificateMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bundled dual functional for one bidegree of log(exp X1 exp X2),
// normalized to sup 1 over bracket columns, pairing to the exact minimal
// cost. verify_certificates() checks both identities for every bundled case
// and throws CertificateMismatch naming the first failure.
struct CertificateCase {
  int n1, n2;
  NcPoly alpha;
  Rat sup;       // filled by verification
  Rat attained;  // alpha paired against the bidegree component
  Rat target;    // independently solved minimal cost
  bool ok = false;
};

std::vector<CertificateCase> certificate_cases();
std::vector<CertificateCase> verify_certificates();
Doc certificates_doc(const std::vector<CertificateCase>& cases);

// Same shape for the multilinear expansion terms of degree 4..max_k
// (max_k <= 6): bundled duals certifying the minimal Lie cost of mu_k.
struct TermCertificate {
  int k;
  NcPoly alpha;
  Rat sup;
  Rat attained;
  Rat target;
  bool ok = false;
};

std::vector<TermCertificate> term_certificates(int max_k);
std::vector<TermCertificate> verify_term_certificates(int max_k);
Doc term_certificates_doc(const std::vector<TermCertificate>& cases);

}  // namespace magnus
