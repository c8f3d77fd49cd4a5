#pragma once

#include "magnus/lambda_terms.hpp"
#include "magnus/rational.hpp"

#include <functional>

namespace magnus {

// Coupling kernel of degree pm1 on tau in [-1,1]:
//   tau >= 0: lambda * sum_{a+b=pm1} (1-tau)^a tau^b / (a! b!) * Theta_{a,b}(lambda)
//   tau <  0: same with lambda -> 1-lambda, tau -> -tau.
Rat kernel_value(int pm1, bool lie, const Rat& lam, const Rat& tau);

// Interval bounds used by the certified searches. Entry bounds come from a
// provider so precomputed tables and LP-derived envelopes share one path.
struct ThetaProvider {
  std::function<Rat(int a, int b, const Rat& lo, const Rat& hi)> lie_sup;
  std::function<Rat(int a, int b, const Rat& lo, const Rat& hi)> assoc_sup;
  std::function<Rat(int a, int b, const Rat& lo, const Rat& hi)> assoc_inf;
};
const ThetaProvider& table_theta_provider();

// Certified sup of the kernel over lambda in [l1,l2], tau in [t1,t2]; the tau
// interval may cross 0 (split internally). inf variant is associative-only
// (it feeds ratio denominators) and requires 0 <= t1.
Rat kernel_sup(int pm1, bool lie, const Rat& l1, const Rat& l2, const Rat& t1,
               const Rat& t2, const ThetaProvider& tp = table_theta_provider());
Rat kernel_inf_assoc(int pm1, const Rat& l1, const Rat& l2, const Rat& t1,
                     const Rat& t2,
                     const ThetaProvider& tp = table_theta_provider());

// Upper bound for (1-2x)/log((1-x)/x) on [lo,hi] subset [0,1]; equals 1/2 at
// the symmetric point and decays toward the endpoints.
Rat w_sup_on(const Rat& lo, const Rat& hi, int series_terms = 24);

struct RadiusBound {
  int pm1 = 0;
  Rat quantity;       // certified max of the theorem's inner expression
  Rat bound;          // certified lower bound on the radius
  Rat argmax_lo, argmax_hi;  // lambda cell attaining `quantity`
  int lambda_cells = 0;
  int extra = 0;      // t cells / matrix size, depending on the bound
  double perron_residual = 0;  // ||Av - rv||_inf / ||v||_inf at the argmax cell
};

// Lower bound via the weighted-average comparison: radius >=
// 1 / max_lambda [ w(lambda) * S(lambda)^(1/p) ], with S the max over tau of
// the Lie/associative kernel ratio (proved <= 1 before use).
RadiusBound qualitative_bound(int pm1, int lambda_cells = 128, int t_cells = 64,
                              const ThetaProvider& tp = table_theta_provider());

// Lower bound via the s x s Toeplitz majorant: radius >=
// 1 / max_lambda rho(K_s)^(1/p); rho is bounded by exact Collatz-Wielandt on
// an entrywise cell majorant with a floating-point Perron guess.
RadiusBound toeplitz_bound(int pm1, int s, int lambda_cells = 128,
                           const ThetaProvider& tp = table_theta_provider());

// Exact integral of the kernel bilinear form against the constant function:
// int_{-1}^{1} K(tau) (1 - |tau|) dtau at a fixed rational lambda.
Rat kernel_bilinear_constant(int pm1, bool lie, const Rat& lam);

}  // namespace magnus
