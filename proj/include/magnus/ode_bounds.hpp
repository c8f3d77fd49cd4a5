#pragma once

#include "magnus/rational.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace magnus {

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BlowupNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar generating functions backing the majorant flows. Each evaluator
// switches to its Taylor series near removable singularities, so plain double
// evaluation stays accurate on the whole domain of interest.

// Generating function of the absolute recursion coefficients:
// 2 + x/2 - (x/2)cot(x/2). Equals 1 at 0, increases on [0, 2pi), pole at 2pi.
double beta_tilde(double x);
// beta_tilde minus its affine head 1 + x/2 (quadratic and higher part).
double beta_tilde_rest(double x);
double beta_tilde_rest_deriv(double x);
// Nearest-pole parts of beta_tilde_rest: x^2/(4pi^2-x^2), x^3/(2pi(4pi^2-x^2)).
double beta_pole_even(double x);
double beta_pole_odd(double x);
// Half-scale analogues with the pole pushed to 4pi: x^2/(16pi^2-x^2) and
// x^3/(4pi(16pi^2-x^2)).
double beta_half_even(double x);
double beta_half_odd(double x);
// Farther-pole remainder sum_{N>=2} 2x^2/(4pi^2 N^2 - x^2), truncated at
// N = 64 with a certified upper tail added (valid for 0 <= x <= 2pi), and its
// derivative (tail valid for 0 <= x <= 4pi). beta_far_tail exposes the added
// tail so identities can be checked against it.
double beta_far(double x);
double beta_far_tail(double x);
double beta_far_deriv(double x);
// beta_tilde_rest == 2*beta_pole_even + beta_far holds up to the far tail.

// Forcing term of the second-order majorant recursion; the 1/x and cot poles
// cancel at 0, where the value is 1/2.
double second_order_forcing(double x);

// Comparison weight u/(2 atanh u) with u = |1-2lambda|; symmetric about 1/2,
// maximum 1/2 at lambda = 1/2, zero at the endpoints.
double lambda_weight(double lambda);

// Exact series data (rational arithmetic throughout).

// Taylor coefficients (index = power, up to x^upto) of the scalar majorant
// solution psi of psi' = beta_tilde(psi), psi(0) = 0, via the recursion
// k psi_k = sum_s |beta_s| sum_{l_1+...+l_s = k-1} psi_{l_1}...psi_{l_s}.
std::vector<Rat> majorant_series(int upto);

// Coefficients of theta'(x) - beta_tilde(theta(x)) for a given exact series
// theta (theta[0] must be 0), truncated one degree below theta's length.
// Measures how much slack the scalar majorant flow has against theta.
std::vector<Rat> majorant_defect(const std::vector<Rat>& theta);

// Quintic defect polynomial used by the forced refinement: the negated
// majorant_defect of the exact norm series through degree six, frozen as
// rationals so no LP work is needed at evaluation time.
const std::vector<Rat>& forcing_defect();
double forcing_defect_at(double x);

// Adaptive Simpson quadrature with absolute tolerance; throws
// QuadratureFailure when the refinement depth is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

// Initial value problems, integrated by classical Runge-Kutta with step
// halving until two refinements agree pointwise to step_tol (mixed
// absolute/relative). Blow-up is declared when the leading component reaches
// first_cap (pole guard), any component reaches comp_cap, or the step
// underflows while chasing the tolerance.
struct IvpSystem {
  int dim = 1;
  std::function<void(double x, const double* y, double* dy)> rhs;
  std::vector<double> y0;
  double first_cap = 1e30;
  double comp_cap = 1e6;
  double step_tol = 1e-8;
};

bool ivp_survives(const IvpSystem& sys, double x_end);
// State at x_end; throws std::runtime_error if the system blows up first.
std::vector<double> ivp_state(const IvpSystem& sys, double x_end);
// First abscissa where integration stops surviving, bracketed by a coarse
// scan and refined by bisection to 1e-5. Throws BlowupNotFound when the
// system stays bounded through x_max.
double blowup_abscissa(const IvpSystem& sys, double x_max = 4.0);

// Named majorant systems.
IvpSystem standard_system();  // psi' = beta_tilde(psi)
IvpSystem forced_system();    // psi' = beta_tilde(psi) - forcing_defect_at(x)
enum class CompartmentVariant { simple, fine, polynomial };
IvpSystem compartment_system(CompartmentVariant v);

// Convergence-radius bounds.

// Time for the scalar majorant to reach 2pi: integral of 1/beta_tilde over
// [0, 2pi], absolute error <= 1e-7.
double delta_standard();

struct ForcedBound {
  double l_hat = 0;   // gain of the forced flow over delta_standard
  double radius = 0;  // blow-up abscissa of the forced flow
};
ForcedBound forced_bound();

// Radius bound from the second-order recursion: integral over u in [0, 2pi]
// of 1/sqrt(1 + 2 int_0^u forcing), inner and outer integrals in lockstep.
double second_order_bound();

// Blow-up abscissa of the named compartment system.
double compartment_bound(CompartmentVariant v);

// Boundary of the region where the two-variable majorant stays finite:
// integral of 1/beta_tilde over [y, 2pi], for 0 <= y <= 2pi.
double bch_region(double y);
// Fixed point x = bch_region(x), located by bisection.
double bch_diag();

}  // namespace magnus
