// Closed-form error estimates for the three methods in the stiff regime
// |lambda| h^2 >> 1, plus order/stiffness diagnostics.
//
// Component conventions follow the transformed coordinates: component 1
// is the nonstiff direction, component 2 the stiff one. For the
// fourth-order Magnus method the one-step error is
//
//   L_k = [ gamma_k / kappa,  beta_k / kappa ]^T + higher order,
//   gamma_k = h^5 ( phi''''(m)/4320 + (phi'(m))^2/144 ),  m = xi_k + h/2,
//   beta_k  = (1/12) h^2 phi'(m),
//
// and the accumulated error after many steps keeps the stiff component of
// the LAST step only (the flow damps it) while the nonstiff components
// add up to an integral. The Evans-function error collapses further: the
// Gauss-Legendre quadrature error hidden in the alpha sums vanishes to
// all orders for profiles that settle at infinity, leaving
//
//   E_D = -(h^4/144) int (phi')^2 + O(h^6),
//
// which is h^4 uniformly in lambda.

#pragma once

#include "evanslab/spectral.hpp"
#include "evanslab/steppers.hpp"

namespace evanslab {

class NonpositiveError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LocalErrorEstimate {
    Complex component1;  // nonstiff
    Complex component2;  // stiff
};

struct GlobalErrorEstimate {
    Complex component1;
    Complex component2;
};

struct ErrorReport {
    Complex lambda;
    double h = 0.0;
    StepperKind method = StepperKind::Magnus4;
    double measured_abs = 0.0;
    double estimated_abs = 0.0;
    double ratio = 0.0;  // measured/estimated when estimated != 0
};

struct StiffnessReport {
    double ratio = 1.0;  // quotient of the largest to smallest eigenvalue magnitude
};

// Derivatives of the profile: fourth-order central differences with step
// 1e-3; phi' honors phi_prime_hint when the problem provides one.
double phi_prime(const WaveProblem& p, double x);
double phi_third(const WaveProblem& p, double x);
double phi_fourth(const WaveProblem& p, double x);

/// One-step Magnus error, leading form per component.
LocalErrorEstimate magnus4_local_estimate(const WaveProblem& p, Side side, double xi_k, double h,
                                          const Complex& kappa);

/// Accumulated Magnus error over [xi_0, xi_k]:
///   comp1 = kappa^-1 h^4 ( (phi'''(xi_k)-phi'''(xi_0))/4320
///                          + (1/144) int_{xi_0}^{xi_k} (phi')^2 ),
///   comp2 = the stiff component of the last local step.
GlobalErrorEstimate magnus4_global_estimate(const WaveProblem& p, Side side, double xi_0,
                                            double xi_k, double h, const Complex& kappa);

/// -(h^4/144) int_{-L}^{L} (phi')^2; lambda-independent.
double magnus4_evans_error_estimate(const WaveProblem& p, double h);

/// Predicted Evans-error scale of the exponential midpoint rule,
/// |lambda|^{-1/2} h^2 with unit constant (the constant is not known).
ErrorReport expmid_error_structure(const WaveProblem& p, const Complex& lambda, double h);

/// One-step Gauss-Legendre error:
///   comp1 = kappa^-1 La + kappa^-2 Lb,  comp2 = kappa^-2 Lc,
///   La = int phi_side - h alpha_k                    = O(h^5)
///   Lb = -La (Phi_side(xi_k) + h alpha_k + La/2)     = O(h^5)
///   Lc = 12 beta_k / h - phi_side(xi_k+h) + phi_side(xi_k) = O(h^3).
LocalErrorEstimate gl4_local_estimate(const WaveProblem& p, Side side, double xi_k, double h,
                                      const Complex& kappa);

/// Model line c_model h^4 / |lambda| for the Gauss-Legendre Evans error.
double gl4_evans_error_model(const Complex& lambda, double h, double c_model = 1e-3);

/// Round-off floor of the Evans error, 1e-12 sqrt(|lambda|).
double roundoff_model(const Complex& lambda);

/// Quotient of the largest to smallest eigenvalue magnitude of a step
/// matrix; grows like |lambda| for the problems at hand.
StiffnessReport stiffness_ratio(const ComplexMat2& omega_bar);

/// log2(e_h / e_h2); both arguments must be positive.
double measured_order(double e_h, double e_h2);

// ---------------------------------------------------------------------
// Fisher specializations (profile phi = 1 - 2/(1+e^{xi/sqrt6})^2). The
// global form is the xi-integral of the local error density, written with
// U = 1 + e^{xi/sqrt6}.
// ---------------------------------------------------------------------

LocalErrorEstimate fisher_local_closed_form(const Complex& kappa, double xi, double h);
GlobalErrorEstimate fisher_global_closed_form(const Complex& kappa, double xi, double h);

/// E_D ~ coefficient * h^4 for the Fisher front; equals -sqrt(6)/1080.
double fisher_evans_error_coefficient();

/// Analytic tail integrals for the Fisher profile (untruncated).
double fisher_phi_integral_analytic(Side side, double xi);

}  // namespace evanslab
