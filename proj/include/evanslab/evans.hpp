// Evans function assembly.
//
// The two basis solutions are shot in transformed coordinates: from -L
// towards 0 with ybar(-L) = (1, 0)^T on the minus side, and from +L
// backwards to 0 with ybar_+(+L) = (0, 1)^T on the plus side. The scalar
// factors exp(mu_minus_1 xi) and exp(mu_plus_2 xi) are dropped entirely:
// they carry no information about zeros of D and overflow for large
// |lambda| at L = 30. With this normalization
//
//   D(lambda) = (B ybar(0)) wedge (B_+ ybar_+(0))
//             = -2 lambda^{1/2} + Phi + O(lambda^{-1/2}),
//
// which is what evans_asymptotic evaluates (three terms).

#pragma once

#include "evanslab/integrate.hpp"

namespace evanslab {

/// lambda is outside the region C where the Evans function is defined.
class OutsideRegionC : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EvansResult {
    Complex lambda;
    Complex D;
    ComplexVec2 y_minus_at_0;  // raw coordinates, B ybar(0)
    ComplexVec2 y_plus_at_0;   // raw coordinates, B_+ ybar_+(0)
    double h = 0.0;
    StepperKind stepper = StepperKind::Magnus4;
    // Diagnostic split of the wedge product,
    //   D = (kappa - kappa_+)/2 (vbar vbar_+ - ubar ubar_+)
    //     + (kappa + kappa_+)/2 (vbar ubar_+ - ubar vbar_+).
    Complex term_kappa_diff;
    Complex term_kappa_sum;
    ComplexVec2 ybar_minus_at_0;  // transformed end states
    ComplexVec2 ybar_plus_at_0;
    long expm_fallbacks = 0;
};

struct AsymptoticEvans {
    Complex lambda;
    Complex D_as;
    double Phi = 0.0;  // Phi_-(0) + Phi_+(0)
};

/// Transformed end state ybar(0) of the minus-side shot.
ComplexVec2 shoot_minus_transformed(const WaveProblem& p, const Complex& lambda,
                                    StepperKind stepper, double h,
                                    ExpmBackend backend = ExpmBackend::Eig,
                                    long* fallbacks = nullptr);

/// Transformed end state ybar_+(0) of the plus-side (backward) shot.
ComplexVec2 shoot_plus_transformed(const WaveProblem& p, const Complex& lambda,
                                   StepperKind stepper, double h,
                                   ExpmBackend backend = ExpmBackend::Eig,
                                   long* fallbacks = nullptr);

/// Raw-coordinate B ybar(0) (the exponential factor is not applied).
ComplexVec2 shoot_minus(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                        double h, ExpmBackend backend = ExpmBackend::Eig);

/// Raw-coordinate B_+ ybar_+(0).
ComplexVec2 shoot_plus(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                       double h, ExpmBackend backend = ExpmBackend::Eig);

/// D(lambda) = wedge of the two shots at the matching point xi = 0.
EvansResult evans_fn(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                     double h, ExpmBackend backend = ExpmBackend::Eig);

/// Three-term large-lambda expansion
///   D_as = -2 lambda^{1/2} + Phi
///          - (1/4) lambda^{-1/2} (Phi^2 - 2 phi(-inf) - 2 phi(+inf) + c^2)
/// with Phi = Phi_-(0) + Phi_+(0) from phi_integral.
AsymptoticEvans evans_asymptotic(const WaveProblem& p, const Complex& lambda);

/// Evans value from shooting in the shift-only frame w = exp(-mu xi) y
/// (mu_minus_1 on the minus side, mu_plus_2 on the plus side; no
/// eigenbasis change, states stay O(sqrt|lambda|), D = w_-(0) wedge
/// w_+(0) directly). Agrees with evans_fn to round-off, but the step
/// matrices keep the full O(|lambda|) entries, which makes this the frame
/// where the conditioning of the matrix-exponential backend and the
/// round-off growth of the Gauss-Legendre method are visible.
Complex evans_fn_shifted(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                         double h, ExpmBackend backend = ExpmBackend::Eig);

}  // namespace evanslab
