// One-step methods for the linear ODE y' = A(xi) y.
//
// Three methods, all of classical order four or two:
//   Magnus4        y_{k+1} = exp(Omega_k) y_k, with Omega_k the two-term
//                  Magnus truncation evaluated at the Gauss-Legendre nodes;
//   ExpMidpoint    y_{k+1} = exp(h A(xi_k + h/2)) y_k;
//   GaussLegendre4 the two-stage Gauss-Legendre implicit Runge-Kutta
//                  method, with the stage equations solved directly (the
//                  ODE is linear, so they are a 4x4 linear system).
//
// Backward steps pass h < 0; the node formulas with signed h then place
// the Gauss-Legendre points at xi_k - (1/2 -+ sqrt3/6)|h|, which is the
// correct reflection.

#pragma once

#include <functional>
#include <stdexcept>

#include "evanslab/complex2.hpp"
#include "evanslab/expm.hpp"
#include "evanslab/problem.hpp"

namespace evanslab {

using MatrixFn = std::function<ComplexMat2(double)>;

enum class StepperKind { Magnus4, ExpMidpoint, GaussLegendre4 };
enum class ExpmBackend { Eig, Pade };  // ignored by GaussLegendre4

const char* to_string(StepperKind k);
const char* to_string(ExpmBackend b);

/// The 4x4 stage system of the Gauss-Legendre method became numerically
/// singular; h is too large for this lambda.
class SingularStageSystem : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct MagnusCoeffs {
    double alpha_k = 0.0;  // mean of phi_side at the two nodes
    double beta_k = 0.0;   // -(sqrt3/12) h (phi_side(node1) - phi_side(node2)),
                           // approximately (1/12) h^2 phi'
};

/// Gauss-Legendre samples of the profile deviation phi - phi_limit(side)
/// over the step [xi_k, xi_k + h].
MagnusCoeffs magnus_coeffs(const WaveProblem& p, Side side, double xi_k, double h);

/// Two-term Magnus truncation over one step:
///   Omega_k = (h/2)(A1 + A2) - (sqrt3/12) h^2 [A1, A2]
/// with A1, A2 the coefficient matrix at the Gauss-Legendre nodes.
ComplexMat2 magnus4_omega(const MatrixFn& a, double xi_k, double h);

/// exp(Omega_k) y_k. The Eig backend falls back to Pade when the step
/// matrix is nearly defective; fallback_count, when given, is incremented
/// on each such fallback.
ComplexVec2 magnus4_step(const MatrixFn& a, double xi_k, double h, const ComplexVec2& y_k,
                         ExpmBackend backend = ExpmBackend::Eig,
                         long* fallback_count = nullptr);

/// exp(h A(xi_k + h/2)) y_k.
ComplexVec2 expmid_step(const MatrixFn& a, double xi_k, double h, const ComplexVec2& y_k,
                        ExpmBackend backend = ExpmBackend::Eig,
                        long* fallback_count = nullptr);

/// Two-stage Gauss-Legendre step; solves the stage system by Gaussian
/// elimination with partial pivoting and throws SingularStageSystem when
/// a pivot falls below 1e-12 times the system norm.
ComplexVec2 gl4_step(const MatrixFn& a, double xi_k, double h, const ComplexVec2& y_k);

/// Matrix exponential through the selected backend with the counted
/// Eig -> Pade fallback.
ComplexMat2 expm_backend(const ComplexMat2& m, ExpmBackend backend, long* fallback_count);

}  // namespace evanslab
