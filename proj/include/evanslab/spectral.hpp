// Per-lambda spectral bookkeeping.
//
// For each spectral parameter lambda the shooting method needs the
// coefficient matrix A(xi; lambda), the spatial eigenvalues mu of the
// constant limit matrices, the parameters kappa = sqrt(c^2 + 4(lambda -
// phi(-inf))) and kappa_+ (same with the plus limit), and the eigenvector
// transforms B, B_+ that split the solution into nonstiff and stiff
// components. The transformed coefficient matrices abar have the stiff
// rate -kappa (resp. +kappa_+) isolated in one diagonal entry, which is
// what makes the stiffness analysis tractable.

#pragma once

#include <stdexcept>

#include "evanslab/complex2.hpp"
#include "evanslab/problem.hpp"

namespace evanslab {

/// kappa (or kappa_+) vanished: lambda = phi_limit - c^2/4, where the
/// stiff/nonstiff transform is undefined.
class DegenerateKappa : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SpectralContext {
    Complex lambda;
    Complex kappa;       // sqrt(c^2 + 4(lambda - phi_minus_limit)), Re >= 0
    Complex kappa_plus;  // sqrt(c^2 + 4(lambda - phi_plus_limit)), Re >= 0
    Complex mu_minus_1, mu_minus_2;  // 0.5(-c +- kappa)
    Complex mu_plus_1, mu_plus_2;    // 0.5(-c +- kappa_plus)
    ComplexMat2 B;       // columns (1, mu_minus_1), (1, mu_minus_2)
    ComplexMat2 B_plus;  // columns (1, mu_plus_1), (1, mu_plus_2)
};

struct RegionCheck {
    bool in_region_C = false;
    double margin = 0.0;  // min over both ends of Re mu1 and -Re mu2
};

/// Coefficient matrix of the first-order spectral ODE,
/// [[0, 1], [lambda - phi(xi), -c]].
ComplexMat2 a_matrix(const WaveProblem& p, double xi, const Complex& lambda);

/// All per-lambda derived quantities with the principal square-root
/// branch. kappa = 0 is allowed here; only the transforms reject it.
SpectralContext spectral_context(const WaveProblem& p, const Complex& lambda);

/// Minus-side transformed coefficient matrix
///   B^-1 A B - mu_minus_1 I =
///   [[-phim/kappa, -phim/kappa], [phim/kappa, -kappa + phim/kappa]]
/// with phim(xi) = phi(xi) - phi_minus_limit. Throws DegenerateKappa.
ComplexMat2 abar_matrix(const WaveProblem& p, const SpectralContext& ctx, double xi);

/// Plus-side analogue, shifted by mu_plus_2 (the direction decaying at
/// +infinity):
///   B_+^-1 A B_+ - mu_plus_2 I =
///   [[kappa_+ - phip/kappa_+, -phip/kappa_+], [phip/kappa_+, phip/kappa_+]]
/// with phip(xi) = phi(xi) - phi_plus_limit.
ComplexMat2 abar_matrix_plus(const WaveProblem& p, const SpectralContext& ctx, double xi);

/// lambda lies in the region C right of the essential-spectrum curves iff
/// Re mu1 > 0 > Re mu2 at both infinities.
RegionCheck region_check(const WaveProblem& p, const Complex& lambda);

}  // namespace evanslab
