// Two matrix-exponential backends for 2x2 complex matrices.
//
// The step matrices exponentiated by the Magnus-type methods have one
// eigenvalue of order h*kappa and one of order h/kappa, so they are far
// from defective in the regime of interest and the eigendecomposition
// route is both cheap and accurate. The Pade backend (diagonal (6,6)
// with scaling and squaring) is kept as the conventional alternative;
// comparing the two on the same sweep is one of the experiments this
// library exists to run.

#pragma once

#include <optional>
#include <stdexcept>

#include "evanslab/complex2.hpp"

namespace evanslab {

/// Raised when the eigenvalue separation is too small for a trustworthy
/// eigendecomposition. Callers fall back to expm_pade.
class NearlyDefective : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EigenDecomp2 {
    Complex lambda1;   // eigenvalue with the larger real part
    Complex lambda2;   // ties broken by larger imaginary part
    ComplexMat2 V;     // columns are eigenvectors
    ComplexMat2 Vinv;
};

/// Relative eigenvalue separation below which eig2 refuses to decompose.
inline constexpr double kEigSeparationTol = 1e-8;

/// Eigendecomposition of a 2x2 complex matrix, or nullopt when the
/// eigenvalues are separated by less than kEigSeparationTol * |M|.
/// Exactly diagonal input is always accepted (V is the identity up to a
/// column swap), so the zero matrix and repeated diagonal entries work.
std::optional<EigenDecomp2> try_eig2(const ComplexMat2& m);

/// Throwing wrapper around try_eig2.
EigenDecomp2 eig2(const ComplexMat2& m);

/// exp(M) via diagonalization: V diag(exp l1, exp l2) V^-1.
ComplexMat2 expm_eig(const ComplexMat2& m);

/// exp(M) via diagonal (6,6) Pade approximation with scaling and
/// squaring; M is scaled so that |M|/2^s <= 0.5 before the rational
/// approximation and squared back s times.
ComplexMat2 expm_pade(const ComplexMat2& m);

}  // namespace evanslab
