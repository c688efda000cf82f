#include "evanslab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace evanslab {

namespace {

// kappa = sqrt(c^2 + 4(lambda - lim)) inherits a sqrt(eps)-sized value from
// round-off when lambda sits at the branch point, so the degeneracy test
// must scale like the square root of the problem size.
bool kappa_degenerate(const Complex& kappa, const Complex& lambda, double c, double lim) {
    const double scale = 1.0 + std::abs(c) + 2.0 * std::sqrt(std::abs(lambda) + std::abs(lim));
    return std::abs(kappa) <= 1e-7 * scale;
}

}  // namespace

ComplexMat2 a_matrix(const WaveProblem& p, double xi, const Complex& lambda) {
    return {Complex{0.0}, Complex{1.0}, lambda - p.phi(xi), Complex{-p.c}};
}

SpectralContext spectral_context(const WaveProblem& p, const Complex& lambda) {
    SpectralContext ctx;
    ctx.lambda = lambda;
    const double c2 = p.c * p.c;
    ctx.kappa = std::sqrt(Complex{c2} + 4.0 * (lambda - p.phi_minus_limit));
    ctx.kappa_plus = std::sqrt(Complex{c2} + 4.0 * (lambda - p.phi_plus_limit));
    ctx.mu_minus_1 = 0.5 * (-p.c + ctx.kappa);
    ctx.mu_minus_2 = 0.5 * (-p.c - ctx.kappa);
    ctx.mu_plus_1 = 0.5 * (-p.c + ctx.kappa_plus);
    ctx.mu_plus_2 = 0.5 * (-p.c - ctx.kappa_plus);
    ctx.B = {Complex{1.0}, Complex{1.0}, ctx.mu_minus_1, ctx.mu_minus_2};
    ctx.B_plus = {Complex{1.0}, Complex{1.0}, ctx.mu_plus_1, ctx.mu_plus_2};
    return ctx;
}

ComplexMat2 abar_matrix(const WaveProblem& p, const SpectralContext& ctx, double xi) {
    if (kappa_degenerate(ctx.kappa, ctx.lambda, p.c, p.phi_minus_limit))
        throw DegenerateKappa("abar_matrix: kappa = 0, transform undefined");
    const Complex q = (p.phi(xi) - p.phi_minus_limit) / ctx.kappa;
    return {-q, -q, q, -ctx.kappa + q};
}

ComplexMat2 abar_matrix_plus(const WaveProblem& p, const SpectralContext& ctx, double xi) {
    if (kappa_degenerate(ctx.kappa_plus, ctx.lambda, p.c, p.phi_plus_limit))
        throw DegenerateKappa("abar_matrix_plus: kappa_+ = 0, transform undefined");
    const Complex q = (p.phi(xi) - p.phi_plus_limit) / ctx.kappa_plus;
    return {ctx.kappa_plus - q, -q, q, q};
}

RegionCheck region_check(const WaveProblem& p, const Complex& lambda) {
    const SpectralContext ctx = spectral_context(p, lambda);
    RegionCheck r;
    r.margin = std::min({ctx.mu_minus_1.real(), -ctx.mu_minus_2.real(),
                         ctx.mu_plus_1.real(), -ctx.mu_plus_2.real()});
    r.in_region_C = r.margin > 0.0;
    return r;
}

}  // namespace evanslab
