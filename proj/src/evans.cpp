#include "evanslab/evans.hpp"

#include <cmath>

namespace evanslab {

namespace {

void require_region(const WaveProblem& p, const Complex& lambda) {
    // Decay selection at -infinity is what the shots need. The full
    // region-C test also constrains the plus end, but for the Fisher
    // front the plus-side essential spectrum reaches Re = 1 and would
    // exclude the standard sweep starting at lambda = i; the backward
    // plus-side shot tracks the subdominant direction and stays
    // well-posed there.
    const SpectralContext ctx = spectral_context(p, lambda);
    if (!(ctx.mu_minus_1.real() > 0.0 && ctx.mu_minus_2.real() < 0.0))
        throw OutsideRegionC("shoot: decay selection at -infinity fails for this lambda");
}

}  // namespace

ComplexVec2 shoot_minus_transformed(const WaveProblem& p, const Complex& lambda,
                                    StepperKind stepper, double h, ExpmBackend backend,
                                    long* fallbacks) {
    require_region(p, lambda);
    const IntegrationRun run = integrate(p, lambda, stepper, CoordFrame::TransformedMinus,
                                         -p.L, 0.0, h, ComplexVec2{Complex{1.0}, Complex{0.0}},
                                         backend);
    if (fallbacks) *fallbacks += run.expm_fallbacks;
    return run.end_state();
}

ComplexVec2 shoot_plus_transformed(const WaveProblem& p, const Complex& lambda,
                                   StepperKind stepper, double h, ExpmBackend backend,
                                   long* fallbacks) {
    require_region(p, lambda);
    const IntegrationRun run = integrate(p, lambda, stepper, CoordFrame::TransformedPlus,
                                         p.L, 0.0, h, ComplexVec2{Complex{0.0}, Complex{1.0}},
                                         backend);
    if (fallbacks) *fallbacks += run.expm_fallbacks;
    return run.end_state();
}

ComplexVec2 shoot_minus(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                        double h, ExpmBackend backend) {
    const SpectralContext ctx = spectral_context(p, lambda);
    return ctx.B * shoot_minus_transformed(p, lambda, stepper, h, backend);
}

ComplexVec2 shoot_plus(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                       double h, ExpmBackend backend) {
    const SpectralContext ctx = spectral_context(p, lambda);
    return ctx.B_plus * shoot_plus_transformed(p, lambda, stepper, h, backend);
}

EvansResult evans_fn(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                     double h, ExpmBackend backend) {
    const SpectralContext ctx = spectral_context(p, lambda);
    EvansResult r;
    r.lambda = lambda;
    r.h = h;
    r.stepper = stepper;
    r.ybar_minus_at_0 = shoot_minus_transformed(p, lambda, stepper, h, backend, &r.expm_fallbacks);
    r.ybar_plus_at_0 = shoot_plus_transformed(p, lambda, stepper, h, backend, &r.expm_fallbacks);
    r.y_minus_at_0 = ctx.B * r.ybar_minus_at_0;
    r.y_plus_at_0 = ctx.B_plus * r.ybar_plus_at_0;
    r.D = wedge(r.y_minus_at_0, r.y_plus_at_0);

    const Complex ub = r.ybar_minus_at_0.u, vb = r.ybar_minus_at_0.v;
    const Complex up = r.ybar_plus_at_0.u, vp = r.ybar_plus_at_0.v;
    r.term_kappa_diff = 0.5 * (ctx.kappa - ctx.kappa_plus) * (vb * vp - ub * up);
    r.term_kappa_sum = 0.5 * (ctx.kappa + ctx.kappa_plus) * (vb * up - ub * vp);
    return r;
}

Complex evans_fn_shifted(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                         double h, ExpmBackend backend) {
    require_region(p, lambda);
    const SpectralContext ctx = spectral_context(p, lambda);
    const long n = std::lround(p.L / h);
    if (std::abs(p.L / h - static_cast<double>(n)) > 1e-9 * std::max(1.0, p.L / h))
        throw BadGrid("evans_fn_shifted: L/h is not a whole number of steps");

    auto run_side = [&](bool minus_side) {
        const Complex mu = minus_side ? ctx.mu_minus_1 : ctx.mu_plus_2;
        const MatrixFn a = [&p, lambda, mu](double xi) {
            ComplexMat2 m = a_matrix(p, xi, lambda);
            m.a11 -= mu;
            m.a22 -= mu;
            return m;
        };
        ComplexVec2 w = minus_side ? ComplexVec2{Complex{1.0}, ctx.mu_minus_1}
                                   : ComplexVec2{Complex{1.0}, ctx.mu_plus_2};
        const double from = minus_side ? -p.L : p.L;
        const double hs = minus_side ? h : -h;
        for (long k = 0; k < n; ++k) {
            const double xi = from + hs * static_cast<double>(k);
            switch (stepper) {
                case StepperKind::Magnus4: w = magnus4_step(a, xi, hs, w, backend); break;
                case StepperKind::ExpMidpoint: w = expmid_step(a, xi, hs, w, backend); break;
                case StepperKind::GaussLegendre4: w = gl4_step(a, xi, hs, w); break;
            }
        }
        return w;
    };
    return wedge(run_side(true), run_side(false));
}

AsymptoticEvans evans_asymptotic(const WaveProblem& p, const Complex& lambda) {
    if (lambda == Complex{0.0})
        throw std::invalid_argument("evans_asymptotic: lambda must be nonzero");
    AsymptoticEvans a;
    a.lambda = lambda;
    a.Phi = phi_integral(p, Side::Minus, 0.0) + phi_integral(p, Side::Plus, 0.0);
    const Complex root = std::sqrt(lambda);
    const double bracket = a.Phi * a.Phi - 2.0 * p.phi_minus_limit - 2.0 * p.phi_plus_limit +
                           p.c * p.c;
    a.D_as = -2.0 * root + a.Phi - 0.25 * bracket / root;
    return a;
}

}  // namespace evanslab
