#include "evanslab/integrate.hpp"

#include <cmath>

namespace evanslab {

const char* to_string(CoordFrame f) {
    switch (f) {
        case CoordFrame::Raw: return "raw";
        case CoordFrame::TransformedMinus: return "transformed_minus";
        case CoordFrame::TransformedPlus: return "transformed_plus";
    }
    return "?";
}

MatrixFn coefficient_fn(const WaveProblem& p, const SpectralContext& ctx, CoordFrame coords) {
    switch (coords) {
        case CoordFrame::Raw:
            return [&p, lambda = ctx.lambda](double xi) { return a_matrix(p, xi, lambda); };
        case CoordFrame::TransformedMinus:
            return [&p, ctx](double xi) { return abar_matrix(p, ctx, xi); };
        case CoordFrame::TransformedPlus:
            return [&p, ctx](double xi) { return abar_matrix_plus(p, ctx, xi); };
    }
    throw BadGrid("coefficient_fn: unknown frame");
}

IntegrationRun integrate(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                         CoordFrame coords, double from_xi, double to_xi, double h,
                         const ComplexVec2& y0, ExpmBackend backend) {
    if (!(h > 0.0)) throw BadGrid("integrate: h must be positive");
    const double span = to_xi - from_xi;
    const double steps_real = std::abs(span) / h;
    const long n = std::lround(steps_real);
    if (std::abs(steps_real - n) > 1e-9 * std::max(1.0, steps_real))
        throw BadGrid("integrate: (to_xi - from_xi)/h is not a whole number of steps");

    IntegrationRun run;
    run.lambda = lambda;
    run.h = h;
    run.direction = span >= 0.0 ? Direction::Forward : Direction::Backward;
    run.coords = coords;
    run.start_xi = from_xi;
    run.end_xi = to_xi;
    run.y0 = y0;
    run.states.reserve(n + 1);
    run.states.emplace_back(from_xi, y0);

    // Probe the frame once so a degenerate kappa fails before stepping.
    const SpectralContext ctx = spectral_context(p, lambda);
    const MatrixFn a = coefficient_fn(p, ctx, coords);
    if (coords != CoordFrame::Raw) (void)a(from_xi);

    const double hs = run.direction == Direction::Forward ? h : -h;
    ComplexVec2 y = y0;
    for (long k = 0; k < n; ++k) {
        const double xi_k = from_xi + hs * static_cast<double>(k);
        try {
            switch (stepper) {
                case StepperKind::Magnus4:
                    y = magnus4_step(a, xi_k, hs, y, backend, &run.expm_fallbacks);
                    break;
                case StepperKind::ExpMidpoint:
                    y = expmid_step(a, xi_k, hs, y, backend, &run.expm_fallbacks);
                    break;
                case StepperKind::GaussLegendre4:
                    y = gl4_step(a, xi_k, hs, y);
                    break;
            }
        } catch (const SingularStageSystem& e) {
            throw StepFailure(e.what(), static_cast<int>(k));
        }
        const double xi_next = (k + 1 == n) ? to_xi : from_xi + hs * static_cast<double>(k + 1);
        run.states.emplace_back(xi_next, y);
    }
    return run;
}

IntegrationRun reference_solution(const WaveProblem& p, const Complex& lambda, CoordFrame coords,
                                  double from_xi, double to_xi, const ComplexVec2& y0,
                                  double h_ref) {
    return integrate(p, lambda, StepperKind::GaussLegendre4, coords, from_xi, to_xi, h_ref, y0);
}

}  // namespace evanslab
