#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evanslab/error_estimates.hpp"
#include "evanslab/integrate.hpp"

using namespace evanslab;

namespace {

constexpr double kSqrt6 = 2.449489742783178;

// Analytic derivatives of the Fisher profile, s = exp(xi/sqrt6):
//   phi'    = (2 sqrt6/3) s / (1+s)^3
//   phi'''  = (sqrt6/9) s (1 - 7s + 4s^2) / (1+s)^5
//   phi'''' = (s/9) (1 - 18s + 33s^2 - 8s^3) / (1+s)^6
double fisher_phi_prime(double xi) {
    const double s = std::exp(xi / kSqrt6);
    return (2.0 * kSqrt6 / 3.0) * s / std::pow(1.0 + s, 3);
}

double fisher_phi_third(double xi) {
    const double s = std::exp(xi / kSqrt6);
    return (kSqrt6 / 9.0) * s * (1.0 - 7.0 * s + 4.0 * s * s) / std::pow(1.0 + s, 5);
}

double fisher_phi_fourth(double xi) {
    const double s = std::exp(xi / kSqrt6);
    return (s / 9.0) * (1.0 - 18.0 * s + 33.0 * s * s - 8.0 * s * s * s) /
           std::pow(1.0 + s, 6);
}

WaveProblem constant_profile_problem(double phi0) {
    WaveProblem p;
    p.phi = [phi0](double) { return phi0; };
    p.c = 1.0;
    p.phi_minus_limit = phi0;
    p.phi_plus_limit = phi0;
    p.L = 5.0;
    return make_wave_problem(p);
}

ComplexVec2 one_step_local_error(const WaveProblem& p, const Complex& lambda, StepperKind kind,
                                 double h) {
    const ComplexVec2 start =
        reference_solution(p, lambda, CoordFrame::TransformedMinus, -p.L, -1.0,
                           {Complex{1.0}, Complex{0.0}})
            .end_state();
    const SpectralContext ctx = spectral_context(p, lambda);
    const MatrixFn a = coefficient_fn(p, ctx, CoordFrame::TransformedMinus);
    ComplexVec2 stepped;
    switch (kind) {
        case StepperKind::Magnus4: stepped = magnus4_step(a, -1.0, h, start); break;
        case StepperKind::ExpMidpoint: stepped = expmid_step(a, -1.0, h, start); break;
        case StepperKind::GaussLegendre4: stepped = gl4_step(a, -1.0, h, start); break;
    }
    const ComplexVec2 exact =
        reference_solution(p, lambda, CoordFrame::TransformedMinus, -1.0, -1.0 + h, start, 1e-3)
            .end_state();
    return stepped - exact;
}

}  // namespace

TEST_CASE("finite-difference profile derivatives against analytic forms") {
    const WaveProblem p = fisher_problem();
    for (double xi : {-3.0, -1.0, 0.0, 1.5}) {
        CHECK(phi_prime(p, xi) == doctest::Approx(fisher_phi_prime(xi)).epsilon(1e-9));
        CHECK(phi_third(p, xi) == doctest::Approx(fisher_phi_third(xi)).epsilon(1e-6));
        CHECK(phi_fourth(p, xi) ==
              doctest::Approx(fisher_phi_fourth(xi)).epsilon(1e-4).scale(1e-3));
    }

    WaveProblem hinted = p;
    bool used = false;
    hinted.phi_prime_hint = [&used](double xi) {
        used = true;
        return fisher_phi_prime(xi);
    };
    CHECK(phi_prime(hinted, -1.0) == fisher_phi_prime(-1.0));
    CHECK(used);
}

TEST_CASE("magnus4 local estimate") {
    const WaveProblem p = fisher_problem();
    const Complex kappa = spectral_context(p, Complex{0.0, 1e4}).kappa;

    SUBCASE("constant profile vanishes") {
        const WaveProblem q = constant_profile_problem(0.4);
        const LocalErrorEstimate e = magnus4_local_estimate(q, Side::Minus, -1.0, 0.1, kappa);
        CHECK(std::abs(e.component1) <= 1e-16);  // finite-difference noise floor
        CHECK(std::abs(e.component2) <= 1e-14);
    }

    SUBCASE("matches the Fisher closed form at xi = -1, h = 0.1") {
        const LocalErrorEstimate got = magnus4_local_estimate(p, Side::Minus, -1.0, 0.1, kappa);
        const LocalErrorEstimate want = fisher_local_closed_form(kappa, -1.0, 0.1);
        CHECK(std::abs(got.component1 - want.component1) <= 0.01 * std::abs(want.component1));
        CHECK(std::abs(got.component2 - want.component2) <= 0.01 * std::abs(want.component2));
    }

    SUBCASE("h-scaling laws: x32 nonstiff, x4 stiff under doubling") {
        const LocalErrorEstimate e1 = magnus4_local_estimate(p, Side::Minus, -1.0, 0.1, kappa);
        const LocalErrorEstimate e2 = magnus4_local_estimate(p, Side::Minus, -1.0, 0.2, kappa);
        CHECK(std::abs(e2.component1 / e1.component1) ==
              doctest::Approx(32.0).epsilon(0.10));
        CHECK(std::abs(e2.component2 / e1.component2) == doctest::Approx(4.0).epsilon(0.10));
    }

    SUBCASE("degenerate kappa is rejected") {
        CHECK_THROWS_AS(
            (void)magnus4_local_estimate(p, Side::Minus, -1.0, 0.1, Complex{1e-14}),
            DegenerateKappa);
    }
}

TEST_CASE("magnus4 global estimate") {
    const WaveProblem p = fisher_problem();
    const Complex kappa = spectral_context(p, Complex{0.0, 1e4}).kappa;

    SUBCASE("matches the Fisher closed form with xi_0 treated as -infinity") {
        const GlobalErrorEstimate got =
            magnus4_global_estimate(p, Side::Minus, -30.0, -1.0, 0.1, kappa);
        const GlobalErrorEstimate want = fisher_global_closed_form(kappa, -1.0, 0.1);
        CHECK(std::abs(got.component1 - want.component1) <= 0.01 * std::abs(want.component1));
        CHECK(std::abs(got.component2 - want.component2) <= 0.01 * std::abs(want.component2));
    }

    SUBCASE("constant profile vanishes") {
        const WaveProblem q = constant_profile_problem(-0.2);
        const GlobalErrorEstimate e =
            magnus4_global_estimate(q, Side::Minus, -4.0, -1.0, 0.1, kappa);
        CHECK(std::abs(e.component1) <= 1e-16);
        CHECK(std::abs(e.component2) <= 1e-14);
    }

    SUBCASE("stiff component equals the last local stiff component") {
        const GlobalErrorEstimate g =
            magnus4_global_estimate(p, Side::Minus, -30.0, -1.0, 0.1, kappa);
        const LocalErrorEstimate l = magnus4_local_estimate(p, Side::Minus, -1.1, 0.1, kappa);
        CHECK(std::abs(g.component2 - l.component2) <= 1e-13 * std::abs(l.component2));
    }
}

TEST_CASE("magnus4 Evans error estimate for the Fisher front") {
    const WaveProblem p = fisher_problem();
    // -(h^4/144) int (phi')^2 = -(sqrt6/1080) h^4 ~ -0.002268 h^4.
    CHECK(fisher_evans_error_coefficient() ==
          doctest::Approx(-0.002268).epsilon(2e-4));
    const double est1 = magnus4_evans_error_estimate(p, 1.0);
    CHECK(est1 == doctest::Approx(-kSqrt6 / 1080.0).epsilon(1e-6));
    const double est = magnus4_evans_error_estimate(p, 0.1);
    CHECK(est == doctest::Approx(-2.268e-7).epsilon(1e-3));
    CHECK(magnus4_evans_error_estimate(constant_profile_problem(1.0), 0.1) == 0.0);
}

TEST_CASE("expmid error structure scalings") {
    const WaveProblem p = fisher_problem();
    const double base = expmid_error_structure(p, Complex{0.0, 1e4}, 0.1).estimated_abs;
    CHECK(expmid_error_structure(p, Complex{0.0, 1e4}, 0.2).estimated_abs ==
          doctest::Approx(4.0 * base).epsilon(1e-12));
    CHECK(expmid_error_structure(p, Complex{0.0, 1e6}, 0.1).estimated_abs ==
          doctest::Approx(0.1 * base).epsilon(1e-12));
    // Measured: by 1e4 i the midpoint rule already beats magnus4 on the
    // Evans error (checked at full strength in the acceptance suite).
    CHECK(base == doctest::Approx(0.01 / 100.0).epsilon(1e-12));
}

TEST_CASE("gl4 local estimate") {
    const WaveProblem p = fisher_problem();
    const Complex kappa = spectral_context(p, Complex{0.0, 1e4}).kappa;

    SUBCASE("constant profile vanishes") {
        const WaveProblem q = constant_profile_problem(0.7);
        const LocalErrorEstimate e = gl4_local_estimate(q, Side::Minus, -1.0, 0.1, kappa);
        CHECK(std::abs(e.component1) <= 1e-16);
        CHECK(std::abs(e.component2) <= 1e-13);
    }

    SUBCASE("h-scaling of the pieces: La x32, Lc x8 under halving") {
        const LocalErrorEstimate big = gl4_local_estimate(p, Side::Minus, -1.0, 0.2, kappa);
        const LocalErrorEstimate small = gl4_local_estimate(p, Side::Minus, -1.0, 0.1, kappa);
        // component1 is dominated by kappa^-1 La = O(h^5) here.
        CHECK(std::abs(big.component1 / small.component1) ==
              doctest::Approx(32.0).epsilon(0.15));
        CHECK(std::abs(big.component2 / small.component2) ==
              doctest::Approx(8.0).epsilon(0.15));
    }

    SUBCASE("matches the measured one-step error at lambda = 1e4 i") {
        const ComplexVec2 err =
            one_step_local_error(p, Complex{0.0, 1e4}, StepperKind::GaussLegendre4, 0.1);
        const LocalErrorEstimate est = gl4_local_estimate(p, Side::Minus, -1.0, 0.1, kappa);
        CHECK(std::abs(err.u) <= 1.5 * std::abs(est.component1));
        CHECK(std::abs(err.u) >= std::abs(est.component1) / 1.5);
        CHECK(std::abs(err.v) <= 1.5 * std::abs(est.component2));
        CHECK(std::abs(err.v) >= std::abs(est.component2) / 1.5);
    }
}

TEST_CASE("gl4 Evans error model and the round-off floor") {
    CHECK(gl4_evans_error_model(Complex{0.0, 1e3}, 0.1) == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(gl4_evans_error_model(Complex{0.0, 1e4}, 0.1) == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(gl4_evans_error_model(Complex{0.0, 1e3}, 0.05) ==
          doctest::Approx(1e-10 / 16.0).epsilon(1e-12));

    CHECK(roundoff_model(Complex{0.0, 1e8}) == doctest::Approx(1e-8).epsilon(1e-12));
    CHECK(roundoff_model(Complex{1.0, 0.0}) == doctest::Approx(1e-12).epsilon(1e-12));

    // Crossing point of the two models at h = 0.1: 1e-7/|l| = 1e-12 sqrt|l|
    // gives |l| = 10^(10/3). Locate it by bisection.
    double lo = 2.0, hi = 5.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Complex lam{0.0, std::pow(10.0, mid)};
        if (gl4_evans_error_model(lam, 0.1) > roundoff_model(lam)) lo = mid;
        else hi = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(10.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("stiffness ratio") {
    const ComplexMat2 diag{Complex{1.0}, {}, {}, Complex{100.0}};
    CHECK(stiffness_ratio(diag).ratio == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(stiffness_ratio(identity2()).ratio == doctest::Approx(1.0).epsilon(1e-14));

    // The step-matrix stiffness ratio grows linearly in |lambda|.
    const WaveProblem p = fisher_problem();
    double ratios[2];
    for (int i = 0; i < 2; ++i) {
        const Complex lambda{0.0, std::pow(10.0, 4 + i)};
        const SpectralContext ctx = spectral_context(p, lambda);
        const MatrixFn abar = [&](double x) { return abar_matrix(p, ctx, x); };
        ratios[i] = stiffness_ratio(magnus4_omega(abar, -1.0, 0.1)).ratio;
    }
    CHECK(ratios[1] / ratios[0] == doctest::Approx(10.0).epsilon(0.3));
}

TEST_CASE("measured_order") {
    CHECK(measured_order(1.6e-5, 1e-6) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(measured_order(4e-4, 1e-4) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(measured_order(3.7e-9, 3.7e-9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)measured_order(0.0, 1e-6), NonpositiveError);
    CHECK_THROWS_AS((void)measured_order(1e-6, -1.0), NonpositiveError);
}

TEST_CASE("measured global error matches the corrected Fisher closed form, not the decayed one") {
    // The xi-integral of the local error density gives a first component
    // ~1.66x the alternative (decaying) polynomial at xi = -1; the
    // measured error decides between them.
    const WaveProblem p = fisher_problem();
    const Complex lambda{0.0, 1e4};
    const double h = 0.1;
    const ComplexVec2 y0{Complex{1.0}, Complex{0.0}};
    const ComplexVec2 got = integrate(p, lambda, StepperKind::Magnus4,
                                      CoordFrame::TransformedMinus, -p.L, -1.0, h, y0)
                                .end_state();
    const ComplexVec2 ref =
        reference_solution(p, lambda, CoordFrame::TransformedMinus, -p.L, -1.0, y0).end_state();
    const Complex kappa = spectral_context(p, lambda).kappa;
    const GlobalErrorEstimate want = fisher_global_closed_form(kappa, -1.0, h);
    const double meas1 = std::abs(got.u - ref.u);
    CHECK(meas1 <= 1.25 * std::abs(want.component1));
    CHECK(meas1 >= std::abs(want.component1) / 1.25);
    // The stiff component carries a relative O(1/kappa) correction
    // (~20% at this lambda), so it gets the wider band.
    const double meas2 = std::abs(got.v - ref.v);
    CHECK(meas2 <= 1.5 * std::abs(want.component2));
    CHECK(meas2 >= std::abs(want.component2) / 1.5);
}
