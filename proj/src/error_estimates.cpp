#include "evanslab/error_estimates.hpp"

#include <cmath>
#include <limits>

namespace evanslab {

namespace {

constexpr double kSqrt6 = 2.449489742783178;
constexpr double kFdStep = 1e-3;
// The fourth-derivative stencil amplifies rounding by ~27 eps / d^4, which
// at d = 1e-3 is 1e-3 absolute -- worse than the quantity itself in the
// wave tails. A wider step keeps both truncation and rounding near 1e-6.
constexpr double kFdStepFourth = 7e-3;

double fd_first(const std::function<double(double)>& f, double x, double d) {
    return (f(x - 2 * d) - 8 * f(x - d) + 8 * f(x + d) - f(x + 2 * d)) / (12 * d);
}

double fd_third(const std::function<double(double)>& f, double x, double d) {
    return (0.125 * f(x - 3 * d) - f(x - 2 * d) + 1.625 * f(x - d) - 1.625 * f(x + d) +
            f(x + 2 * d) - 0.125 * f(x + 3 * d)) /
           (d * d * d);
}

double fd_fourth(const std::function<double(double)>& f, double x, double d) {
    return (-f(x - 3 * d) / 6 + 2 * f(x - 2 * d) - 6.5 * f(x - d) + f(x) * 28.0 / 3.0 -
            6.5 * f(x + d) + 2 * f(x + 2 * d) - f(x + 3 * d) / 6) /
           (d * d * d * d);
}

void require_kappa(const Complex& kappa) {
    if (std::abs(kappa) < 1e-10)
        throw DegenerateKappa("error estimate: kappa = 0");
}

}  // namespace

double phi_prime(const WaveProblem& p, double x) {
    if (p.phi_prime_hint) return p.phi_prime_hint(x);
    return fd_first(p.phi, x, kFdStep);
}

double phi_third(const WaveProblem& p, double x) { return fd_third(p.phi, x, kFdStep); }

double phi_fourth(const WaveProblem& p, double x) { return fd_fourth(p.phi, x, kFdStepFourth); }

LocalErrorEstimate magnus4_local_estimate(const WaveProblem& p, Side side, double xi_k, double h,
                                          const Complex& kappa) {
    (void)side;  // only derivatives of phi enter; the limit constants cancel
    require_kappa(kappa);
    if (!(h > 0.0)) throw std::invalid_argument("magnus4_local_estimate: h must be positive");
    const double m = xi_k + 0.5 * h;
    const double dp = phi_prime(p, m);
    const double h2 = h * h;
    const double gamma = h2 * h2 * h * (phi_fourth(p, m) / 4320.0 + dp * dp / 144.0);
    const double beta = h2 * dp / 12.0;
    return {gamma / kappa, beta / kappa};
}

GlobalErrorEstimate magnus4_global_estimate(const WaveProblem& p, Side side, double xi_0,
                                            double xi_k, double h, const Complex& kappa) {
    (void)side;
    require_kappa(kappa);
    if (!(xi_0 < xi_k)) throw std::invalid_argument("magnus4_global_estimate: xi_0 < xi_k required");
    if (!(h > 0.0)) throw std::invalid_argument("magnus4_global_estimate: h must be positive");
    const double sq = integrate_panels([&](double x) {
        const double d = phi_prime(p, x);
        return d * d;
    }, xi_0, xi_k);
    const double h2 = h * h;
    const double comp1 = h2 * h2 * ((phi_third(p, xi_k) - phi_third(p, xi_0)) / 4320.0 + sq / 144.0);
    const double comp2 = h2 * phi_prime(p, xi_k - 0.5 * h) / 12.0;
    return {comp1 / kappa, comp2 / kappa};
}

double magnus4_evans_error_estimate(const WaveProblem& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("magnus4_evans_error_estimate: h must be positive");
    const double sq = integrate_panels([&](double x) {
        const double d = phi_prime(p, x);
        return d * d;
    }, -p.L, p.L);
    const double h2 = h * h;
    return -h2 * h2 / 144.0 * sq;
}

ErrorReport expmid_error_structure(const WaveProblem& p, const Complex& lambda, double h) {
    (void)p;
    ErrorReport r;
    r.lambda = lambda;
    r.h = h;
    r.method = StepperKind::ExpMidpoint;
    r.measured_abs = std::numeric_limits<double>::quiet_NaN();
    r.estimated_abs = h * h / std::sqrt(std::abs(lambda));
    r.ratio = std::numeric_limits<double>::quiet_NaN();
    return r;
}

LocalErrorEstimate gl4_local_estimate(const WaveProblem& p, Side side, double xi_k, double h,
                                      const Complex& kappa) {
    require_kappa(kappa);
    if (!(h > 0.0)) throw std::invalid_argument("gl4_local_estimate: h must be positive");
    const double lim = (side == Side::Minus) ? p.phi_minus_limit : p.phi_plus_limit;
    const MagnusCoeffs mc = magnus_coeffs(p, side, xi_k, h);
    const double integral =
        integrate_panels([&](double x) { return p.phi(x) - lim; }, xi_k, xi_k + h);
    const double la = integral - h * mc.alpha_k;
    const double big_phi = phi_integral(p, side, xi_k);
    const double lb = -la * (big_phi + h * mc.alpha_k + 0.5 * la);
    const double lc = 12.0 * mc.beta_k / h - (p.phi(xi_k + h) - lim) + (p.phi(xi_k) - lim);
    const Complex k2 = kappa * kappa;
    return {la / kappa + lb / k2, lc / k2};
}

double gl4_evans_error_model(const Complex& lambda, double h, double c_model) {
    const double h2 = h * h;
    return c_model * h2 * h2 / std::abs(lambda);
}

double roundoff_model(const Complex& lambda) { return 1e-12 * std::sqrt(std::abs(lambda)); }

StiffnessReport stiffness_ratio(const ComplexMat2& omega_bar) {
    const EigenDecomp2 d = eig2(omega_bar);
    const double m1 = std::abs(d.lambda1);
    const double m2 = std::abs(d.lambda2);
    const double lo = std::min(m1, m2);
    const double hi = std::max(m1, m2);
    StiffnessReport r;
    r.ratio = (lo == 0.0) ? std::numeric_limits<double>::infinity() : hi / lo;
    return r;
}

double measured_order(double e_h, double e_h2) {
    if (!(e_h > 0.0) || !(e_h2 > 0.0))
        throw NonpositiveError("measured_order: errors must be positive");
    return std::log2(e_h / e_h2);
}

LocalErrorEstimate fisher_local_closed_form(const Complex& kappa, double xi, double h) {
    require_kappa(kappa);
    const double s = std::exp(xi / kSqrt6);
    const double u = 1.0 + s;
    const double u3 = u * u * u;
    const double h2 = h * h;
    const double comp1 =
        h2 * h2 * h * s * (((-8.0 * s + 33.0) * s + 702.0) * s + 1.0) / (38880.0 * u3 * u3);
    const double comp2 = kSqrt6 * h2 * s / (18.0 * u3);
    return {comp1 / kappa, comp2 / kappa};
}

GlobalErrorEstimate fisher_global_closed_form(const Complex& kappa, double xi, double h) {
    require_kappa(kappa);
    const double s = std::exp(xi / kSqrt6);
    const double ui = 1.0 / (1.0 + s);
    const double ui2 = ui * ui;
    const double h2 = h * h;
    const double comp1 = kSqrt6 * h2 * h2 *
                         (36.0 + ui2 * (4.0 + ui * (-19.0 + ui * (-153.0 + ui * 132.0)))) /
                         38880.0;
    const double u3 = (1.0 + s) * (1.0 + s) * (1.0 + s);
    const double comp2 = kSqrt6 * h2 * s / (18.0 * u3);
    return {comp1 / kappa, comp2 / kappa};
}

double fisher_evans_error_coefficient() { return -kSqrt6 / 1080.0; }

double fisher_phi_integral_analytic(Side side, double xi) {
    const double s = std::exp(xi / kSqrt6);
    if (side == Side::Minus) return 2.0 * kSqrt6 * (std::log1p(s) - 1.0 / (1.0 + s) + 1.0);
    return 2.0 * kSqrt6 * (std::log(s / (1.0 + s)) + 1.0 / (1.0 + s));
}

}  // namespace evanslab
