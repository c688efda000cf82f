#include "evanslab/problem.hpp"

#include <cmath>

namespace evanslab {

namespace {

constexpr double kSqrt6 = 2.449489742783178;

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kNode[5] = {-0.906179845938664, -0.5384693101056831, 0.0,
                             0.5384693101056831, 0.906179845938664};
constexpr double kWeight[5] = {0.23692688505618908, 0.47862867049936647,
                               0.5688888888888889, 0.47862867049936647,
                               0.23692688505618908};

}  // namespace

double integrate_panels(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) return 0.0;
    const int n = static_cast<int>(std::ceil((b - a) / 0.1 - 1e-12));
    const double w = (b - a) / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double mid = a + (i + 0.5) * w;
        double panel = 0.0;
        for (int q = 0; q < 5; ++q) panel += kWeight[q] * f(mid + 0.5 * w * kNode[q]);
        total += 0.5 * w * panel;
    }
    return total;
}

WaveProblem make_wave_problem(WaveProblem p) {
    if (!p.phi) throw BadProblem("wave problem: profile callable is empty");
    if (!(p.L > 0.0)) throw BadProblem("wave problem: L must be positive");
    const double dev_minus = std::abs(p.phi(-p.L) - p.phi_minus_limit);
    const double dev_plus = std::abs(p.phi(p.L) - p.phi_plus_limit);
    if (dev_minus > p.boundary_tol || dev_plus > p.boundary_tol)
        throw BadProblem("wave problem: profile has not settled at |xi| = L");
    return p;
}

WaveProblem fisher_problem(double L) {
    if (L < 20.0) throw BadProblem("fisher_problem: L must be at least 20");
    WaveProblem p;
    p.phi = [](double xi) {
        const double s = std::exp(xi / kSqrt6);
        return 1.0 - 2.0 / ((1.0 + s) * (1.0 + s));
    };
    p.c = -(5.0 / 6.0) * kSqrt6;
    p.phi_minus_limit = -1.0;
    p.phi_plus_limit = 1.0;
    p.L = L;
    return make_wave_problem(std::move(p));
}

double phi_integral(const WaveProblem& p, Side side, double xi) {
    if (p.phi_integral_hint) return p.phi_integral_hint(side, xi);
    if (side == Side::Minus) {
        const double lim = p.phi_minus_limit;
        return integrate_panels([&](double x) { return p.phi(x) - lim; }, -p.L, xi);
    }
    const double lim = p.phi_plus_limit;
    return integrate_panels([&](double x) { return p.phi(x) - lim; }, xi, p.L);
}

std::pair<double, double> eigenvalue_wedge(const WaveProblem& p) {
    double m = std::max(std::abs(p.phi_minus_limit), std::abs(p.phi_plus_limit));
    const int n = static_cast<int>(std::round(2.0 * p.L / 0.01));
    for (int i = 0; i <= n; ++i) {
        const double xi = -p.L + 0.01 * i;
        m = std::max(m, std::abs(p.phi(xi)));
    }
    const double c2 = p.c * p.c;
    return {0.25 * c2 + m, c2 + m};
}

}  // namespace evanslab
