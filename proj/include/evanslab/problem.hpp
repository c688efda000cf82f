// Travelling-wave problem data.
//
// A WaveProblem carries the composed profile phi(xi) = f'(uhat(xi)) of a
// scalar reaction-diffusion front or pulse, its wave speed, the limits of
// phi at the two infinities, and the half-length L at which the infinite
// domain is truncated. The built-in instance is the Fisher front, whose
// profile is known in closed form.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace evanslab {

enum class Side { Minus, Plus };

class BadProblem : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct WaveProblem {
    std::function<double(double)> phi;  // f'(uhat(xi)); pure and re-entrant
    double c = 0.0;                     // wave speed
    double phi_minus_limit = 0.0;       // f'(uhat(-inf))
    double phi_plus_limit = 0.0;        // f'(uhat(+inf))
    double L = 30.0;                    // truncation half-length, > 0

    // Optional analytic tail integrals Phi_-(xi), Phi_+(xi); when absent
    // they are computed by quadrature truncated at -L / +L.
    std::function<double(Side, double)> phi_integral_hint;

    // Optional analytic phi'; error estimates fall back to fourth-order
    // central differences with step 1e-3.
    std::function<double(double)> phi_prime_hint;

    // Largest admitted deviation |phi(+-L) - limit| at construction. The
    // Fisher minus tail decays like 4 exp(xi/sqrt(6)), which is 1.9e-5 at
    // L = 30 and 1.2e-3 at L = 20, so the check cannot be much tighter
    // without rejecting the standard truncation lengths.
    double boundary_tol = 2e-3;
};

/// Validates the boundary-negligibility requirement; throws BadProblem.
WaveProblem make_wave_problem(WaveProblem p);

/// The Fisher front u_t = u_xx + u - u^2:
///   uhat(xi) = 1/(1 + exp(xi/sqrt 6))^2,  c = -(5/6) sqrt 6,
///   phi(xi)  = 1 - 2 uhat(xi),  phi(-inf) = -1, phi(+inf) = 1.
WaveProblem fisher_problem(double L = 30.0);

/// Tail integral of the profile deviation, truncated at the domain edge:
///   Minus: int_{-L}^{xi} (phi - phi_minus_limit)
///   Plus:  int_{xi}^{+L} (phi - phi_plus_limit)
/// Composite 5-point Gauss-Legendre quadrature on panels of width <= 0.1;
/// uses phi_integral_hint when the problem provides one.
double phi_integral(const WaveProblem& p, Side side, double xi);

/// Direct quadrature helper with the same panel policy, for integrands
/// derived from the profile (e.g. (phi')^2).
double integrate_panels(const std::function<double(double)>& f, double a, double b);

/// Bounds of the eigenvalue wedge containing the point spectrum:
///   Re lambda <= c^2/4 + max |phi|  and  Re lambda + |Im lambda| <= c^2 + max |phi|.
/// Returns (c^2/4 + max|phi|, c^2 + max|phi|); the max is taken on a grid
/// of spacing 0.01 over [-L, L] together with the two limits.
std::pair<double, double> eigenvalue_wedge(const WaveProblem& p);

}  // namespace evanslab
