// Trajectory driver: composes one-step maps over a uniform grid in raw
// or transformed coordinates and records every state.

#pragma once

#include <vector>

#include "evanslab/spectral.hpp"
#include "evanslab/steppers.hpp"

namespace evanslab {

enum class CoordFrame { Raw, TransformedMinus, TransformedPlus };
enum class Direction { Forward, Backward };

const char* to_string(CoordFrame f);

class BadGrid : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Integration error with the failing step attached.
class StepFailure : public std::runtime_error {
  public:
    StepFailure(const std::string& what, int step) : std::runtime_error(what), step_index(step) {}
    int step_index;
};

struct IntegrationRun {
    Complex lambda;
    double h = 0.0;  // positive; the travel direction is separate
    Direction direction = Direction::Forward;
    CoordFrame coords = CoordFrame::Raw;
    double start_xi = 0.0;
    double end_xi = 0.0;
    ComplexVec2 y0;
    std::vector<std::pair<double, ComplexVec2>> states;  // states[0] = (start_xi, y0)
    long expm_fallbacks = 0;  // counted Eig -> Pade fallbacks

    const ComplexVec2& end_state() const { return states.back().second; }
};

/// The coefficient matrix callable for one lambda in the chosen frame.
MatrixFn coefficient_fn(const WaveProblem& p, const SpectralContext& ctx, CoordFrame coords);

/// Applies the stepper over the uniform grid from from_xi to to_xi.
/// (to_xi - from_xi)/h must be a whole number of steps; h > 0, with the
/// direction inferred from the endpoints. Transformed frames require the
/// corresponding kappa to be nonzero.
IntegrationRun integrate(const WaveProblem& p, const Complex& lambda, StepperKind stepper,
                         CoordFrame coords, double from_xi, double to_xi, double h,
                         const ComplexVec2& y0, ExpmBackend backend = ExpmBackend::Eig);

/// High-accuracy driver used as the "exact" solution: the two-stage
/// Gauss-Legendre method at h_ref = 0.02 by default; one-step local-error
/// measurements pass a much finer h_ref.
IntegrationRun reference_solution(const WaveProblem& p, const Complex& lambda, CoordFrame coords,
                                  double from_xi, double to_xi, const ComplexVec2& y0,
                                  double h_ref = 0.02);

}  // namespace evanslab
