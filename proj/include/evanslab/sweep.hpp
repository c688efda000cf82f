// Experiment runner: lambda sweeps over the three methods, with measured
// errors paired against the closed-form estimates and written as CSV.
//
// Protocols:
//   local   reference state at xi = -1 (Gauss-Legendre, h = 0.02, from
//           -30), one method step of size h, compared against a fine
//           reference (h_ref = 1e-3) over [-1, -1+h];
//   global  full integration [-30, -1] against the h = 0.02 reference;
//   evans   |D_method(h) - D_ref| with D_ref from the h = 0.02 reference
//           stepper.
//
// Cells are independent and run on a small worker pool; rows are written
// in configuration order, so identical configurations produce identical
// files byte for byte.

#pragma once

#include <string>
#include <vector>

#include "evanslab/error_estimates.hpp"
#include "evanslab/evans.hpp"

namespace evanslab {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Quantity { Local, Global, Evans };
enum class SweepCoords { Transformed, Raw };

const char* to_string(Quantity q);
const char* to_string(SweepCoords c);

struct SweepConfig {
    std::string problem = "fisher";
    StepperKind method = StepperKind::Magnus4;
    ExpmBackend expm_backend = ExpmBackend::Eig;
    std::vector<double> h_list = {0.1};
    std::vector<Complex> lambda_list;  // defaults to i*10^p, p = 0..8, 25/decade
    double L = 30.0;
    SweepCoords coords = SweepCoords::Transformed;
    Quantity quantity = Quantity::Evans;
    std::string output_path;
};

struct SweepRow {
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    double h = 0.0;
    std::string method;
    std::string backend;
    std::string quantity;
    double measured_abs = 0.0;
    double estimated_abs = 0.0;
    double ratio = 0.0;
    double comp1_abs = 0.0;
    double comp2_abs = 0.0;
    std::string error;  // empty unless the cell failed; appended as an extra field
};

/// Purely imaginary lambda grid, log-spaced: i * 10^p for p from
/// decade_lo to decade_hi with points_per_decade subdivisions.
std::vector<Complex> lambda_decades(double decade_lo, double decade_hi, int points_per_decade);

/// Parse a configuration from JSON text with exactly the SweepConfig
/// field names ("lambda_list" entries are [re, im] pairs). Unknown keys
/// are rejected.
SweepConfig parse_sweep_config(const std::string& json_text);

std::string csv_header();
std::string format_row(const SweepRow& row);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);

std::vector<SweepRow> run_local_error_sweep(const SweepConfig& cfg);
std::vector<SweepRow> run_global_error_sweep(const SweepConfig& cfg);
std::vector<SweepRow> run_evans_sweep(const SweepConfig& cfg);

/// The evans sweep against both expm backends for the Magnus method;
/// emits an eig row and a pade row per (lambda, h).
std::vector<SweepRow> run_expm_comparison(const SweepConfig& cfg);

/// Orders from adjacent pairs of a halving chain h, h/2, h/4, ...:
/// measured_abs and estimated_abs hold e(h) and e(h/2), ratio holds
/// log2 of their quotient, comp1/comp2 hold per-component orders where
/// the quantity has components.
std::vector<SweepRow> run_order_study(const SweepConfig& cfg);

/// Resolves cfg.problem ("fisher") with cfg.L; throws ConfigError.
WaveProblem resolve_problem(const SweepConfig& cfg);

}  // namespace evanslab
