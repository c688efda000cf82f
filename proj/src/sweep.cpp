#include "evanslab/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

namespace evanslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLocalRefStep = 1e-3;

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ComplexVec2 one_step(const MatrixFn& a, StepperKind kind, double xi, double h,
                     const ComplexVec2& y, ExpmBackend backend) {
    switch (kind) {
        case StepperKind::Magnus4: return magnus4_step(a, xi, h, y, backend);
        case StepperKind::ExpMidpoint: return expmid_step(a, xi, h, y, backend);
        case StepperKind::GaussLegendre4: return gl4_step(a, xi, h, y);
    }
    throw ConfigError("unknown stepper");
}

LocalErrorEstimate local_estimate_for(const WaveProblem& p, StepperKind kind, double xi_k,
                                      double h, const Complex& kappa) {
    switch (kind) {
        case StepperKind::Magnus4: return magnus4_local_estimate(p, Side::Minus, xi_k, h, kappa);
        case StepperKind::GaussLegendre4:
            return gl4_local_estimate(p, Side::Minus, xi_k, h, kappa);
        case StepperKind::ExpMidpoint: {
            // Structure only: [kappa^-1 h^3, kappa^-2 h] with unit constants.
            const double ak = std::abs(kappa);
            return {Complex{h * h * h / ak}, Complex{h / (ak * ak)}};
        }
    }
    throw ConfigError("unknown stepper");
}

double evans_estimate_for(const WaveProblem& p, StepperKind kind, const Complex& lambda,
                          double h) {
    switch (kind) {
        case StepperKind::Magnus4: return std::abs(magnus4_evans_error_estimate(p, h));
        case StepperKind::ExpMidpoint: return expmid_error_structure(p, lambda, h).estimated_abs;
        case StepperKind::GaussLegendre4: return gl4_evans_error_model(lambda, h);
    }
    throw ConfigError("unknown stepper");
}

void validate_common(const SweepConfig& cfg, const WaveProblem& p) {
    if (cfg.h_list.empty()) throw ConfigError("config: h_list is empty");
    if (cfg.lambda_list.empty()) throw ConfigError("config: lambda_list is empty");
    for (double h : cfg.h_list)
        if (!(h > 0.0)) throw ConfigError("config: step sizes must be positive");
    // Admissibility for shooting: decay selection at -infinity. (The
    // strict region-C test would reject the small-|lambda| end of the
    // standard imaginary-axis grid; see region_check.)
    for (const Complex& lam : cfg.lambda_list) {
        const SpectralContext ctx = spectral_context(p, lam);
        if (!(ctx.mu_minus_1.real() > 0.0 && ctx.mu_minus_2.real() < 0.0))
            throw ConfigError("config: lambda not admissible for shooting: (" +
                              fmt(lam.real()) + ", " + fmt(lam.imag()) + ")");
    }
}

SweepRow base_row(const Complex& lambda, double h, StepperKind method, ExpmBackend backend,
                  Quantity quantity) {
    SweepRow row;
    row.lambda_re = lambda.real();
    row.lambda_im = lambda.imag();
    row.h = h;
    row.method = to_string(method);
    row.backend = to_string(backend);
    row.quantity = to_string(quantity);
    return row;
}

void mark_failed(SweepRow& row, const char* what) {
    row.measured_abs = kNaN;
    row.estimated_abs = kNaN;
    row.ratio = kNaN;
    row.comp1_abs = kNaN;
    row.comp2_abs = kNaN;
    row.error = what;
}

struct TrajectoryErrorSweep {
    const SweepConfig& cfg;
    WaveProblem p;
    CoordFrame frame;
    std::vector<ComplexVec2> ref_at_minus1;  // reference end state per lambda

    explicit TrajectoryErrorSweep(const SweepConfig& c) : cfg(c), p(resolve_problem(c)) {
        validate_common(cfg, p);
        frame = cfg.coords == SweepCoords::Raw ? CoordFrame::Raw : CoordFrame::TransformedMinus;
        ref_at_minus1.resize(cfg.lambda_list.size());
        parallel_for(cfg.lambda_list.size(), [&](std::size_t i) {
            ref_at_minus1[i] = reference_solution(p, cfg.lambda_list[i], frame, -p.L, -1.0,
                                                  ComplexVec2{Complex{1.0}, Complex{0.0}})
                                   .end_state();
        });
    }

    // Measured per-component error of one cell, local or global.
    ComplexVec2 measure(Quantity q, std::size_t lam_index, double h) const {
        const Complex lambda = cfg.lambda_list[lam_index];
        if (q == Quantity::Local) {
            const ComplexVec2 start = ref_at_minus1[lam_index];
            const SpectralContext ctx = spectral_context(p, lambda);
            const MatrixFn a = coefficient_fn(p, ctx, frame);
            const ComplexVec2 stepped =
                one_step(a, cfg.method, -1.0, h, start, cfg.expm_backend);
            const ComplexVec2 exact =
                reference_solution(p, lambda, frame, -1.0, -1.0 + h, start, kLocalRefStep)
                    .end_state();
            return stepped - exact;
        }
        const ComplexVec2 got = integrate(p, lambda, cfg.method, frame, -p.L, -1.0, h,
                                          ComplexVec2{Complex{1.0}, Complex{0.0}},
                                          cfg.expm_backend)
                                    .end_state();
        return got - ref_at_minus1[lam_index];
    }

    SweepRow cell(Quantity q, std::size_t lam_index, double h) const {
        const Complex lambda = cfg.lambda_list[lam_index];
        SweepRow row = base_row(lambda, h, cfg.method, cfg.expm_backend, q);
        try {
            const ComplexVec2 err = measure(q, lam_index, h);
            row.comp1_abs = std::abs(err.u);
            row.comp2_abs = std::abs(err.v);
            row.measured_abs = norm2(err);
            if (!std::isfinite(row.measured_abs)) {
                // Raw-coordinate runs overflow once exp(mu1 L) leaves the
                // double range; keep the row but say why.
                mark_failed(row, "nonfinite state (overflow)");
                return row;
            }
            if (cfg.coords == SweepCoords::Raw) {
                // The closed-form estimates are statements about the
                // transformed components; no estimate for raw errors.
                row.estimated_abs = kNaN;
                row.ratio = kNaN;
                return row;
            }
            const Complex kappa = spectral_context(p, lambda).kappa;
            double est;
            if (q == Quantity::Local) {
                const LocalErrorEstimate e = local_estimate_for(p, cfg.method, -1.0, h, kappa);
                est = std::hypot(std::abs(e.component1), std::abs(e.component2));
            } else if (cfg.method == StepperKind::Magnus4) {
                const GlobalErrorEstimate e =
                    magnus4_global_estimate(p, Side::Minus, -p.L, -1.0, h, kappa);
                est = std::hypot(std::abs(e.component1), std::abs(e.component2));
            } else {
                est = kNaN;  // only the Magnus global error has a closed form here
            }
            row.estimated_abs = est;
            row.ratio = row.measured_abs / est;
        } catch (const std::exception& e) {
            mark_failed(row, e.what());
        }
        return row;
    }
};

std::vector<SweepRow> trajectory_rows(const SweepConfig& cfg, Quantity q) {
    TrajectoryErrorSweep sweep(cfg);
    const std::size_t nh = cfg.h_list.size();
    std::vector<SweepRow> rows(cfg.lambda_list.size() * nh);
    parallel_for(rows.size(), [&](std::size_t i) {
        rows[i] = sweep.cell(q, i / nh, cfg.h_list[i % nh]);
    });
    return rows;
}

struct EvansSweep {
    const SweepConfig& cfg;
    WaveProblem p;
    std::vector<Complex> d_ref;

    explicit EvansSweep(const SweepConfig& c) : cfg(c), p(resolve_problem(c)) {
        validate_common(cfg, p);
        d_ref.resize(cfg.lambda_list.size());
        parallel_for(cfg.lambda_list.size(), [&](std::size_t i) {
            d_ref[i] = evans_fn(p, cfg.lambda_list[i], StepperKind::GaussLegendre4, 0.02).D;
        });
    }

    SweepRow cell(std::size_t lam_index, double h, StepperKind method,
                  ExpmBackend backend) const {
        const Complex lambda = cfg.lambda_list[lam_index];
        SweepRow row = base_row(lambda, h, method, backend, Quantity::Evans);
        try {
            const Complex d = evans_fn(p, lambda, method, h, backend).D;
            row.measured_abs = std::abs(d - d_ref[lam_index]);
            row.estimated_abs = evans_estimate_for(p, method, lambda, h);
            row.ratio = row.measured_abs / row.estimated_abs;
            row.comp1_abs = std::abs(d);
            row.comp2_abs = std::abs(d_ref[lam_index]);
            if (!std::isfinite(row.measured_abs))
                mark_failed(row, "nonfinite state (overflow)");
        } catch (const std::exception& e) {
            mark_failed(row, e.what());
        }
        return row;
    }
};

std::vector<SweepRow> evans_rows(const SweepConfig& cfg) {
    EvansSweep sweep(cfg);
    const std::size_t nh = cfg.h_list.size();
    std::vector<SweepRow> rows(cfg.lambda_list.size() * nh);
    parallel_for(rows.size(), [&](std::size_t i) {
        rows[i] = sweep.cell(i / nh, cfg.h_list[i % nh], cfg.method, cfg.expm_backend);
    });
    return rows;
}

}  // namespace

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Local: return "local";
        case Quantity::Global: return "global";
        case Quantity::Evans: return "evans";
    }
    return "?";
}

const char* to_string(SweepCoords c) {
    return c == SweepCoords::Raw ? "raw" : "transformed";
}

std::vector<Complex> lambda_decades(double decade_lo, double decade_hi, int points_per_decade) {
    if (!(decade_hi >= decade_lo) || points_per_decade < 1)
        throw ConfigError("lambda_decades: bad grid request");
    const int n = static_cast<int>(std::round((decade_hi - decade_lo) * points_per_decade));
    std::vector<Complex> grid;
    grid.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double p = decade_lo + static_cast<double>(k) / points_per_decade;
        grid.emplace_back(0.0, std::pow(10.0, p));
    }
    return grid;
}

WaveProblem resolve_problem(const SweepConfig& cfg) {
    if (cfg.problem != "fisher")
        throw ConfigError("config: unknown problem '" + cfg.problem + "'");
    return fisher_problem(cfg.L);
}

SweepConfig parse_sweep_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    SweepConfig cfg;
    cfg.lambda_list = lambda_decades(0, 8, 25);
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "problem") {
                cfg.problem = value.get<std::string>();
            } else if (key == "method") {
                const std::string s = value.get<std::string>();
                if (s == "magnus4") cfg.method = StepperKind::Magnus4;
                else if (s == "expmid") cfg.method = StepperKind::ExpMidpoint;
                else if (s == "gl4") cfg.method = StepperKind::GaussLegendre4;
                else throw ConfigError("config: unknown method '" + s + "'");
            } else if (key == "expm_backend") {
                const std::string s = value.get<std::string>();
                if (s == "eig") cfg.expm_backend = ExpmBackend::Eig;
                else if (s == "pade") cfg.expm_backend = ExpmBackend::Pade;
                else throw ConfigError("config: unknown expm backend '" + s + "'");
            } else if (key == "h_list") {
                cfg.h_list = value.get<std::vector<double>>();
            } else if (key == "lambda_list") {
                cfg.lambda_list.clear();
                for (const auto& pair : value) {
                    if (!pair.is_array() || pair.size() != 2)
                        throw ConfigError("config: lambda_list entries must be [re, im]");
                    cfg.lambda_list.emplace_back(pair[0].get<double>(), pair[1].get<double>());
                }
            } else if (key == "L") {
                cfg.L = value.get<double>();
            } else if (key == "coords") {
                const std::string s = value.get<std::string>();
                if (s == "transformed") cfg.coords = SweepCoords::Transformed;
                else if (s == "raw") cfg.coords = SweepCoords::Raw;
                else throw ConfigError("config: unknown coords '" + s + "'");
            } else if (key == "quantity") {
                const std::string s = value.get<std::string>();
                if (s == "local") cfg.quantity = Quantity::Local;
                else if (s == "global") cfg.quantity = Quantity::Global;
                else if (s == "evans") cfg.quantity = Quantity::Evans;
                else throw ConfigError("config: unknown quantity '" + s + "'");
            } else if (key == "output_path") {
                cfg.output_path = value.get<std::string>();
            } else {
                throw ConfigError("config: unknown field '" + key + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config: bad value for '" + key + "': " + e.what());
        }
    }
    return cfg;
}

std::string csv_header() {
    return "lambda_re,lambda_im,h,method,backend,quantity,measured_abs,estimated_abs,ratio,"
           "comp1_abs,comp2_abs";
}

std::string format_row(const SweepRow& row) {
    std::string out = fmt(row.lambda_re) + "," + fmt(row.lambda_im) + "," + fmt(row.h) + "," +
                      row.method + "," + row.backend + "," + row.quantity + "," +
                      fmt(row.measured_abs) + "," + fmt(row.estimated_abs) + "," +
                      fmt(row.ratio) + "," + fmt(row.comp1_abs) + "," + fmt(row.comp2_abs);
    if (!row.error.empty()) out += "," + row.error;
    return out;
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << csv_header() << "\n";
    for (const SweepRow& row : rows) out << format_row(row) << "\n";
}

std::vector<SweepRow> run_local_error_sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows = trajectory_rows(cfg, Quantity::Local);
    if (!cfg.output_path.empty()) write_csv(cfg.output_path, rows);
    return rows;
}

std::vector<SweepRow> run_global_error_sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows = trajectory_rows(cfg, Quantity::Global);
    if (!cfg.output_path.empty()) write_csv(cfg.output_path, rows);
    return rows;
}

std::vector<SweepRow> run_evans_sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows = evans_rows(cfg);
    if (!cfg.output_path.empty()) write_csv(cfg.output_path, rows);
    return rows;
}

std::vector<SweepRow> run_expm_comparison(const SweepConfig& cfg) {
    if (cfg.method != StepperKind::Magnus4)
        throw ConfigError("expm comparison runs the magnus4 method");
    // The backend sensitivity only shows when the step matrices keep their
    // full O(|lambda|) entries, so the method runs in the shift-only frame;
    // the reference stays the transformed Gauss-Legendre run.
    EvansSweep sweep(cfg);
    const std::size_t nh = cfg.h_list.size();
    std::vector<SweepRow> rows(cfg.lambda_list.size() * nh * 2);
    parallel_for(rows.size(), [&](std::size_t i) {
        const std::size_t cell = i / 2;
        const std::size_t lam_index = cell / nh;
        const double h = cfg.h_list[cell % nh];
        const ExpmBackend backend = (i % 2 == 0) ? ExpmBackend::Eig : ExpmBackend::Pade;
        const Complex lambda = cfg.lambda_list[lam_index];
        SweepRow row = base_row(lambda, h, StepperKind::Magnus4, backend, Quantity::Evans);
        try {
            const Complex d = evans_fn_shifted(sweep.p, lambda, StepperKind::Magnus4, h, backend);
            row.measured_abs = std::abs(d - sweep.d_ref[lam_index]);
            row.estimated_abs = std::abs(magnus4_evans_error_estimate(sweep.p, h));
            row.ratio = row.measured_abs / row.estimated_abs;
            row.comp1_abs = std::abs(d);
            row.comp2_abs = std::abs(sweep.d_ref[lam_index]);
            if (!std::isfinite(row.measured_abs))
                mark_failed(row, "nonfinite state (overflow)");
        } catch (const std::exception& e) {
            mark_failed(row, e.what());
        }
        rows[i] = row;
    });
    if (!cfg.output_path.empty()) write_csv(cfg.output_path, rows);
    return rows;
}

std::vector<SweepRow> run_order_study(const SweepConfig& cfg) {
    for (std::size_t i = 0; i + 1 < cfg.h_list.size(); ++i)
        if (std::abs(cfg.h_list[i + 1] - 0.5 * cfg.h_list[i]) > 1e-12 * cfg.h_list[i])
            throw ConfigError("order study: h_list must be a halving chain h, h/2, h/4, ...");
    if (cfg.h_list.size() < 2) throw ConfigError("order study: need at least two step sizes");

    // Collect the per-cell errors through the matching sweep, then fold
    // adjacent h pairs into orders.
    const std::vector<SweepRow> cells =
        cfg.quantity == Quantity::Evans ? evans_rows(cfg) : trajectory_rows(cfg, cfg.quantity);

    const std::size_t nh = cfg.h_list.size();
    std::vector<SweepRow> rows;
    rows.reserve(cfg.lambda_list.size() * (nh - 1));
    for (std::size_t li = 0; li < cfg.lambda_list.size(); ++li) {
        for (std::size_t hi = 0; hi + 1 < nh; ++hi) {
            const SweepRow& coarse = cells[li * nh + hi];
            const SweepRow& fine = cells[li * nh + hi + 1];
            SweepRow row = coarse;
            row.measured_abs = coarse.measured_abs;
            row.estimated_abs = fine.measured_abs;
            try {
                row.ratio = measured_order(coarse.measured_abs, fine.measured_abs);
                if (cfg.quantity != Quantity::Evans) {
                    row.comp1_abs = measured_order(coarse.comp1_abs, fine.comp1_abs);
                    row.comp2_abs = measured_order(coarse.comp2_abs, fine.comp2_abs);
                } else {
                    row.comp1_abs = kNaN;
                    row.comp2_abs = kNaN;
                }
            } catch (const std::exception& e) {
                mark_failed(row, e.what());
            }
            rows.push_back(row);
        }
    }
    if (!cfg.output_path.empty()) write_csv(cfg.output_path, rows);
    return rows;
}

}  // namespace evanslab
