#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "evanslab/sweep.hpp"

using namespace evanslab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string temp_path(const char* name) {
    return std::string("harness_test_") + name + ".csv";
}

}  // namespace

TEST_CASE("lambda grid generation") {
    const auto grid = lambda_decades(0, 8, 25);
    CHECK(grid.size() == 201);
    CHECK(grid.front() == Complex{0.0, 1.0});
    CHECK(std::abs(grid.back() - Complex{0.0, 1e8}) <= 1e-4);
    for (const Complex& lam : grid) CHECK(lam.real() == 0.0);

    const auto coarse = lambda_decades(2, 4, 2);
    CHECK(coarse.size() == 5);
    CHECK(std::abs(coarse[1] - Complex{0.0, std::pow(10.0, 2.5)}) <= 1e-7);
}

TEST_CASE("config parsing mirrors the field names") {
    const std::string text = R"({
        "problem": "fisher",
        "method": "gl4",
        "expm_backend": "pade",
        "h_list": [0.2, 0.1],
        "lambda_list": [[0.0, 100.0], [0.0, 1000.0]],
        "L": 30.0,
        "coords": "transformed",
        "quantity": "evans",
        "output_path": "out.csv"
    })";
    const SweepConfig cfg = parse_sweep_config(text);
    CHECK(cfg.problem == "fisher");
    CHECK(cfg.method == StepperKind::GaussLegendre4);
    CHECK(cfg.expm_backend == ExpmBackend::Pade);
    CHECK(cfg.h_list == std::vector<double>{0.2, 0.1});
    CHECK(cfg.lambda_list.size() == 2);
    CHECK(cfg.lambda_list[1] == Complex{0.0, 1000.0});
    CHECK(cfg.coords == SweepCoords::Transformed);
    CHECK(cfg.quantity == Quantity::Evans);
    CHECK(cfg.output_path == "out.csv");

    CHECK_THROWS_AS((void)parse_sweep_config(R"({"stepsize": 0.1})"), ConfigError);
    CHECK_THROWS_AS((void)parse_sweep_config(R"({"method": "rk45"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_sweep_config(R"({"lambda_list": [1.0]})"), ConfigError);
    CHECK_THROWS_AS((void)parse_sweep_config("not json"), ConfigError);
}

TEST_CASE("config validation") {
    SweepConfig cfg;
    cfg.lambda_list = {};
    CHECK_THROWS_AS((void)run_evans_sweep(cfg), ConfigError);

    cfg.lambda_list = {Complex{0.0, 100.0}};
    cfg.h_list = {};
    CHECK_THROWS_AS((void)run_evans_sweep(cfg), ConfigError);

    cfg.h_list = {0.1};
    cfg.problem = "kpp";
    CHECK_THROWS_AS((void)run_evans_sweep(cfg), ConfigError);

    cfg.problem = "fisher";
    cfg.lambda_list = {Complex{-10.0, 0.0}};  // no decay selection at -infinity
    CHECK_THROWS_AS((void)run_evans_sweep(cfg), ConfigError);
}

TEST_CASE("csv schema and row formatting") {
    CHECK(csv_header() ==
          "lambda_re,lambda_im,h,method,backend,quantity,measured_abs,estimated_abs,ratio,"
          "comp1_abs,comp2_abs");

    SweepRow row;
    row.lambda_re = 0.0;
    row.lambda_im = 100.0;
    row.h = 0.1;
    row.method = "magnus4";
    row.backend = "eig";
    row.quantity = "evans";
    row.measured_abs = 1.5e-7;
    row.estimated_abs = 2.0e-7;
    row.ratio = 0.75;
    row.comp1_abs = 1.0;
    row.comp2_abs = 2.0;
    const std::string line = format_row(row);
    CHECK(line == "0,100,0.10000000000000001,magnus4,eig,evans,1.4999999999999999e-07,"
                  "1.9999999999999999e-07,0.75,1,2");

    row.error = "StepFailure";
    const std::string annotated = format_row(row);
    CHECK(annotated.substr(annotated.size() - 12) == ",StepFailure");
}

TEST_CASE("evans sweep rows and determinism") {
    SweepConfig cfg;
    cfg.h_list = {0.1};
    cfg.lambda_list = lambda_decades(3, 4, 2);
    cfg.output_path = temp_path("evans_a");
    const auto rows = run_evans_sweep(cfg);
    REQUIRE(rows.size() == 3);
    for (const SweepRow& row : rows) {
        CHECK(row.error.empty());
        CHECK(row.quantity == "evans");
        CHECK(row.measured_abs > 0.0);
        CHECK(row.estimated_abs > 0.0);
        CHECK(row.comp2_abs > 0.0);  // |D_ref|
    }
    // The magnus4 plateau: measured within a factor 2 of the estimate here.
    CHECK(rows[0].ratio > 0.5);
    CHECK(rows[0].ratio < 2.0);

    cfg.output_path = temp_path("evans_b");
    (void)run_evans_sweep(cfg);
    CHECK(slurp(temp_path("evans_a")) == slurp(temp_path("evans_b")));
    std::remove(temp_path("evans_a").c_str());
    std::remove(temp_path("evans_b").c_str());
}

TEST_CASE("local sweep reproduces the h^2 law of the stiff component") {
    SweepConfig cfg;
    cfg.quantity = Quantity::Local;
    cfg.h_list = {0.2, 0.1};
    cfg.lambda_list = {Complex{0.0, 1e4}};
    const auto rows = run_local_error_sweep(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].error.empty());
    CHECK(rows[1].error.empty());
    // comp2 is the stiff transformed component; halving h quarters it.
    CHECK(rows[0].comp2_abs / rows[1].comp2_abs == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("global sweep rows fail gracefully on a bad grid") {
    SweepConfig cfg;
    cfg.quantity = Quantity::Global;
    cfg.h_list = {0.3};  // 29/0.3 is not an integer
    cfg.lambda_list = {Complex{0.0, 1e3}};
    const auto rows = run_global_error_sweep(cfg);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].error.empty());
    CHECK(std::isnan(rows[0].measured_abs));
    const std::string line = format_row(rows[0]);
    CHECK(line.find("nan") != std::string::npos);
}

TEST_CASE("global sweep matches local at leading order in the stiff regime") {
    SweepConfig cfg;
    cfg.h_list = {0.1};
    cfg.lambda_list = {Complex{0.0, 1e3}, Complex{0.0, 1e4}};
    cfg.quantity = Quantity::Global;
    const auto global_rows = run_global_error_sweep(cfg);
    cfg.quantity = Quantity::Local;
    const auto local_rows = run_local_error_sweep(cfg);
    for (std::size_t i = 0; i < global_rows.size(); ++i) {
        const double ratio = global_rows[i].comp2_abs / local_rows[i].comp2_abs;
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
    }
}

TEST_CASE("expm comparison emits paired rows and requires magnus4") {
    SweepConfig cfg;
    cfg.h_list = {0.1};
    cfg.lambda_list = {Complex{0.0, 1e2}, Complex{0.0, 1e3}};
    cfg.method = StepperKind::GaussLegendre4;
    CHECK_THROWS_AS((void)run_expm_comparison(cfg), ConfigError);

    cfg.method = StepperKind::Magnus4;
    const auto rows = run_expm_comparison(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].backend == "eig");
    CHECK(rows[1].backend == "pade");
    CHECK(rows[0].lambda_im == rows[1].lambda_im);
    // Both backends sit on the same plateau at small |lambda|.
    CHECK(rows[0].measured_abs == doctest::Approx(rows[1].measured_abs).epsilon(1e-3));
}

TEST_CASE("order study over a halving chain") {
    SweepConfig cfg;
    cfg.h_list = {0.2, 0.1, 0.07};
    cfg.lambda_list = {Complex{0.0, 1e3}};
    CHECK_THROWS_AS((void)run_order_study(cfg), ConfigError);

    cfg.h_list = {0.2};
    CHECK_THROWS_AS((void)run_order_study(cfg), ConfigError);

    cfg.h_list = {0.2, 0.1};
    cfg.quantity = Quantity::Evans;
    cfg.lambda_list = {Complex{0.0, 1.0}, Complex{0.0, 1e3}};  // nonstiff and stiff
    const auto rows = run_order_study(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].h == 0.2);
    CHECK(rows[0].ratio == doctest::Approx(4.0).epsilon(0.15));  // fourth order in E_D
    CHECK(rows[1].ratio == doctest::Approx(4.0).epsilon(0.15));

    // Order reduction: the global error at 1e4 i is second order.
    cfg.quantity = Quantity::Global;
    cfg.lambda_list = {Complex{0.0, 1e4}};
    const auto global_rows = run_order_study(cfg);
    REQUIRE(global_rows.size() == 1);
    CHECK(global_rows[0].comp2_abs == doctest::Approx(2.0).epsilon(0.25));
}
