#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gego/harness.hpp"
#include "gego/rng.hpp"

using namespace gego;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentSpec small_spec() {
    ExperimentSpec spec;
    spec.algorithms = {Algorithm::Gego, Algorithm::Ga};
    spec.functions = {"matyas", "griewank"};
    spec.dims = 2;
    spec.trials = 4;
    spec.base_seed = 11;
    spec.params.pop_size = 10;
    spec.params.max_iters = 25;
    return spec;
}

}  // namespace

TEST_CASE("summarize hand cases") {
    const SummaryCell two = summarize({2.0, 4.0});
    CHECK(two.mean == 3.0);
    CHECK(two.stddev == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(two.best == 2.0);
    CHECK(two.worst == 4.0);

    const SummaryCell one = summarize({5.0});
    CHECK(one.mean == 5.0);
    CHECK(one.stddev == 0.0);
    CHECK(one.best == 5.0);
    CHECK(one.worst == 5.0);

    CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("summarize matches a two-pass reference") {
    RngStream rng(3);
    std::vector<double> values;
    for (int i = 0; i < 40; ++i) values.push_back(rng.init().uniform(-50.0, 50.0));

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);

    const SummaryCell cell = summarize(values);
    CHECK(std::abs(cell.mean - mean) <= 1e-12 * std::max(1.0, std::abs(mean)));
    CHECK(std::abs(cell.stddev - std::sqrt(var)) <= 1e-12 * std::max(1.0, std::sqrt(var)));
}

TEST_CASE("single-trial cells degenerate correctly") {
    ExperimentSpec spec = small_spec();
    spec.trials = 1;
    spec.functions = {"matyas"};
    spec.algorithms = {Algorithm::Geo};
    const ExperimentReport report = run_experiment(spec);
    REQUIRE(report.cells.size() == 1);
    const SummaryCell& cell = report.cells[0].summary;
    CHECK(cell.mean == cell.best);
    CHECK(cell.mean == cell.worst);
    CHECK(cell.stddev == 0.0);
}

TEST_CASE("reports are byte-identical across reruns") {
    const ExperimentSpec spec = small_spec();
    const std::string a = report_to_string(run_experiment(spec), ReportFormat::Csv);
    const std::string b = report_to_string(run_experiment(spec), ReportFormat::Csv);
    CHECK(a == b);
    const std::string ja = report_to_string(run_experiment(spec), ReportFormat::Json);
    const std::string jb = report_to_string(run_experiment(spec), ReportFormat::Json);
    CHECK(ja == jb);
}

TEST_CASE("worker count does not change any cell") {
    ExperimentSpec spec = small_spec();
    spec.workers = 1;
    const ExperimentReport serial = run_experiment(spec);
    spec.workers = 4;
    const ExperimentReport parallel = run_experiment(spec);
    REQUIRE(serial.cells.size() == parallel.cells.size());
    for (std::size_t i = 0; i < serial.cells.size(); ++i) {
        CHECK(serial.cells[i].summary.values == parallel.cells[i].summary.values);
        CHECK(serial.cells[i].summary.mean == parallel.cells[i].summary.mean);
    }
}

TEST_CASE("csv shape and error cells") {
    ExperimentSpec spec = small_spec();
    spec.functions = {"matyas"};
    spec.algorithms = {Algorithm::Geo};
    const std::string csv = report_to_string(run_experiment(spec), ReportFormat::Csv);

    std::vector<std::string> lines;
    std::stringstream ss(csv);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "function,algorithm,mean,std,best,worst,trials,seed");
    CHECK(lines[1].rfind("matyas,geo,", 0) == 0);

    // unknown function aborts its cell, not the experiment
    spec.functions = {"matyas", "doesnotexist"};
    const ExperimentReport mixed = run_experiment(spec);
    REQUIRE(mixed.cells.size() == 2);
    CHECK_FALSE(mixed.cells[0].error.has_value());
    CHECK(mixed.cells[1].error.has_value());
    const std::string mixed_csv = report_to_string(mixed, ReportFormat::Csv);
    CHECK(mixed_csv.find("doesnotexist,geo,nan,nan,nan,nan") != std::string::npos);
}

TEST_CASE("a failing trial inside a worker pool becomes a cell error") {
    ExperimentSpec spec = small_spec();
    spec.functions = {"matyas"};
    spec.algorithms = {Algorithm::Gwo};
    spec.params.pop_size = 2;  // below the gwo leader count
    spec.workers = 4;
    const ExperimentReport report = run_experiment(spec);
    REQUIRE(report.cells.size() == 1);
    REQUIRE(report.cells[0].error.has_value());
    CHECK(report.cells[0].error->find("pop_size") != std::string::npos);
}

TEST_CASE("json roundtrips the summary cells") {
    const ExperimentSpec spec = small_spec();
    const ExperimentReport report = run_experiment(spec);
    const nlohmann::json parsed = nlohmann::json::parse(report_to_string(report, ReportFormat::Json));

    REQUIRE(parsed["cells"].size() == report.cells.size());
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
        const auto& cell = parsed["cells"][i];
        CHECK(cell["function"] == report.cells[i].function);
        CHECK(cell["mean"].get<double>() == report.cells[i].summary.mean);
        CHECK(cell["values"].get<std::vector<double>>() == report.cells[i].summary.values);
    }
    CHECK(parsed["spec"]["trials"] == spec.trials);
    CHECK(parsed["spec"]["pop_size"] == spec.params.pop_size);
}

TEST_CASE("atomic writes never leave partial files") {
    const ExperimentSpec spec = small_spec();
    const ExperimentReport report = run_experiment(spec);

    const std::string missing_dir = "/nonexistent_dir_for_gego_tests/report.csv";
    CHECK_THROWS_AS(write_report(report, ReportFormat::Csv, missing_dir), std::runtime_error);
    CHECK_FALSE(std::filesystem::exists(missing_dir));

    const auto dir = std::filesystem::temp_directory_path() / "gego_harness_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "report.csv").string();
    write_report(report, ReportFormat::Csv, path);
    CHECK(slurp(path) == report_to_string(report, ReportFormat::Csv));
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("composite cells run end to end with annotations") {
    ExperimentSpec spec;
    spec.algorithms = {Algorithm::Geo};
    spec.functions = {"cf1"};
    spec.dims = 5;
    spec.trials = 2;
    spec.base_seed = 1;
    spec.params.pop_size = 8;
    spec.params.max_iters = 10;

    const ExperimentReport report = run_experiment(spec);
    REQUIRE(report.cells.size() == 1);
    CHECK_FALSE(report.cells[0].error.has_value());
    REQUIRE(report.cells[0].annotations.size() == 1);  // synthetic-shift notice
    CHECK(report.cells[0].annotations[0].find("synthetic") != std::string::npos);
    CHECK(report.cells[0].summary.best >= 2100.0 - 1e-9);
}

TEST_CASE("bench run CLI is byte-deterministic") {
    const char* bench = std::getenv("BENCH_BIN");
    if (bench == nullptr) return;  // available only via ctest

    const auto dir = std::filesystem::temp_directory_path() / "gego_cli_test";
    std::filesystem::create_directories(dir);
    const std::string out1 = (dir / "r1.csv").string();
    const std::string out2 = (dir / "r2.csv").string();
    const std::string base = std::string(bench) +
                             " run --algo gego,geo --fn matyas,griewank --dim 2 --pop 10 --iters 20"
                             " --trials 3 --seed 5 --format csv --out ";
    REQUIRE(std::system((base + out1).c_str()) == 0);
    REQUIRE(std::system((base + out2).c_str()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    std::filesystem::remove_all(dir);
}
