#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gego/benchmarks.hpp"
#include "gego/composite.hpp"
#include "gego/harness.hpp"
#include "gego/hpo.hpp"

namespace {

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> items;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

std::vector<gego::Algorithm> parse_algorithms(const std::string& csv) {
    std::vector<gego::Algorithm> algos;
    for (const std::string& name : split_list(csv)) algos.push_back(gego::algorithm_from_name(name));
    if (algos.empty()) throw CLI::ValidationError("--algo", "no algorithms given");
    return algos;
}

// accepts "1..10", "3", or "1,4,7"
std::vector<int> parse_cf_range(const std::string& text) {
    std::vector<int> ids;
    const std::size_t dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        for (int i = lo; i <= hi; ++i) ids.push_back(i);
    } else {
        for (const std::string& part : split_list(text)) ids.push_back(std::stoi(part));
    }
    for (int id : ids)
        if (id < 1 || id > gego::composite_count())
            throw CLI::ValidationError("--cf", "composite index out of range: " + std::to_string(id));
    if (ids.empty()) throw CLI::ValidationError("--cf", "no composite functions given");
    return ids;
}

gego::ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return gego::ReportFormat::Csv;
    if (name == "json") return gego::ReportFormat::Json;
    throw CLI::ValidationError("--format", "expected csv or json");
}

// returns false when every cell failed
bool run_and_emit(const gego::ExperimentSpec& spec, const std::string& format,
                  const std::string& out_path) {
    const gego::ReportFormat fmt = parse_format(format);  // reject bad formats before running
    const gego::ExperimentReport report = gego::run_experiment(spec);

    bool any_ok = false;
    for (const gego::CellResult& cell : report.cells) {
        for (const std::string& note : cell.annotations) std::cerr << "note: " << note << "\n";
        if (cell.error)
            std::cerr << "error: " << cell.function << "/" << gego::algorithm_name(cell.algorithm) << ": "
                      << *cell.error << "\n";
        else
            any_ok = true;
    }
    if (out_path.empty()) {
        std::cout << gego::report_to_string(report, fmt);
    } else {
        gego::write_report(report, fmt, out_path);
        std::cout << "wrote " << out_path << "\n";
    }
    return any_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Metaheuristic benchmark and hyperparameter-tuning harness"};
    app.require_subcommand(1);

    // ----- run: classical benchmark experiments -----
    std::string run_algos = "gego,geo,ga";
    std::string run_fns;
    gego::ExperimentSpec run_spec;
    run_spec.params.pop_size = 20;
    run_spec.params.max_iters = 100;
    std::string run_out;
    std::string run_format = "csv";

    CLI::App* run = app.add_subcommand("run", "Run algorithms on classical benchmark functions");
    run->add_option("--algo", run_algos, "Comma-separated algorithms (gego,geo,ga,pso,gwo,sca)");
    run->add_option("--fn", run_fns, "Comma-separated function names (see `bench list`)")->required();
    run->add_option("--dim", run_spec.dims, "Dimensions for free-dimension functions");
    run->add_option("--pop", run_spec.params.pop_size, "Population size");
    run->add_option("--iters", run_spec.params.max_iters, "Iterations per run");
    run->add_option("--trials", run_spec.trials, "Independent trials per cell");
    run->add_option("--seed", run_spec.base_seed, "Base seed; trial i uses seed + i");
    run->add_option("--workers", run_spec.workers, "Concurrent trial workers");
    run->add_option("--frequency", run_spec.params.gego.frequency, "GEGO genetic-phase interval");
    run->add_option("--out", run_out, "Report path (stdout when omitted)");
    run->add_option("--format", run_format, "csv or json");

    // ----- composite: CF1..CF10 experiments -----
    std::string cf_range = "1..10";
    gego::ExperimentSpec cf_spec;
    cf_spec.dims = 100;
    cf_spec.trials = 40;
    cf_spec.params.pop_size = 50;
    cf_spec.params.max_iters = 1000;
    std::string cf_algos = "gego,geo,ga,pso,gwo,sca";
    std::string cf_data_dir;
    std::string cf_out;
    std::string cf_format = "csv";

    CLI::App* composite = app.add_subcommand("composite", "Run algorithms on composite functions");
    composite->add_option("--cf", cf_range, "Composite ids, e.g. 1..10 or 1,3,5");
    composite->add_option("--algo", cf_algos, "Comma-separated algorithms");
    composite->add_option("--dim", cf_spec.dims, "Dimensions");
    composite->add_option("--pop", cf_spec.params.pop_size, "Population size");
    composite->add_option("--iters", cf_spec.params.max_iters, "Iterations per run");
    composite->add_option("--trials", cf_spec.trials, "Independent trials per cell");
    composite->add_option("--seed", cf_spec.base_seed, "Base seed");
    composite->add_option("--workers", cf_spec.workers, "Concurrent trial workers");
    composite->add_option("--frequency", cf_spec.params.gego.frequency, "GEGO genetic-phase interval");
    composite->add_option("--data-dir", cf_data_dir, "Directory with cf<k>_D<dims>.txt shift/rotation data");
    composite->add_option("--out", cf_out, "Report path (stdout when omitted)");
    composite->add_option("--format", cf_format, "csv or json");

    // ----- hpo: hyperparameter search -----
    std::string hpo_algo = "gego";
    std::string hpo_adapter = "surrogate";
    int hpo_pop = 10;
    int hpo_iters = 15;
    int hpo_trials = 10;
    std::uint64_t hpo_seed = 7;
    double hpo_timeout = 600.0;
    std::string hpo_out;

    CLI::App* hpo = app.add_subcommand("hpo", "Tune network hyperparameters over the 10-D encoding");
    hpo->add_option("--algo", hpo_algo, "Algorithm (gego, geo, ga, pso, gwo, sca)");
    hpo->add_option("--adapter", hpo_adapter, "surrogate or exec:<command>");
    hpo->add_option("--pop", hpo_pop, "Population size");
    hpo->add_option("--iters", hpo_iters, "Iterations per trial");
    hpo->add_option("--trials", hpo_trials, "Independent trials");
    hpo->add_option("--seed", hpo_seed, "Base seed");
    hpo->add_option("--timeout", hpo_timeout, "Per-evaluation timeout for exec adapters (seconds)");
    hpo->add_option("--out", hpo_out, "Report path (stdout when omitted)");

    CLI::App* list = app.add_subcommand("list", "List available functions and algorithms");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            run_spec.algorithms = parse_algorithms(run_algos);
            run_spec.functions = split_list(run_fns);
            if (!run_and_emit(run_spec, run_format, run_out)) return 1;
        } else if (composite->parsed()) {
            cf_spec.algorithms = parse_algorithms(cf_algos);
            for (int id : parse_cf_range(cf_range)) cf_spec.functions.push_back("cf" + std::to_string(id));
            if (!cf_data_dir.empty()) cf_spec.data_dir = cf_data_dir;
            if (!run_and_emit(cf_spec, cf_format, cf_out)) return 1;
        } else if (hpo->parsed()) {
            const gego::Algorithm algorithm = gego::algorithm_from_name(hpo_algo);
            gego::HpoReport report;
            if (hpo_adapter == "surrogate") {
                report = gego::run_hpo(algorithm, gego::surrogate_fitness, hpo_pop, hpo_iters, hpo_trials,
                                       hpo_seed);
            } else if (hpo_adapter.rfind("exec:", 0) == 0) {
                gego::ExternalEvaluator evaluator(hpo_adapter.substr(5), hpo_timeout);
                auto adapter = [&evaluator](const gego::AnnConfig& c) { return evaluator.evaluate(c); };
                report = gego::run_hpo(algorithm, adapter, hpo_pop, hpo_iters, hpo_trials, hpo_seed);
                report.annotations = evaluator.annotations();
            } else {
                std::cerr << "unknown adapter: " << hpo_adapter << " (expected surrogate or exec:<cmd>)\n";
                return 2;
            }
            for (const std::string& note : report.annotations) std::cerr << "note: " << note << "\n";
            if (hpo_out.empty()) {
                std::cout << gego::hpo_report_to_string(report);
            } else {
                gego::write_hpo_report(report, hpo_out);
                std::cout << "wrote " << hpo_out << "\n";
            }
        } else if (list->parsed()) {
            std::cout << "algorithms: gego geo ga pso gwo sca\n";
            std::cout << "classical functions:";
            for (const gego::BenchmarkFn& fn : gego::classical_benchmarks()) {
                std::cout << ' ' << fn.name;
                if (fn.fixed_dims > 0) std::cout << "(" << fn.fixed_dims << "d)";
            }
            std::cout << "\ncomposite functions:";
            for (int i = 1; i <= gego::composite_count(); ++i) std::cout << " cf" << i;
            std::cout << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
