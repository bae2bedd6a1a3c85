#include "gego/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "gego/baselines.hpp"
#include "gego/benchmarks.hpp"
#include "gego/composite.hpp"
#include "gego/genetic.hpp"
#include "gego/geo.hpp"
#include "gego/gego.hpp"

namespace gego {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

SummaryCell summarize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty value list");
    SummaryCell cell;
    cell.values = values;

    double sum = 0.0;
    for (double v : values) sum += v;
    cell.mean = sum / static_cast<double>(values.size());

    double sq = 0.0;
    for (double v : values) sq += (v - cell.mean) * (v - cell.mean);
    cell.stddev = values.size() > 1 ? std::sqrt(sq / static_cast<double>(values.size() - 1)) : 0.0;

    cell.best = *std::min_element(values.begin(), values.end());
    cell.worst = *std::max_element(values.begin(), values.end());
    return cell;
}

RunResult run_algorithm(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                        const IterationCallback& on_iteration) {
    switch (config.algorithm) {
        case Algorithm::Geo: return run_geo(config, objective, space, on_iteration);
        case Algorithm::Ga: return run_ga(config, objective, space, on_iteration);
        case Algorithm::Gego: return run_gego(config, objective, space, on_iteration);
        case Algorithm::Pso: return run_pso(config, objective, space, on_iteration);
        case Algorithm::Gwo: return run_gwo(config, objective, space, on_iteration);
        case Algorithm::Sca: return run_sca(config, objective, space, on_iteration);
    }
    throw std::invalid_argument("run_algorithm: unknown algorithm");
}

std::pair<Objective, SearchSpace> resolve_function(const std::string& name, int dims,
                                                   const std::optional<std::string>& data_dir,
                                                   std::uint64_t fallback_seed,
                                                   std::vector<std::string>* annotations) {
    if (name.rfind("cf", 0) == 0 && name.size() > 2) {
        const int index = std::stoi(name.substr(2));
        CompositeSpec cf = make_composite(index, dims, data_dir, fallback_seed);
        if (cf.synthetic_data && annotations != nullptr)
            annotations->push_back(name + ": no data file found, using " + cf.data_source +
                                   " shifts with identity rotations");
        SearchSpace space = SearchSpace::box(dims, -100.0, 100.0);
        auto objective = [cf = std::move(cf)](const Vector& x) { return eval_composite(cf, x); };
        return {std::move(objective), std::move(space)};
    }

    const BenchmarkFn* fn = find_benchmark(name);
    if (fn == nullptr) throw std::invalid_argument("unknown function: " + name);
    SearchSpace space = benchmark_space(*fn, dims);
    return {fn->fn, std::move(space)};
}

namespace {

std::vector<double> run_cell_trials(const ExperimentSpec& spec, Algorithm algorithm,
                                    const Objective& objective, const SearchSpace& space) {
    std::vector<double> values(static_cast<std::size_t>(spec.trials));
    const int workers = std::max(1, spec.workers);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run_range = [&](int begin, int stride) {
        try {
            for (int i = begin; i < spec.trials; i += stride) {
                RunConfig config = spec.params;
                config.algorithm = algorithm;
                config.seed = spec.base_seed + static_cast<std::uint64_t>(i);
                values[static_cast<std::size_t>(i)] = run_algorithm(config, objective, space).gbest_value;
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return values;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    ExperimentReport report;
    report.spec = spec;

    for (const std::string& fn_name : spec.functions) {
        for (Algorithm algorithm : spec.algorithms) {
            CellResult cell;
            cell.function = fn_name;
            cell.algorithm = algorithm;
            try {
                auto [objective, space] =
                    resolve_function(fn_name, spec.dims, spec.data_dir, spec.base_seed, &cell.annotations);
                cell.summary = summarize(run_cell_trials(spec, algorithm, objective, space));
            } catch (const std::exception& ex) {
                cell.error = ex.what();
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

namespace {

std::string to_csv(const ExperimentReport& report) {
    std::string out = "function,algorithm,mean,std,best,worst,trials,seed\n";
    for (const CellResult& cell : report.cells) {
        out += cell.function;
        out += ',';
        out += algorithm_name(cell.algorithm);
        out += ',';
        if (cell.error) {
            out += "nan,nan,nan,nan";
        } else {
            out += format_double(cell.summary.mean) + ',' + format_double(cell.summary.stddev) + ',' +
                   format_double(cell.summary.best) + ',' + format_double(cell.summary.worst);
        }
        out += ',' + std::to_string(report.spec.trials) + ',' + std::to_string(report.spec.base_seed) +
               '\n';
    }
    return out;
}

nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    j["algorithms"] = nlohmann::ordered_json::array();
    for (Algorithm a : spec.algorithms) j["algorithms"].push_back(algorithm_name(a));
    j["functions"] = spec.functions;
    j["dims"] = spec.dims;
    j["pop_size"] = spec.params.pop_size;
    j["max_iters"] = spec.params.max_iters;
    j["trials"] = spec.trials;
    j["base_seed"] = spec.base_seed;
    j["workers"] = spec.workers;
    j["data_dir"] = spec.data_dir ? nlohmann::ordered_json(*spec.data_dir) : nullptr;
    j["std_kind"] = "sample";  // n-1 divisor
    j["gego_frequency"] = spec.params.gego.frequency;
    j["ga_crossover"] =
        spec.params.ga.crossover == CrossoverKind::LinearArithmetic ? "linear" : "single_point_binary";
    return j;
}

std::string to_json_string(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["spec"] = spec_to_json(report.spec);
    j["cells"] = nlohmann::ordered_json::array();
    for (const CellResult& cell : report.cells) {
        nlohmann::ordered_json c;
        c["function"] = cell.function;
        c["algorithm"] = algorithm_name(cell.algorithm);
        if (cell.error) {
            c["error"] = *cell.error;
        } else {
            c["mean"] = cell.summary.mean;
            c["std"] = cell.summary.stddev;
            c["best"] = cell.summary.best;
            c["worst"] = cell.summary.worst;
            c["values"] = cell.summary.values;
        }
        if (!cell.annotations.empty()) c["annotations"] = cell.annotations;
        j["cells"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

}  // namespace

std::string report_to_string(const ExperimentReport& report, ReportFormat format) {
    return format == ReportFormat::Csv ? to_csv(report) : to_json_string(report);
}

void write_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
    const std::string payload = report_to_string(report, format);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << payload;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed: " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move report into place at " + path + ": " + ec.message());
    }
}

}  // namespace gego
