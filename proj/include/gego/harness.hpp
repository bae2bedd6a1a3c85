#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gego/types.hpp"

namespace gego {

/// One (algorithm x function) grid of seeded independent trials. Trial i
/// runs with seed base_seed + i, so results are independent of execution
/// order and worker count.
struct ExperimentSpec {
    std::vector<Algorithm> algorithms;
    std::vector<std::string> functions;  ///< classical names or "cf1".."cf10"
    int dims = 2;
    int trials = 40;
    std::uint64_t base_seed = 0;
    int workers = 1;
    std::optional<std::string> data_dir;  ///< searched for composite shift/rotation files
    RunConfig params;                     ///< pop size, iteration budget, per-algorithm tunables
};

struct SummaryCell {
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation (n-1), 0 for a single trial
    double best = 0.0;
    double worst = 0.0;
    std::vector<double> values;
};

struct CellResult {
    std::string function;
    Algorithm algorithm = Algorithm::Gego;
    SummaryCell summary;
    std::optional<std::string> error;       ///< set when the cell aborted
    std::vector<std::string> annotations;   ///< e.g. synthetic composite data notice
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<CellResult> cells;
};

enum class ReportFormat { Csv, Json };

SummaryCell summarize(const std::vector<double>& values);

/// Dispatches to the run_* entry point selected by config.algorithm.
RunResult run_algorithm(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                        const IterationCallback& on_iteration = {});

/// Resolves a function name (classical or cf<k>) into an objective and its
/// box for the requested dimensionality. Composite annotations (synthetic
/// data) are appended to `annotations` when non-null.
std::pair<Objective, SearchSpace> resolve_function(const std::string& name, int dims,
                                                   const std::optional<std::string>& data_dir,
                                                   std::uint64_t fallback_seed,
                                                   std::vector<std::string>* annotations);

ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Serializes the report. CSV columns:
///   function,algorithm,mean,std,best,worst,trials,seed
/// JSON additionally carries per-trial values and the full spec echo.
/// Writes are atomic (temp file + rename); failures never leave a partial
/// file behind.
void write_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

std::string report_to_string(const ExperimentReport& report, ReportFormat format);

}  // namespace gego
