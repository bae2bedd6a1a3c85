#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gego/harness.hpp"
#include "gego/types.hpp"

namespace gego {

struct AnnLayer {
    int neurons = 0;
    double dropout = 0.0;  ///< one of {0, 0.1, 0.5}
};

/// A fully decoded feed-forward network configuration.
struct AnnConfig {
    std::vector<AnnLayer> layers;  ///< 1..4 entries
    int batch_size = 0;            ///< one of {32, 64, ..., 256}
    double learning_rate = 0.0;    ///< in [1e-4, 1e-2]
};

inline constexpr int kHpoDims = 10;
inline constexpr int kMaxLayers = 4;

/// Continuous encoding box searched by the optimizers: four
/// (neurons, dropout-index) pairs, then batch index and log10 learning
/// rate. Neuron components span [min, max+1) so flooring covers every
/// integer; dropout spans [0,3), batch [0,8), learning rate [-4,-2].
SearchSpace hpo_space();

/// Floors neuron counts and category indices, clamps them into their
/// admissible ranges and maps the learning rate out of log scale. A layer
/// (beyond the first) whose floored raw neuron value falls below the
/// 10-unit output width truncates itself and everything after it.
AnnConfig decode_config(const Vector& v);

/// Cheap deterministic stand-in objective: a quadratic bowl over log total
/// neurons, log10 learning rate, batch index and mean dropout, shifted so
/// the minimum mimics a negative accuracy. Lower is better.
double surrogate_fitness(const AnnConfig& config);

/// One configuration achieving the exact surrogate minimum.
AnnConfig surrogate_optimum();
double surrogate_minimum();

using FitnessAdapter = std::function<double(const AnnConfig&)>;

/// Drives an external trainer over newline-delimited JSON on the child's
/// stdin/stdout. Requests carry a strictly increasing id and the config;
/// replies must echo the id with a "fitness" field. Timeouts, id
/// mismatches and malformed lines yield +infinity and an annotation. The
/// destructor sends {"cmd":"shutdown"} and reaps the process.
class ExternalEvaluator {
public:
    explicit ExternalEvaluator(std::string command, double timeout_seconds = 600.0);
    ~ExternalEvaluator();

    ExternalEvaluator(const ExternalEvaluator&) = delete;
    ExternalEvaluator& operator=(const ExternalEvaluator&) = delete;

    double evaluate(const AnnConfig& config);

    const std::vector<std::string>& annotations() const { return annotations_; }
    std::int64_t requests_sent() const { return next_id_ - 1; }

private:
    void spawn();
    void shutdown() noexcept;
    std::optional<std::string> read_line(double timeout_seconds);

    std::string command_;
    double timeout_seconds_;
    std::int64_t next_id_ = 1;
    int child_pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
    std::vector<std::string> annotations_;
};

struct HpoTrial {
    std::uint64_t seed = 0;
    double best_fitness = 0.0;
    Vector best_position;
    AnnConfig best_config;
    std::size_t evaluations = 0;
};

struct HpoReport {
    Algorithm algorithm = Algorithm::Gego;
    int pop_size = 0;
    int iters = 0;
    std::uint64_t base_seed = 0;
    std::vector<HpoTrial> trials;
    SummaryCell summary;  ///< over per-trial best fitness
    std::vector<std::string> annotations;
};

/// Runs `trials` seeded searches of the 10-D encoding box, scoring each
/// point as adapter(decode_config(x)). Per-trial winners are decoded and
/// kept alongside the fitness summary.
HpoReport run_hpo(Algorithm algorithm, const FitnessAdapter& adapter, int pop_size, int iters, int trials,
                  std::uint64_t seed, const RunConfig& base_params = {});

/// Best value among n_evals uniform samples; the equal-budget baseline.
double random_search_best(const SearchSpace& space, const Objective& objective, std::size_t n_evals,
                          std::uint64_t seed);

std::string hpo_report_to_string(const HpoReport& report);
void write_hpo_report(const HpoReport& report, const std::string& path);

}  // namespace gego
