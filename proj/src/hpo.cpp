#include "gego/hpo.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "gego/population.hpp"
#include "gego/rng.hpp"

namespace gego {

namespace {

constexpr int kNeuronMin[kMaxLayers] = {128, 64, 32, 16};
constexpr int kNeuronMax = 512;
constexpr double kDropoutOptions[3] = {0.0, 0.1, 0.5};
constexpr int kBatchOptions[8] = {32, 64, 96, 128, 160, 192, 224, 256};
constexpr int kOutputWidth = 10;  // output-layer class count; truncation threshold

constexpr double kSurrogatePeak = 0.98;
constexpr double kSurrogateTotalTarget = 896.0;

int clamp_int(long long v, int lo, int hi) {
    if (v < lo) return lo;
    if (v > hi) return hi;
    return static_cast<int>(v);
}

// floor with a representable-range guard; NaN maps to the low end
long long safe_floor(double v) {
    const double f = std::floor(v);
    if (std::isnan(f) || f < -1e18) return -1000000000000000000LL;
    if (f > 1e18) return 1000000000000000000LL;
    return static_cast<long long>(f);
}

double clamp_double(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

int batch_index(int batch_size) {
    for (int i = 0; i < 8; ++i)
        if (kBatchOptions[i] == batch_size) return i;
    throw std::invalid_argument("batch_size not in the admissible set: " + std::to_string(batch_size));
}

nlohmann::ordered_json config_to_json(const AnnConfig& config) {
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (const AnnLayer& layer : config.layers)
        layers.push_back({{"neurons", layer.neurons}, {"dropout", layer.dropout}});
    return {{"layers", std::move(layers)},
            {"batch_size", config.batch_size},
            {"learning_rate", config.learning_rate}};
}

}  // namespace

SearchSpace hpo_space() {
    SearchSpace space;
    space.lower.resize(kHpoDims);
    space.upper.resize(kHpoDims);
    for (int l = 0; l < kMaxLayers; ++l) {
        space.lower[2 * l] = kNeuronMin[l];
        space.upper[2 * l] = kNeuronMax + 1;  // floor covers the full integer range
        space.lower[2 * l + 1] = 0.0;
        space.upper[2 * l + 1] = 3.0;
    }
    space.lower[8] = 0.0;
    space.upper[8] = 8.0;
    space.lower[9] = -4.0;
    space.upper[9] = -2.0;
    return space;
}

AnnConfig decode_config(const Vector& v) {
    if (v.size() != kHpoDims)
        throw std::invalid_argument("decode_config: expected " + std::to_string(kHpoDims) +
                                    " components, got " + std::to_string(v.size()));

    AnnConfig config;
    for (int l = 0; l < kMaxLayers; ++l) {
        const auto raw = safe_floor(v[2 * l]);
        // the truncation test sees the pre-clamp value; the first layer is
        // always retained
        if (l > 0 && raw < kOutputWidth) break;
        AnnLayer layer;
        layer.neurons = clamp_int(raw, kNeuronMin[l], kNeuronMax);
        const auto drop_idx = safe_floor(v[2 * l + 1]);
        layer.dropout = kDropoutOptions[clamp_int(drop_idx, 0, 2)];
        config.layers.push_back(layer);
    }

    const auto b_idx = safe_floor(v[8]);
    config.batch_size = kBatchOptions[clamp_int(b_idx, 0, 7)];
    config.learning_rate = std::pow(10.0, clamp_double(v[9], -4.0, -2.0));
    return config;
}

double surrogate_fitness(const AnnConfig& config) {
    long long total = 0;
    double dropout_sum = 0.0;
    for (const AnnLayer& layer : config.layers) {
        total += layer.neurons;
        dropout_sum += layer.dropout;
    }
    const double f_total = std::log(static_cast<double>(total) / kSurrogateTotalTarget);
    const double f_lr = std::log10(config.learning_rate) + 3.0;
    const double f_batch = static_cast<double>(batch_index(config.batch_size) - 3);
    const double f_drop = dropout_sum / static_cast<double>(config.layers.size());
    return -kSurrogatePeak + 0.02 * f_total * f_total + 0.05 * f_lr * f_lr + 0.01 * f_batch * f_batch +
           0.08 * f_drop * f_drop;
}

AnnConfig surrogate_optimum() {
    AnnConfig config;
    config.layers = {{512, 0.0}, {256, 0.0}, {96, 0.0}, {32, 0.0}};  // totals 896
    config.batch_size = 128;
    config.learning_rate = 1e-3;
    return config;
}

double surrogate_minimum() { return -kSurrogatePeak; }

// ---------------------------------------------------------------------------
// External fitness endpoint over stdin/stdout

ExternalEvaluator::ExternalEvaluator(std::string command, double timeout_seconds)
    : command_(std::move(command)), timeout_seconds_(timeout_seconds) {
    spawn();
}

ExternalEvaluator::~ExternalEvaluator() { shutdown(); }

void ExternalEvaluator::spawn() {
    ::signal(SIGPIPE, SIG_IGN);  // broken pipes surface as write errors instead

    int to_child[2];    // parent writes -> child stdin
    int from_child[2];  // child stdout -> parent reads
    int exec_err[2];    // close-on-exec; carries errno if exec fails
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0 || ::pipe(exec_err) != 0)
        throw std::runtime_error("ExternalEvaluator: pipe() failed");
    ::fcntl(exec_err[1], F_SETFD, FD_CLOEXEC);

    const pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error("ExternalEvaluator: fork() failed");

    if (pid == 0) {
        ::dup2(to_child[0], STDIN_FILENO);
        ::dup2(from_child[1], STDOUT_FILENO);
        ::close(to_child[0]);
        ::close(to_child[1]);
        ::close(from_child[0]);
        ::close(from_child[1]);
        ::close(exec_err[0]);
        ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        const int err = errno;
        ssize_t ignored = ::write(exec_err[1], &err, sizeof(err));
        (void)ignored;
        ::_exit(127);
    }

    ::close(to_child[0]);
    ::close(from_child[1]);
    ::close(exec_err[1]);
    child_pid_ = pid;
    to_child_ = to_child[1];
    from_child_ = from_child[0];

    int err = 0;
    if (::read(exec_err[0], &err, sizeof(err)) == sizeof(err)) {
        ::close(exec_err[0]);
        shutdown();
        throw std::runtime_error("ExternalEvaluator: cannot launch '" + command_ +
                                 "': " + std::strerror(err));
    }
    ::close(exec_err[0]);
}

std::optional<std::string> ExternalEvaluator::read_line(double timeout_seconds) {
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
    while (true) {
        const std::size_t newline = buffer_.find('\n');
        if (newline != std::string::npos) {
            std::string line = buffer_.substr(0, newline);
            buffer_.erase(0, newline + 1);
            return line;
        }
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0) return std::nullopt;

        pollfd pfd{from_child_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
        if (ready <= 0) return std::nullopt;  // timeout or poll failure

        char chunk[4096];
        const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
        if (n <= 0) return std::nullopt;  // endpoint closed its stdout
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

double ExternalEvaluator::evaluate(const AnnConfig& config) {
    constexpr double kFault = std::numeric_limits<double>::infinity();
    const std::int64_t id = next_id_++;

    nlohmann::ordered_json request;
    request["id"] = id;
    request["config"] = config_to_json(config);
    const std::string line = request.dump() + "\n";

    if (::write(to_child_, line.data(), line.size()) != static_cast<ssize_t>(line.size())) {
        annotations_.push_back("request " + std::to_string(id) + ": endpoint pipe closed");
        return kFault;
    }

    const std::optional<std::string> reply = read_line(timeout_seconds_);
    if (!reply) {
        // distinguish an endpoint that never came up from one that went quiet
        int status = 0;
        if (child_pid_ > 0 && ::waitpid(child_pid_, &status, WNOHANG) == child_pid_) {
            child_pid_ = -1;
            if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
                throw std::runtime_error("ExternalEvaluator: cannot launch '" + command_ + "'");
        }
        annotations_.push_back("request " + std::to_string(id) + ": timeout or closed stream");
        return kFault;
    }

    const nlohmann::json parsed = nlohmann::json::parse(*reply, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("id") || !parsed.contains("fitness") ||
        !parsed["fitness"].is_number()) {
        annotations_.push_back("request " + std::to_string(id) + ": malformed reply");
        return kFault;
    }
    if (parsed["id"].get<std::int64_t>() != id) {
        annotations_.push_back("request " + std::to_string(id) + ": reply id mismatch");
        return kFault;
    }
    return parsed["fitness"].get<double>();
}

void ExternalEvaluator::shutdown() noexcept {
    if (child_pid_ < 0) return;
    if (to_child_ >= 0) {
        const std::string bye = "{\"cmd\":\"shutdown\"}\n";
        ssize_t ignored = ::write(to_child_, bye.data(), bye.size());
        (void)ignored;
        ::close(to_child_);
        to_child_ = -1;
    }
    if (from_child_ >= 0) {
        ::close(from_child_);
        from_child_ = -1;
    }
    for (int i = 0; i < 20; ++i) {  // ~2 s grace before SIGKILL
        if (::waitpid(child_pid_, nullptr, WNOHANG) != 0) {
            child_pid_ = -1;
            return;
        }
        ::usleep(100000);
    }
    ::kill(child_pid_, SIGKILL);
    ::waitpid(child_pid_, nullptr, 0);
    child_pid_ = -1;
}

// ---------------------------------------------------------------------------

HpoReport run_hpo(Algorithm algorithm, const FitnessAdapter& adapter, int pop_size, int iters, int trials,
                  std::uint64_t seed, const RunConfig& base_params) {
    if (trials < 1) throw std::invalid_argument("run_hpo: trials must be >= 1");

    // the encoding axes span wildly different ranges (neurons vs log
    // learning rate); the optimizers search a unit box and positions are
    // mapped into encoding coordinates before decoding
    const SearchSpace encoding = hpo_space();
    const Vector span = encoding.upper - encoding.lower;
    const SearchSpace unit = SearchSpace::box(kHpoDims, 0.0, 1.0);
    const auto to_encoding = [&](const Vector& u) -> Vector {
        return encoding.lower.array() + u.array() * span.array();
    };
    const Objective objective = [&](const Vector& u) { return adapter(decode_config(to_encoding(u))); };

    HpoReport report;
    report.algorithm = algorithm;
    report.pop_size = pop_size;
    report.iters = iters;
    report.base_seed = seed;

    std::vector<double> bests;
    for (int i = 0; i < trials; ++i) {
        RunConfig config = base_params;
        config.algorithm = algorithm;
        config.pop_size = pop_size;
        config.max_iters = iters;
        config.seed = seed + static_cast<std::uint64_t>(i);

        const RunResult result = run_algorithm(config, objective, unit);
        HpoTrial trial;
        trial.seed = config.seed;
        trial.best_fitness = result.gbest_value;
        trial.best_position = to_encoding(result.gbest_position);
        trial.best_config = decode_config(trial.best_position);
        trial.evaluations = result.evaluations;
        bests.push_back(trial.best_fitness);
        report.trials.push_back(std::move(trial));
    }
    report.summary = summarize(bests);
    return report;
}

double random_search_best(const SearchSpace& space, const Objective& objective, std::size_t n_evals,
                          std::uint64_t seed) {
    space.validate();
    RngStream rng(seed);
    double best = std::numeric_limits<double>::infinity();
    Vector x(space.dims());
    for (std::size_t i = 0; i < n_evals; ++i) {
        for (Eigen::Index j = 0; j < space.dims(); ++j)
            x[j] = rng.init().uniform(space.lower[j], space.upper[j]);
        best = std::min(best, sanitize_fitness(objective(x)));
    }
    return best;
}

std::string hpo_report_to_string(const HpoReport& report) {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm_name(report.algorithm);
    j["pop_size"] = report.pop_size;
    j["iters"] = report.iters;
    j["trials"] = report.trials.size();
    j["base_seed"] = report.base_seed;
    j["std_kind"] = "sample";
    j["summary"] = {{"mean", report.summary.mean},
                    {"std", report.summary.stddev},
                    {"best", report.summary.best},
                    {"worst", report.summary.worst}};
    j["trial_results"] = nlohmann::ordered_json::array();
    for (const HpoTrial& trial : report.trials) {
        nlohmann::ordered_json t;
        t["seed"] = trial.seed;
        t["best_fitness"] = trial.best_fitness;
        t["evaluations"] = trial.evaluations;
        t["best_config"] = config_to_json(trial.best_config);
        t["best_position"] = std::vector<double>(trial.best_position.data(),
                                                 trial.best_position.data() + trial.best_position.size());
        j["trial_results"].push_back(std::move(t));
    }
    if (!report.annotations.empty()) j["annotations"] = report.annotations;
    return j.dump(2) + "\n";
}

void write_hpo_report(const HpoReport& report, const std::string& path) {
    const std::string payload = hpo_report_to_string(report);
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
