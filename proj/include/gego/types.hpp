#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gego {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Minimization objective. May return non-finite values; the optimizers
/// treat those as +infinity.
using Objective = std::function<double(const Vector&)>;

/// Axis-aligned feasible box.
struct SearchSpace {
    Vector lower;
    Vector upper;

    Eigen::Index dims() const { return lower.size(); }

    void validate() const {
        if (lower.size() != upper.size() || lower.size() == 0)
            throw std::invalid_argument("SearchSpace: bound vectors must be non-empty and equal length");
        for (Eigen::Index j = 0; j < lower.size(); ++j)
            if (!(lower[j] < upper[j]))
                throw std::invalid_argument("SearchSpace: lower[" + std::to_string(j) +
                                            "] must be strictly below upper[" + std::to_string(j) + "]");
    }

    static SearchSpace box(Eigen::Index dims, double lo, double hi) {
        SearchSpace s;
        s.lower = Vector::Constant(dims, lo);
        s.upper = Vector::Constant(dims, hi);
        s.validate();
        return s;
    }
};

/// Candidate solution with personal-best memory. best_fitness never
/// increases once set.
struct Agent {
    Vector position;
    double fitness = std::numeric_limits<double>::infinity();
    Vector best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
};

enum class Algorithm { Geo, Ga, Gego, Pso, Gwo, Sca };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

/// How the step vector is scaled before being applied to a position.
///   Unit         — attack and cruise terms normalized to unit length; the
///                  step never exceeds pa + pc regardless of distance.
///   AttackRadius — the unit step is multiplied by the attack distance, so
///                  moves contract as the flock closes on its prey.
enum class StepScaling { Unit, AttackRadius };

struct GeoParams {
    double pa0 = 0.5;  ///< propensity to attack at t = 0
    double paT = 2.0;  ///< propensity to attack at t = T
    double pc0 = 1.0;  ///< propensity to cruise at t = 0
    double pcT = 0.5;  ///< propensity to cruise at t = T
    StepScaling scaling = StepScaling::AttackRadius;
    /// Start the first eagle at the box midpoint instead of a uniform draw.
    bool seed_box_midpoint = true;
};

enum class CrossoverKind { SinglePointBinary, LinearArithmetic };

struct GaParams {
    double elite_fraction = 0.05;
    double mutation_rate = 0.001;  ///< per-bit flip probability
    CrossoverKind crossover = CrossoverKind::LinearArithmetic;
    int bits_per_dim = 16;
};

struct GegoParams {
    GeoParams geo;
    GaParams genetic{0.0, 0.001, CrossoverKind::SinglePointBinary, 16};
    std::int64_t frequency = 5;  ///< iterations between genetic phases
};

struct PsoParams {
    double inertia = 0.8;
    double c1 = 0.5;
    double c2 = 0.5;
};

struct GwoParams {
    double a_start = 2.0;
    double a_end = 0.0;
    int leaders = 3;
};

struct ScaParams {
    double linear_component = 2.0;  ///< r1 decays linearly from this to 0
};

struct RunConfig {
    Algorithm algorithm = Algorithm::Gego;
    int pop_size = 20;
    int max_iters = 100;
    std::uint64_t seed = 0;

    GeoParams geo;
    GaParams ga;
    GegoParams gego;
    PsoParams pso;
    GwoParams gwo;
    ScaParams sca;

    void validate() const {
        if (pop_size < 2) throw std::invalid_argument("RunConfig: pop_size must be >= 2");
        if (max_iters < 1) throw std::invalid_argument("RunConfig: max_iters must be >= 1");
        if (ga.elite_fraction < 0.0 || ga.elite_fraction >= 1.0)
            throw std::invalid_argument("RunConfig: elite_fraction must be in [0, 1)");
        if (ga.mutation_rate < 0.0 || ga.mutation_rate > 1.0)
            throw std::invalid_argument("RunConfig: mutation_rate must be in [0, 1]");
        if (gego.frequency < 1) throw std::invalid_argument("RunConfig: frequency must be >= 1");
    }
};

struct RunResult {
    double gbest_value = std::numeric_limits<double>::infinity();
    Vector gbest_position;
    std::vector<double> history;  ///< best-so-far after each iteration, length max_iters
    std::size_t evaluations = 0;
    std::size_t genetic_phases = 0;  ///< phases fired (GEGO only)
};

/// Invoked after each completed iteration with the 1-based iteration index
/// and the live population. Used by tests and tracing tools.
using IterationCallback = std::function<void(int t, const std::vector<Agent>&)>;

}  // namespace gego
