#include "gego/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gego/geometry.hpp"
#include "gego/population.hpp"
#include "gego/rng.hpp"

namespace gego {

namespace {

constexpr double kTwoPi = 6.283185307179586;

RunResult finish(std::vector<Agent>& population, RunResult result) {
    std::tie(result.gbest_value, result.gbest_position) = select_gbest(population);
    return result;
}

}  // namespace

RunResult run_pso(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration) {
    config.validate();
    if (config.algorithm != Algorithm::Pso)
        throw std::invalid_argument("run_pso: config.algorithm must be PSO");

    const PsoParams& params = config.pso;
    RngStream rng(config.seed);
    SubStream& movement = rng.movement();

    std::vector<Agent> population = init_population(space, config.pop_size, rng);
    std::vector<Vector> velocity(population.size(), Vector::Zero(space.dims()));

    RunResult result;
    result.evaluations += evaluate_population(population, objective);

    for (int t = 1; t <= config.max_iters; ++t) {
        const Vector gbest = select_gbest(population).second;  // snapshot per iteration
        for (std::size_t i = 0; i < population.size(); ++i) {
            Agent& p = population[i];
            Vector& v = velocity[i];
            for (Eigen::Index j = 0; j < space.dims(); ++j) {
                const double r1 = movement.uniform01();
                const double r2 = movement.uniform01();
                v[j] = params.inertia * v[j] + params.c1 * r1 * (p.best_position[j] - p.position[j]) +
                       params.c2 * r2 * (gbest[j] - p.position[j]);
            }
            const Vector next = clamp_to_bounds(p.position + v, space);
            update_memory(p, next, objective(next));
            ++result.evaluations;
        }
        result.history.push_back(select_gbest(population).first);
        if (on_iteration) on_iteration(t, population);
    }
    return finish(population, result);
}

RunResult run_gwo(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration) {
    config.validate();
    if (config.algorithm != Algorithm::Gwo)
        throw std::invalid_argument("run_gwo: config.algorithm must be GWO");

    const GwoParams& params = config.gwo;
    if (config.pop_size < params.leaders)
        throw std::invalid_argument("run_gwo: pop_size must be >= number of leaders");

    RngStream rng(config.seed);
    SubStream& movement = rng.movement();
    std::vector<Agent> population = init_population(space, config.pop_size, rng);

    RunResult result;
    result.evaluations += evaluate_population(population, objective);

    for (int t = 1; t <= config.max_iters; ++t) {
        const double frac = static_cast<double>(t) / static_cast<double>(config.max_iters);
        const double a = params.a_start + frac * (params.a_end - params.a_start);

        // three best memories at iteration start, ties by index
        std::vector<std::size_t> ranked(population.size());
        std::iota(ranked.begin(), ranked.end(), std::size_t{0});
        std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t x, std::size_t y) {
            return population[x].best_fitness < population[y].best_fitness;
        });
        const std::array<Vector, 3> leaders = {population[ranked[0]].best_position,
                                               population[ranked[1]].best_position,
                                               population[ranked[2]].best_position};

        for (Agent& wolf : population) {
            Vector next(space.dims());
            for (Eigen::Index j = 0; j < space.dims(); ++j) {
                double sum = 0.0;
                for (const Vector& leader : leaders) {
                    const double r1 = movement.uniform01();
                    const double r2 = movement.uniform01();
                    const double A = 2.0 * a * r1 - a;
                    const double C = 2.0 * r2;
                    const double d = std::abs(C * leader[j] - wolf.position[j]);
                    sum += leader[j] - A * d;
                }
                next[j] = sum / 3.0;
            }
            next = clamp_to_bounds(next, space);
            update_memory(wolf, next, objective(next));
            ++result.evaluations;
        }
        result.history.push_back(select_gbest(population).first);
        if (on_iteration) on_iteration(t, population);
    }
    return finish(population, result);
}

RunResult run_sca(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration) {
    config.validate();
    if (config.algorithm != Algorithm::Sca)
        throw std::invalid_argument("run_sca: config.algorithm must be SCA");

    const ScaParams& params = config.sca;
    RngStream rng(config.seed);
    SubStream& movement = rng.movement();
    std::vector<Agent> population = init_population(space, config.pop_size, rng);

    RunResult result;
    result.evaluations += evaluate_population(population, objective);

    for (int t = 1; t <= config.max_iters; ++t) {
        const double frac = static_cast<double>(t) / static_cast<double>(config.max_iters);
        const double r1 = params.linear_component * (1.0 - frac);
        const Vector destination = select_gbest(population).second;

        for (Agent& agent : population) {
            Vector next(space.dims());
            for (Eigen::Index j = 0; j < space.dims(); ++j) {
                const double r2 = kTwoPi * movement.uniform01();
                const double r3 = 2.0 * movement.uniform01();
                const double r4 = movement.uniform01();
                const double pull = std::abs(r3 * destination[j] - agent.position[j]);
                next[j] = agent.position[j] + r1 * (r4 < 0.5 ? std::sin(r2) : std::cos(r2)) * pull;
            }
            next = clamp_to_bounds(next, space);
            // greedy acceptance: a worse candidate leaves the agent in place
            const double y = sanitize_fitness(objective(next));
            ++result.evaluations;
            if (y <= agent.fitness) update_memory(agent, next, y);
        }
        result.history.push_back(select_gbest(population).first);
        if (on_iteration) on_iteration(t, population);
    }
    return finish(population, result);
}

}  // namespace gego
