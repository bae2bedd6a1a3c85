#include "gego/gego.hpp"

#include <numeric>
#include <stdexcept>

#include "gego/genetic.hpp"
#include "gego/geo.hpp"
#include "gego/population.hpp"

namespace gego {

namespace {

void phase_challenge(Agent& parent, const Vector& child_pos, double child_fit) {
    if (sanitize_fitness(child_fit) < parent.fitness) update_memory(parent, child_pos, child_fit);
}

}  // namespace

void genetic_phase(std::vector<Agent>& population, const GaParams& params, const Objective& objective,
                   const SearchSpace& space, RngStream& rng, std::size_t& evaluations) {
    SubStream& genetic = rng.genetic();
    const std::size_t n = population.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    genetic.shuffle(order);

    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        Agent& a = population[order[i]];
        Agent& b = population[order[i + 1]];

        const Chromosome ca = encode(a.position, space, params.bits_per_dim);
        const Chromosome cb = encode(b.position, space, params.bits_per_dim);
        auto [o1, o2] = single_point_crossover(ca, cb, genetic);
        const Vector child1 = decode(mutate_bits(o1, params.mutation_rate, genetic));
        const Vector child2 = decode(mutate_bits(o2, params.mutation_rate, genetic));

        phase_challenge(a, child1, objective(child1));
        phase_challenge(b, child2, objective(child2));
        evaluations += 2;
    }
    if (i < n) {  // odd leftover: mutation only
        Agent& a = population[order[i]];
        const Chromosome ca = encode(a.position, space, params.bits_per_dim);
        const Vector child = decode(mutate_bits(ca, params.mutation_rate, genetic));
        phase_challenge(a, child, objective(child));
        ++evaluations;
    }
}

RunResult run_gego(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                   const IterationCallback& on_iteration) {
    config.validate();
    if (config.algorithm != Algorithm::Gego)
        throw std::invalid_argument("run_gego: config.algorithm must be GEGO");

    const GegoParams& params = config.gego;
    RngStream rng(config.seed);
    std::vector<Agent> population = init_population(space, config.pop_size, rng);
    if (params.geo.seed_box_midpoint) {
        population[0].position = 0.5 * (space.lower + space.upper);
        population[0].best_position = population[0].position;
    }

    RunResult result;
    result.evaluations += evaluate_population(population, objective);
    result.history.reserve(static_cast<std::size_t>(config.max_iters));

    for (int t = 1; t <= config.max_iters; ++t) {
        if (t % params.frequency == 0) {
            genetic_phase(population, params.genetic, objective, space, rng, result.evaluations);
            ++result.genetic_phases;
        }
        geo_iteration(population, t, config.max_iters, params.geo, objective, space, rng,
                      result.evaluations);
        result.history.push_back(select_gbest(population).first);
        if (on_iteration) on_iteration(t, population);
    }

    std::tie(result.gbest_value, result.gbest_position) = select_gbest(population);
    return result;
}

}  // namespace gego
