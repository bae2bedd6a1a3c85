#include "gego/geo.hpp"

#include <cmath>
#include <stdexcept>

#include "gego/geometry.hpp"
#include "gego/population.hpp"

namespace gego {

std::pair<double, double> coefficients(int t, int T, const GeoParams& params) {
    if (T < 1) throw std::invalid_argument("coefficients: T must be >= 1");
    if (t < 0 || t > T) throw std::invalid_argument("coefficients: t must be in [0, T]");
    const double frac = static_cast<double>(t) / static_cast<double>(T);
    const double pa = params.pa0 + frac * std::abs(params.paT - params.pa0);
    const double pc = params.pc0 - frac * std::abs(params.pcT - params.pc0);
    return {pa, pc};
}

void geo_iteration(std::vector<Agent>& population, int t, int T, const GeoParams& params,
                   const Objective& objective, const SearchSpace& space, RngStream& rng,
                   std::size_t& evaluations) {
    const auto [pa, pc] = coefficients(t, T, params);
    const Eigen::Index dims = space.dims();
    SubStream& movement = rng.movement();

    for (Agent& eagle : population) {
        const std::size_t prey = movement.index(population.size());
        const Vector attack = attack_vector(eagle.position, population[prey].best_position);
        const double radius = attack.norm();
        if (radius <= kZeroNormTol) continue;  // prey coincides with the eagle

        Vector cruise = Vector::Zero(dims);
        if (dims >= 2) cruise = cruise_vector(attack, movement);

        Vector dx = step_vector(attack, cruise, pa, pc, movement);
        if (params.scaling == StepScaling::AttackRadius) dx *= radius;

        const Vector next = clamp_to_bounds(eagle.position + dx, space);
        update_memory(eagle, next, objective(next));
        ++evaluations;
    }
}

RunResult run_geo(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration) {
    config.validate();
    if (config.algorithm != Algorithm::Geo)
        throw std::invalid_argument("run_geo: config.algorithm must be GEO");

    RngStream rng(config.seed);
    std::vector<Agent> population = init_population(space, config.pop_size, rng);
    if (config.geo.seed_box_midpoint) {
        population[0].position = 0.5 * (space.lower + space.upper);
        population[0].best_position = population[0].position;
    }

    RunResult result;
    result.evaluations += evaluate_population(population, objective);
    result.history.reserve(static_cast<std::size_t>(config.max_iters));

    for (int t = 1; t <= config.max_iters; ++t) {
        geo_iteration(population, t, config.max_iters, config.geo, objective, space, rng,
                      result.evaluations);
        result.history.push_back(select_gbest(population).first);
        if (on_iteration) on_iteration(t, population);
    }

    std::tie(result.gbest_value, result.gbest_position) = select_gbest(population);
    return result;
}

}  // namespace gego
