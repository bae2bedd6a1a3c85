#include "gego/population.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gego {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Geo: return "geo";
        case Algorithm::Ga: return "ga";
        case Algorithm::Gego: return "gego";
        case Algorithm::Pso: return "pso";
        case Algorithm::Gwo: return "gwo";
        case Algorithm::Sca: return "sca";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "geo") return Algorithm::Geo;
    if (name == "ga") return Algorithm::Ga;
    if (name == "gego") return Algorithm::Gego;
    if (name == "pso") return Algorithm::Pso;
    if (name == "gwo") return Algorithm::Gwo;
    if (name == "sca") return Algorithm::Sca;
    throw std::invalid_argument("unknown algorithm: " + name);
}

double sanitize_fitness(double y) {
    return std::isfinite(y) ? y : std::numeric_limits<double>::infinity();
}

std::vector<Agent> init_population(const SearchSpace& space, int n, RngStream& rng) {
    space.validate();
    if (n < 2) throw std::invalid_argument("init_population: population size must be >= 2");

    const Eigen::Index dims = space.dims();
    std::vector<Agent> population(static_cast<std::size_t>(n));
    for (Agent& agent : population) {
        agent.position.resize(dims);
        for (Eigen::Index j = 0; j < dims; ++j)
            agent.position[j] = rng.init().uniform(space.lower[j], space.upper[j]);
        agent.best_position = agent.position;
    }
    return population;
}

std::size_t evaluate_population(std::vector<Agent>& population, const Objective& objective) {
    for (Agent& agent : population) {
        agent.fitness = sanitize_fitness(objective(agent.position));
        if (agent.fitness <= agent.best_fitness) {
            agent.best_fitness = agent.fitness;
            agent.best_position = agent.position;
        }
    }
    return population.size();
}

void update_memory(Agent& agent, const Vector& new_position, double new_fitness) {
    agent.position = new_position;
    agent.fitness = sanitize_fitness(new_fitness);
    if (agent.fitness <= agent.best_fitness) {
        agent.best_fitness = agent.fitness;
        agent.best_position = agent.position;
    }
}

std::size_t select_gbest_index(const std::vector<Agent>& population) {
    if (population.empty()) throw std::invalid_argument("select_gbest: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (population[i].best_fitness < population[best].best_fitness) best = i;
    return best;
}

std::pair<double, Vector> select_gbest(const std::vector<Agent>& population) {
    const Agent& winner = population[select_gbest_index(population)];
    return {winner.best_fitness, winner.best_position};
}

}  // namespace gego
