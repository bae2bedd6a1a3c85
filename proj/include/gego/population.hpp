#pragma once

#include <utility>
#include <vector>

#include "gego/rng.hpp"
#include "gego/types.hpp"

namespace gego {

/// Non-finite objective values become +infinity so they can never enter a
/// memory or win a gbest scan.
double sanitize_fitness(double y);

/// Samples n agents uniformly inside the box from the "init" stream.
/// Memories start at the sampled position with unset (+inf) fitness.
std::vector<Agent> init_population(const SearchSpace& space, int n, RngStream& rng);

/// Evaluates every agent at its current position and seeds its memory.
/// Returns the number of objective calls made.
std::size_t evaluate_population(std::vector<Agent>& population, const Objective& objective);

/// Moves the agent to new_position with new_fitness, replacing its memory
/// when new_fitness <= best_fitness (ties accepted).
void update_memory(Agent& agent, const Vector& new_position, double new_fitness);

/// Lowest best_fitness over the population; ties go to the lowest index.
std::pair<double, Vector> select_gbest(const std::vector<Agent>& population);
std::size_t select_gbest_index(const std::vector<Agent>& population);

}  // namespace gego
