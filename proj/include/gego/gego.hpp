#pragma once

#include <vector>

#include "gego/rng.hpp"
#include "gego/types.hpp"

namespace gego {

/// Whole-population genetic step: encode everyone, shuffle into pairs (one
/// shared cut index per pair), single-point crossover, per-bit mutation,
/// decode and evaluate. A child that is strictly fitter than its parent's
/// current fitness replaces it (memory folds in under the usual <= rule);
/// otherwise the parent is untouched. With odd N the leftover agent is
/// mutated without crossover. Draws come from the "genetic" stream only.
void genetic_phase(std::vector<Agent>& population, const GaParams& params, const Objective& objective,
                   const SearchSpace& space, RngStream& rng, std::size_t& evaluations);

/// GEO movement loop with a genetic phase every `frequency` iterations
/// (1-based t, phase first, movement after).
RunResult run_gego(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                   const IterationCallback& on_iteration = {});

}  // namespace gego
