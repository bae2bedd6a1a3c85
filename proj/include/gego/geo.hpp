#pragma once

#include <utility>
#include <vector>

#include "gego/rng.hpp"
#include "gego/types.hpp"

namespace gego {

/// Linear schedules for the attack/cruise propensities at iteration t of T:
///   pa = pa0 + (t/T) * |paT - pa0|,  pc = pc0 - (t/T) * |pcT - pc0|.
std::pair<double, double> coefficients(int t, int T, const GeoParams& params);

/// One movement pass over the population, in agent-index order. Each eagle
/// picks a prey memory uniformly (self included); an effectively-zero
/// attack vector skips the move. New positions are clamped, evaluated and
/// folded into memory. Later eagles see earlier eagles' updated memories.
void geo_iteration(std::vector<Agent>& population, int t, int T, const GeoParams& params,
                   const Objective& objective, const SearchSpace& space, RngStream& rng,
                   std::size_t& evaluations);

RunResult run_geo(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration = {});

}  // namespace gego
