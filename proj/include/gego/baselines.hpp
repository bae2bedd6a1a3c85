#pragma once

#include "gego/types.hpp"

namespace gego {

/// Velocity/position PSO with constant inertia and per-dimension
/// acceleration draws. Velocities start at zero; positions are clamped to
/// the box after every move (velocity itself is not clamped).
RunResult run_pso(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration = {});

/// Grey-wolf encirclement around the three best memories, with the control
/// parameter decaying linearly from a_start to a_end. Needs pop_size >= 3.
RunResult run_gwo(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration = {});

/// Sine-cosine position update toward the global best memory; the move
/// amplitude r1 decays linearly from linear_component to 0. Candidate
/// moves are accepted greedily (an agent keeps its position when the
/// candidate scores worse).
RunResult run_sca(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                  const IterationCallback& on_iteration = {});

}  // namespace gego
