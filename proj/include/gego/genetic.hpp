#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gego/rng.hpp"
#include "gego/types.hpp"

namespace gego {

/// Fixed-point binary encoding of a position: B bits per dimension,
/// most-significant bit first, all dimensions concatenated. The lower
/// bound maps to the all-zero code, the upper bound to all-one.
struct Chromosome {
    std::vector<std::uint8_t> bits;  // one byte per bit, values 0/1
    int bits_per_dim = 16;
    const SearchSpace* space = nullptr;

    std::size_t size() const { return bits.size(); }
};

Chromosome encode(const Vector& position, const SearchSpace& space, int bits_per_dim);
Vector decode(const Chromosome& chrom);

/// Swaps the tails of two equal-length bit strings at cut index k,
/// 1 <= k <= L-1: child1 = p1[0,k) ++ p2[k,L).
std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                         std::size_t k);
std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                         SubStream& rng);

/// Convex blend with one shared alpha per pair:
/// child1 = a*p1 + (1-a)*p2, child2 = (1-a)*p1 + a*p2, both clamped.
std::pair<Vector, Vector> linear_crossover(const Vector& p1, const Vector& p2, double alpha,
                                           const SearchSpace& space);
std::pair<Vector, Vector> linear_crossover(const Vector& p1, const Vector& p2, SubStream& rng,
                                           const SearchSpace& space);

/// Flips each bit independently with the given probability; one draw per bit.
Chromosome mutate_bits(const Chromosome& chrom, double rate, SubStream& rng);

/// Binary tournament between two pre-drawn distinct indices: the lower
/// best_fitness wins, ties go to the first.
std::size_t tournament_pick(const std::vector<Agent>& population, std::size_t first, std::size_t second);

/// Draws two distinct indices uniformly, then resolves the tournament.
std::size_t tournament_select(const std::vector<Agent>& population, SubStream& rng);

/// Number of agents carried unchanged each generation.
std::size_t elite_count(double elite_fraction, std::size_t pop_size);

RunResult run_ga(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                 const IterationCallback& on_iteration = {});

}  // namespace gego
