#include "gego/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gego/geometry.hpp"
#include "gego/population.hpp"

namespace gego {

namespace {

std::uint64_t max_code(int bits_per_dim) {
    return (bits_per_dim >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits_per_dim) - 1);
}

}  // namespace

Chromosome encode(const Vector& position, const SearchSpace& space, int bits_per_dim) {
    if (position.size() != space.dims()) throw std::invalid_argument("encode: dimension mismatch");
    if (bits_per_dim < 1 || bits_per_dim > 63)
        throw std::invalid_argument("encode: bits_per_dim must be in [1, 63]");

    const Vector x = clamp_to_bounds(position, space);
    const std::uint64_t levels = max_code(bits_per_dim);

    Chromosome chrom;
    chrom.bits_per_dim = bits_per_dim;
    chrom.space = &space;
    chrom.bits.resize(static_cast<std::size_t>(space.dims()) * static_cast<std::size_t>(bits_per_dim));

    for (Eigen::Index j = 0; j < space.dims(); ++j) {
        const double span = space.upper[j] - space.lower[j];
        const double scaled = (x[j] - space.lower[j]) / span * static_cast<double>(levels);
        auto code = static_cast<std::uint64_t>(std::llround(scaled));
        if (code > levels) code = levels;
        for (int b = 0; b < bits_per_dim; ++b) {
            const int shift = bits_per_dim - 1 - b;  // most-significant first
            chrom.bits[static_cast<std::size_t>(j) * bits_per_dim + b] =
                static_cast<std::uint8_t>((code >> shift) & 1u);
        }
    }
    return chrom;
}

Vector decode(const Chromosome& chrom) {
    if (chrom.space == nullptr) throw std::invalid_argument("decode: chromosome has no search space");
    const SearchSpace& space = *chrom.space;
    const int B = chrom.bits_per_dim;
    if (chrom.bits.size() != static_cast<std::size_t>(space.dims()) * static_cast<std::size_t>(B))
        throw std::invalid_argument("decode: bit count does not match dims * bits_per_dim");

    const double levels = static_cast<double>(max_code(B));
    Vector x(space.dims());
    for (Eigen::Index j = 0; j < space.dims(); ++j) {
        std::uint64_t code = 0;
        for (int b = 0; b < B; ++b)
            code = (code << 1) | chrom.bits[static_cast<std::size_t>(j) * B + b];
        const double frac = static_cast<double>(code) / levels;
        x[j] = space.lower[j] + frac * (space.upper[j] - space.lower[j]);
        x[j] = std::min(std::max(x[j], space.lower[j]), space.upper[j]);
    }
    return x;
}

std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                         std::size_t k) {
    if (p1.bits.size() != p2.bits.size())
        throw std::invalid_argument("single_point_crossover: length mismatch");
    const std::size_t L = p1.bits.size();
    if (k < 1 || k > L - 1) throw std::invalid_argument("single_point_crossover: cut index out of range");

    Chromosome c1 = p1;
    Chromosome c2 = p2;
    for (std::size_t i = k; i < L; ++i) std::swap(c1.bits[i], c2.bits[i]);
    return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> single_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                         SubStream& rng) {
    const std::size_t L = p1.bits.size();
    if (L < 2) throw std::invalid_argument("single_point_crossover: chromosomes too short");
    const std::size_t k = 1 + rng.index(L - 1);
    return single_point_crossover(p1, p2, k);
}

std::pair<Vector, Vector> linear_crossover(const Vector& p1, const Vector& p2, double alpha,
                                           const SearchSpace& space) {
    if (p1.size() != p2.size()) throw std::invalid_argument("linear_crossover: length mismatch");
    Vector c1 = alpha * p1 + (1.0 - alpha) * p2;
    Vector c2 = (1.0 - alpha) * p1 + alpha * p2;
    return {clamp_to_bounds(c1, space), clamp_to_bounds(c2, space)};
}

std::pair<Vector, Vector> linear_crossover(const Vector& p1, const Vector& p2, SubStream& rng,
                                           const SearchSpace& space) {
    return linear_crossover(p1, p2, rng.uniform01(), space);
}

Chromosome mutate_bits(const Chromosome& chrom, double rate, SubStream& rng) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutate_bits: rate must be in [0, 1]");
    Chromosome out = chrom;
    for (std::uint8_t& bit : out.bits)
        if (rng.uniform01() < rate) bit ^= 1u;
    return out;
}

std::size_t tournament_pick(const std::vector<Agent>& population, std::size_t first, std::size_t second) {
    return population[second].best_fitness < population[first].best_fitness ? second : first;
}

std::size_t tournament_select(const std::vector<Agent>& population, SubStream& rng) {
    const std::size_t n = population.size();
    if (n < 2) throw std::invalid_argument("tournament_select: population must have >= 2 agents");
    const std::size_t first = rng.index(n);
    std::size_t second = rng.index(n - 1);
    if (second >= first) ++second;
    return tournament_pick(population, first, second);
}

std::size_t elite_count(double elite_fraction, std::size_t pop_size) {
    return static_cast<std::size_t>(std::ceil(elite_fraction * static_cast<double>(pop_size)));
}

namespace {

// encode -> flip bits -> decode; the single mutation mechanism shared by
// both crossover paths
Vector mutate_position(const Vector& x, const SearchSpace& space, const GaParams& params, SubStream& rng) {
    Chromosome chrom = encode(x, space, params.bits_per_dim);
    return decode(mutate_bits(chrom, params.mutation_rate, rng));
}

// Child challenges the agent in its slot; replacement only on strict
// improvement over the occupant's current fitness.
void challenge(Agent& occupant, const Vector& child_pos, double child_fit) {
    if (sanitize_fitness(child_fit) < occupant.fitness) update_memory(occupant, child_pos, child_fit);
}

}  // namespace

RunResult run_ga(const RunConfig& config, const Objective& objective, const SearchSpace& space,
                 const IterationCallback& on_iteration) {
    config.validate();
    if (config.algorithm != Algorithm::Ga)
        throw std::invalid_argument("run_ga: config.algorithm must be GA");

    const GaParams& params = config.ga;
    RngStream rng(config.seed);
    SubStream& genetic = rng.genetic();

    std::vector<Agent> population = init_population(space, config.pop_size, rng);

    RunResult result;
    result.evaluations += evaluate_population(population, objective);
    result.history.reserve(static_cast<std::size_t>(config.max_iters));

    const std::size_t n = population.size();
    const std::size_t elites = elite_count(params.elite_fraction, n);

    for (int t = 1; t <= config.max_iters; ++t) {
        // rank by current fitness, ties by index; the top slots are immune
        std::vector<std::size_t> ranked(n);
        std::iota(ranked.begin(), ranked.end(), std::size_t{0});
        std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            return population[a].fitness < population[b].fitness;
        });
        std::vector<std::size_t> slots(ranked.begin() + static_cast<std::ptrdiff_t>(elites), ranked.end());
        genetic.shuffle(slots);

        std::size_t s = 0;
        for (; s + 1 < slots.size(); s += 2) {
            const std::size_t p1 = tournament_select(population, genetic);
            const std::size_t p2 = tournament_select(population, genetic);

            Vector child1, child2;
            if (params.crossover == CrossoverKind::SinglePointBinary) {
                const Chromosome c1 = encode(population[p1].position, space, params.bits_per_dim);
                const Chromosome c2 = encode(population[p2].position, space, params.bits_per_dim);
                auto [o1, o2] = single_point_crossover(c1, c2, genetic);
                child1 = decode(mutate_bits(o1, params.mutation_rate, genetic));
                child2 = decode(mutate_bits(o2, params.mutation_rate, genetic));
            } else {
                auto [o1, o2] =
                    linear_crossover(population[p1].position, population[p2].position, genetic, space);
                child1 = mutate_position(o1, space, params, genetic);
                child2 = mutate_position(o2, space, params, genetic);
            }

            challenge(population[slots[s]], child1, objective(child1));
            challenge(population[slots[s + 1]], child2, objective(child2));
            result.evaluations += 2;
        }
        if (s < slots.size()) {  // odd leftover slot: mutation only
            Agent& agent = population[slots[s]];
            const Vector child = mutate_position(agent.position, space, params, genetic);
            challenge(agent, child, objective(child));
            ++result.evaluations;
        }

        result.history.push_back(select_gbest(population).first);
        if (on_iteration) on_iteration(t, population);
    }

    std::tie(result.gbest_value, result.gbest_position) = select_gbest(population);
    return result;
}

}  // namespace gego
