#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gego/benchmarks.hpp"
#include "gego/genetic.hpp"
#include "gego/population.hpp"

using namespace gego;

namespace {

bool all_bits(const Chromosome& c, std::uint8_t value) {
    return std::all_of(c.bits.begin(), c.bits.end(), [&](std::uint8_t b) { return b == value; });
}

}  // namespace

TEST_CASE("codec boundaries") {
    const SearchSpace space = SearchSpace::box(3, -2.0, 7.0);
    CHECK(all_bits(encode(space.lower, space, 16), 0));
    CHECK(all_bits(encode(space.upper, space, 16), 1));

    Chromosome zeros = encode(space.lower, space, 16);
    CHECK(decode(zeros) == space.lower);
    Chromosome ones = encode(space.upper, space, 16);
    CHECK(decode(ones) == space.upper);
}

TEST_CASE("decode of the half-range code") {
    const SearchSpace space = SearchSpace::box(1, -100.0, 100.0);
    Chromosome c;
    c.bits_per_dim = 16;
    c.space = &space;
    c.bits.assign(16, 0);
    c.bits[0] = 1;  // code 2^15, most-significant first
    const double expected = -100.0 + 32768.0 / 65535.0 * 200.0;  // independent arithmetic
    CHECK(decode(c)[0] == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("codec roundtrip error stays within one quantization step") {
    const SearchSpace space = SearchSpace::box(5, -100.0, 100.0);
    const double bound = 200.0 / 65536.0;
    RngStream rng(13);
    for (int i = 0; i < 1000; ++i) {
        Vector x(5);
        for (int j = 0; j < 5; ++j) x[j] = rng.init().uniform(-100.0, 100.0);
        const Vector back = decode(encode(x, space, 16));
        for (int j = 0; j < 5; ++j) CHECK(std::abs(back[j] - x[j]) <= bound);
    }
}

TEST_CASE("out-of-bounds positions are clamped before encoding") {
    const SearchSpace space = SearchSpace::box(2, 0.0, 1.0);
    const Chromosome c = encode(Vector{{-3.0, 42.0}}, space, 8);
    const Vector back = decode(c);
    CHECK(back == Vector{{0.0, 1.0}});
}

TEST_CASE("single-point crossover slices as illustrated") {
    const SearchSpace space = SearchSpace::box(1, 0.0, 1.0);
    Chromosome p1, p2;
    p1.bits_per_dim = p2.bits_per_dim = 16;
    p1.space = p2.space = &space;
    p1.bits.assign(16, 0);
    p2.bits.assign(16, 1);

    auto [c1, c2] = single_point_crossover(p1, p2, 5);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(c1.bits[i] == (i < 5 ? 0 : 1));  // five leftmost from p1, rest from p2
        CHECK(c2.bits[i] == (i < 5 ? 1 : 0));
    }

    CHECK_THROWS_AS(single_point_crossover(p1, p2, 0), std::invalid_argument);
    CHECK_THROWS_AS(single_point_crossover(p1, p2, 16), std::invalid_argument);
}

TEST_CASE("crossover of identical parents is the identity") {
    const SearchSpace space = SearchSpace::box(2, -1.0, 1.0);
    const Chromosome p = encode(Vector{{0.25, -0.75}}, space, 16);
    for (std::size_t k = 1; k < p.size(); ++k) {
        auto [c1, c2] = single_point_crossover(p, p, k);
        CHECK(c1.bits == p.bits);
        CHECK(c2.bits == p.bits);
    }
}

TEST_CASE("crossover conserves the per-locus bit multiset") {
    const SearchSpace space = SearchSpace::box(3, -5.0, 5.0);
    RngStream rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        Vector a(3), b(3);
        for (int j = 0; j < 3; ++j) {
            a[j] = rng.init().uniform(-5.0, 5.0);
            b[j] = rng.init().uniform(-5.0, 5.0);
        }
        const Chromosome p1 = encode(a, space, 16);
        const Chromosome p2 = encode(b, space, 16);
        auto [c1, c2] = single_point_crossover(p1, p2, rng.genetic());
        for (std::size_t i = 0; i < p1.size(); ++i)
            CHECK(static_cast<int>(p1.bits[i]) + p2.bits[i] == static_cast<int>(c1.bits[i]) + c2.bits[i]);
    }
}

TEST_CASE("linear crossover blends and conserves the parent sum") {
    const SearchSpace space = SearchSpace::box(2, -10.0, 10.0);
    const Vector p1{{2.0, -4.0}};
    const Vector p2{{6.0, 8.0}};

    auto [m1, m2] = linear_crossover(p1, p2, 0.5, space);
    CHECK(m1 == Vector{{4.0, 2.0}});
    CHECK(m2 == Vector{{4.0, 2.0}});

    auto [i1, i2] = linear_crossover(p1, p2, 1.0, space);
    CHECK(i1 == p1);
    CHECK(i2 == p2);

    RngStream rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = rng.genetic().uniform01();
        auto [c1, c2] = linear_crossover(p1, p2, alpha, space);
        const Vector total = c1 + c2;
        for (int j = 0; j < 2; ++j) CHECK(total[j] == doctest::Approx(p1[j] + p2[j]).epsilon(1e-12));
    }
}

TEST_CASE("mutation edge rates") {
    const SearchSpace space = SearchSpace::box(2, 0.0, 1.0);
    const Chromosome c = encode(Vector{{0.3, 0.9}}, space, 16);
    RngStream rng(41);

    const Chromosome same = mutate_bits(c, 0.0, rng.genetic());
    CHECK(same.bits == c.bits);

    const Chromosome flipped = mutate_bits(c, 1.0, rng.genetic());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(flipped.bits[i] == (c.bits[i] ^ 1));
}

TEST_CASE("mutation flip count follows the binomial expectation") {
    const SearchSpace space = SearchSpace::box(10, 0.0, 1.0);
    const Chromosome c = encode(Vector::Constant(10, 0.5), space, 16);  // L = 160
    const double rate = 0.001;
    const int trials = 100000;
    const double L = 160.0;

    RngStream rng(43);
    long long flips = 0;
    for (int i = 0; i < trials; ++i) {
        const Chromosome m = mutate_bits(c, rate, rng.genetic());
        for (std::size_t b = 0; b < c.size(); ++b) flips += (m.bits[b] != c.bits[b]);
    }
    const double mean = static_cast<double>(flips) / trials;
    const double sigma_mean = std::sqrt(L * rate * (1.0 - rate)) / std::sqrt(trials);
    CHECK(std::abs(mean - L * rate) <= 3.0 * sigma_mean);
}

TEST_CASE("tournament rules") {
    auto make = [](double best) {
        Agent a;
        a.position = a.best_position = Vector{{0.0}};
        a.fitness = a.best_fitness = best;
        return a;
    };
    const std::vector<Agent> pop = {make(1.0), make(9.0), make(9.0)};

    CHECK(tournament_pick(pop, 0, 1) == 0);
    CHECK(tournament_pick(pop, 1, 0) == 0);
    CHECK(tournament_pick(pop, 1, 2) == 1);  // tie goes to first drawn

    RngStream rng(47);
    std::vector<Agent> single = {make(1.0)};
    CHECK_THROWS_AS(tournament_select(single, rng.genetic()), std::invalid_argument);
}

TEST_CASE("tournament winners beat the population median in expectation") {
    RngStream rng(53);
    std::vector<Agent> pop(21);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop[i].position = pop[i].best_position = Vector{{0.0}};
        pop[i].fitness = pop[i].best_fitness = static_cast<double>(i);  // median is 10
    }
    double total = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        total += pop[tournament_select(pop, rng.genetic())].best_fitness;
    CHECK(total / draws < 10.0);
}

TEST_CASE("elite counting") {
    CHECK(elite_count(0.05, 20) == 1);
    CHECK(elite_count(0.05, 100) == 5);
    CHECK(elite_count(0.0, 20) == 0);
    CHECK(elite_count(0.26, 10) == 3);
}

TEST_CASE("run_ga keeps a non-increasing best-so-far history") {
    const BenchmarkFn* fn = find_benchmark("griewank");
    REQUIRE(fn != nullptr);
    const SearchSpace space = benchmark_space(*fn, 2);

    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        RunConfig config;
        config.algorithm = Algorithm::Ga;
        config.pop_size = 20;
        config.max_iters = 60;
        config.seed = seed;
        const RunResult result = run_ga(config, fn->fn, space);
        for (std::size_t t = 1; t < result.history.size(); ++t)
            CHECK(result.history[t] <= result.history[t - 1]);
        CHECK(result.gbest_value == result.history.back());
    }
}

TEST_CASE("run_ga reaches the expected quality band on griewank") {
    const BenchmarkFn* fn = find_benchmark("griewank");
    const SearchSpace space = benchmark_space(*fn, 2);
    double total = 0.0;
    const int trials = 10;
    for (int i = 0; i < trials; ++i) {
        RunConfig config;
        config.algorithm = Algorithm::Ga;
        config.pop_size = 20;
        config.max_iters = 100;
        config.seed = 100 + static_cast<std::uint64_t>(i);
        total += run_ga(config, fn->fn, space).gbest_value;
    }
    CHECK(total / trials <= 1.0);
}

TEST_CASE("binary-crossover GA variant also runs clean") {
    const BenchmarkFn* fn = find_benchmark("griewank");
    const SearchSpace space = benchmark_space(*fn, 2);
    RunConfig config;
    config.algorithm = Algorithm::Ga;
    config.pop_size = 10;
    config.max_iters = 30;
    config.seed = 9;
    config.ga.crossover = CrossoverKind::SinglePointBinary;
    const RunResult result = run_ga(config, fn->fn, space);
    for (std::size_t t = 1; t < result.history.size(); ++t)
        CHECK(result.history[t] <= result.history[t - 1]);
}
