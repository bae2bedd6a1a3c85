#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gego {

/// One deterministic draw sequence. Draws are produced by a fixed recipe
/// (no std::uniform_*_distribution), so a given seed yields the same
/// sequence on every standard library.
class SubStream {
public:
    explicit SubStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Uniform index in [0, n). Consumes exactly one draw.
    std::size_t index(std::size_t n) {
        std::size_t k = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Seed-derived collection of independent sub-streams. The movement and
/// genetic streams advance independently, so disabling the genetic phase
/// leaves movement draws untouched.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed)
        : init_(derive(seed, 0x1)), movement_(derive(seed, 0x2)), genetic_(derive(seed, 0x3)) {}

    SubStream& init() { return init_; }
    SubStream& movement() { return movement_; }
    SubStream& genetic() { return genetic_; }

private:
    // splitmix64; decorrelates the per-stream seeds
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t z = seed + tag * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    SubStream init_;
    SubStream movement_;
    SubStream genetic_;
};

}  // namespace gego
