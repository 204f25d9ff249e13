#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gossiplearn {

// All randomness in the library flows through mt19937_64 (whose output
// sequence is fixed by the standard) plus the hand-rolled distributions
// below, so a given seed produces the same stream on every platform.
using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Named seed streams derived from one master seed. Keeping the streams
// independent means changing one experiment dimension (say, the gossip
// fanout) cannot perturb another (batch shuffling, weight init).
enum class SeedStream : std::uint64_t {
    NodeInit = 1,   // per-node weight initialization
    NodeData = 2,   // per-node batch shuffling
    Network = 3,    // drop decisions in the simulated fabric
    PeerSelect = 4, // random peer choice in the update phase
    Split = 5,      // dataset partitioning
    Synthetic = 6,  // synthetic dataset generation
    Sweep = 7,      // per-run seeds inside a parameter sweep
};

constexpr std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                    std::uint64_t index = 0) {
    const auto s = static_cast<std::uint64_t>(stream);
    return mix64(master ^ mix64((s << 32) ^ index));
}

// Uniform double in [0, 1).
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform_in(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

// Uniform integer in [0, n). n must be positive. Lemire multiply-shift
// with rejection, so the result is unbiased.
inline std::uint64_t bounded_uint(Rng& rng, std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (lo < threshold) {
            m = static_cast<unsigned __int128>(rng()) * n;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

// Standard normal via Box-Muller (one value per call; the sibling value is
// discarded to keep the stream position easy to reason about).
inline double gauss(Rng& rng, double mean = 0.0, double sigma = 1.0) {
    const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53; // (0, 1]
    const double u2 = uniform_double(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(bounded_uint(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

inline std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    shuffle(idx, rng);
    return idx;
}

} // namespace gossiplearn
