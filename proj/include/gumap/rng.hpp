#pragma once

#include <cstdint>
#include <random>

namespace gumap {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent stream for one (seed, stream) pair, e.g. one per source vertex,
/// so per-vertex work does not depend on visiting order.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

// Stream tags keep the different consumers of one run seed apart.
namespace stream {
inline constexpr std::uint64_t kKnnTies = 0x1000000000ULL;
inline constexpr std::uint64_t kSpectral = 0x2000000000ULL;
inline constexpr std::uint64_t kOptimizer = 0x3000000000ULL;
inline constexpr std::uint64_t kJitter = 0x4000000000ULL;
inline constexpr std::uint64_t kSketch = 0x5000000000ULL;
}  // namespace stream

/// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace gumap
