#pragma once

#include <cstdint>
#include <random>

namespace physector {

// SplitMix64 finalizer. Used both as a bit mixer and to derive independent
// per-task seeds from a master seed (seed_i = split_seed(master, i)).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) + index);
}

// Uniform double in the open interval (0, 1), identical on every platform
// for a given engine state.
inline double uniform_open01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace physector
