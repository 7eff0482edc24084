#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace egonet::rng {

// SplitMix64 step; used both as a generator seeder and as a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-style seed derivation: fold a list of indices into a base seed.
// Cells of a simulation sweep can run in any order with identical streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t p : parts) s = splitmix64(s ^ splitmix64(p));
    return s;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

inline double uniform01(std::mt19937_64& eng) {
    // 53-bit mantissa uniform in [0,1); independent of library distribution quirks
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Beta(1,b) via inverse CDF: F(x) = 1 - (1-x)^b.
inline double beta_1_b(std::mt19937_64& eng, double b) {
    double u = uniform01(eng);
    return 1.0 - std::pow(1.0 - u, 1.0 / b);
}

}  // namespace egonet::rng
