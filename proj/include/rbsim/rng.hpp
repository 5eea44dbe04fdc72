#pragma once

#include <cstdint>
#include <random>

namespace rbsim {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Mixes a master seed with stream coordinates, so each (m, sequence)
/// pair gets its own reproducible RNG stream regardless of thread count.
inline Rng make_stream_rng(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = splitmix64(master ^ splitmix64(a ^ splitmix64(b)));
    return Rng(s);
}

}  // namespace rbsim
