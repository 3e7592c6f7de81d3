#pragma once

#include <cstdint>
#include <random>

#include "wprs/core.hpp"

namespace wprs {
namespace rng {

// SplitMix64 finalizer: bijective avalanche mix used to derive well-separated
// substream seeds from (master seed, chunk index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t chunk_index) {
    return splitmix64(splitmix64(master_seed) ^ (0x9E3779B97F4A7C15ull * (chunk_index + 1)));
}

// One deterministic random stream per work chunk.  Seeding depends only on
// (master seed, chunk index), never on which thread runs the chunk, so any
// worker count reproduces identical draws.  std::mt19937_64 has a fully
// specified algorithm, making streams portable across platforms.
class ChunkStream {
public:
    ChunkStream(std::uint64_t master_seed, std::uint64_t chunk_index)
        : eng_(substream_seed(master_seed, chunk_index)) {}

    // Uniform on [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Exponential with rate lambda via inversion.  -log1p(-u) stays accurate
    // for small u and is finite for every u in [0,1).
    double exponential(double lambda) {
        return -std::log1p(-uniform01()) / lambda;
    }

    // Uniform integer in [0, n).  u < 1 guarantees the product stays below n
    // for any n representable in 52 bits.
    std::size_t uniform_index(std::size_t n) {
        std::size_t idx = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return idx < n ? idx : n - 1;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace rng
} // namespace wprs
