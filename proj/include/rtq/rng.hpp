#pragma once

#include <cmath>
#include <cstdint>

namespace rtq {

// SplitMix64: tiny splittable generator. Streams derived with derive_stream
// are the generator's own golden-gamma sequence split, so replication r /
// role k pairs get decorrelated streams from one master seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1); 53-bit mantissa, never reaches 1.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate > 0; log1p keeps small draws exact.
    double exp_time(double rate) { return -std::log1p(-uniform01()) / rate; }
};

inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace rtq
