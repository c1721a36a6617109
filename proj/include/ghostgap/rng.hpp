#pragma once

#include <cstdint>

namespace ghostgap {

namespace detail {

// SplitMix64 finalizer (Steele, Lea, Flood). Full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Counter-derived random stream: the state is a pure function of
// (seed, stream), so stream i of a run is identical no matter which thread
// draws it or in which order streams are consumed.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(detail::mix64(seed) ^ detail::mix64(stream * 0x9E3779B97F4A7C15ULL
                                                     + 0x632BE59BD9B4E019ULL)) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound) by rejection. bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t r;
        do {
            r = next();
        } while (r < min);
        return r % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace ghostgap
