#pragma once

#include <cstdint>

namespace pgw {

/// Counter-based deterministic generator. Every draw is keyed by
/// (seed, draw index), so partitioned consumers can reproduce any draw
/// without replaying the stream. splitmix64 finalizer underneath.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t draw) : state_(key(seed, draw)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound), bound > 0. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

private:
    static std::uint64_t key(std::uint64_t seed, std::uint64_t draw) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (draw + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace pgw
