#pragma once

#include <cstdint>

namespace pbdm {

/// PCG32 (O'Neill's pcg32, the XSH-RR 64/32 member). Chosen for exact
/// cross-run reproducibility and cheap independent substreams: every
/// (seed, stream) pair selects a distinct sequence, so Monte Carlo work
/// can be split over fixed stream indices and merged in a fixed order
/// with results independent of how many workers ran.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t stream)
        : state_(0), inc_((stream << 1u) | 1u) {
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const std::uint32_t xorshifted =
            static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    /// Uniform double in [0,1) with 53 random bits.
    double next_double() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace pbdm
