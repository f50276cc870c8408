#pragma once

#include <cstdint>

namespace orient {

/// Position in a counter-based random stream.
///
/// Every draw is a pure function of (seed, stream, counter, lane), so streams
/// can be handed to independent workers without sharing any generator state.
/// `counter` selects a sample, `lane` selects a coordinate inside that sample
/// (for orientations, the edge index).
struct StreamHandle {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;

    [[nodiscard]] std::uint64_t word(std::uint64_t lane) const noexcept;

    // Uniform in [0, 1) with 53 random bits.
    [[nodiscard]] double uniform(std::uint64_t lane) const noexcept;

    [[nodiscard]] StreamHandle at(std::uint64_t new_counter) const noexcept {
        return StreamHandle{seed, stream, new_counter};
    }
};

} // namespace orient
