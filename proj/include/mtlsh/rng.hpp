#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mtlsh::detail {

// mt19937_64's word stream is pinned by the standard, but the stdlib
// distributions and std::shuffle are implementation-defined, so everything
// that influences artifact bytes draws through the helpers below instead.

/// Uniform draw from [0, bound) by rejection sampling raw engine words.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t word;
    do {
        word = rng();
    } while (word >= limit);
    return word % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Deterministic Fisher–Yates shuffle (replacement for std::shuffle).
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace mtlsh::detail
