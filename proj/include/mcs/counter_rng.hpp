#pragma once

#include <cstdint>

namespace mcs {

/// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based generator: the n-th draw of a stream is a pure function of
/// (key, n), so any draw can be reproduced without replaying the stream and
/// streams can be handed to threads in any order.
class CounterRng {
public:
    constexpr explicit CounterRng(std::uint64_t key) : key_(key) {}

    /// Independent stream for (seed, a, b), e.g. (seed, theta index, sample index).
    static constexpr CounterRng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        return CounterRng(mix64(mix64(mix64(seed) ^ a) + 0x632BE59BD9B4E019ULL * (b + 1)));
    }

    [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ + 0xD1B54A32D192ED03ULL * (counter + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    [[nodiscard]] constexpr double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Fair coin: +1 or -1.
    [[nodiscard]] constexpr double sign(std::uint64_t counter) const {
        return (bits(counter) >> 63) != 0 ? 1.0 : -1.0;
    }

    [[nodiscard]] constexpr std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

}  // namespace mcs
