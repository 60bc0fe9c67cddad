#pragma once

#include <cstdint>
#include <limits>

namespace bms {

/// SplitMix64 (Steele, Lea, Flood). Used to expand a 64-bit seed into
/// xoshiro state and to derive per-index batch seeds.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Seed for matrix `index` of a batch: first SplitMix64 output from
/// state master_seed + index.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return SplitMix64(master_seed + index).next();
}

/// xoshiro256** 1.0 (Blackman, Vigna), state filled by four SplitMix64
/// outputs of the user seed. Bit-reproducible on every platform.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit constexpr RngStream(std::uint64_t seed) noexcept : seed_(seed) {
        SplitMix64 expand(seed);
        for (auto& word : state_) {
            word = expand.next();
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr std::uint64_t seed() const noexcept { return seed_; }

    constexpr result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound), bound >= 1. Rejects raw draws below
    /// 2^64 mod bound so that the final modulo is unbiased; always consumes
    /// at least one draw.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t state_[4]{};
};

} // namespace bms
