#pragma once

#include <cstdint>
#include <limits>

namespace adapop {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Child seed number `index` of `seed`. Used for per-trial and per-generation keys.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + (index + 1) * kGoldenGamma);
}

/// Counter-based random stream.
///
/// Draw number i of the stream (seed, stream_id) is a pure function of the
/// triple, so results do not depend on which thread evaluates an island or in
/// which order. Satisfies UniformRandomBitGenerator.
class MutationRng {
public:
    using result_type = std::uint64_t;

    MutationRng(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return at(counter_++); }

    /// Value at an absolute draw index; does not advance the stream.
    result_type at(std::uint64_t index) const noexcept
    {
        return mix64(key_ + (index + 1) * kGoldenGamma);
    }

    /// Uniform integer in [0, range). Unbiased (Lemire's multiply-and-reject).
    std::uint64_t bounded(std::uint64_t range) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// True with probability p, resolved on a 2^-64 grid.
    bool bernoulli(double p) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Scales a probability to a 64-bit threshold t such that P(u < t) = p for uniform u.
/// Returns max() for p >= 1, which callers treat as "always".
std::uint64_t probability_threshold(double p) noexcept;

} // namespace adapop
