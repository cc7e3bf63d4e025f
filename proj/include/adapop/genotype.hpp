#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adapop/rng.hpp"

namespace adapop {

constexpr std::size_t word_count(std::size_t n) noexcept { return (n + 63) / 64; }

/// Fixed-length bit string. Bit i (0-based) is x_{i+1}; it lives in word i/64 at
/// position i%64. Padding bits of the last word are always zero.
class Genotype {
public:
    explicit Genotype(std::size_t n);

    static Genotype ones(std::size_t n);
    static Genotype random(std::size_t n, MutationRng& rng);
    /// Parses "1101"-style strings; x_1 is the leftmost character.
    static Genotype from_string(std::string_view bits);

    std::size_t size() const noexcept { return n_; }

    bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value) noexcept;
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    std::size_t popcount() const noexcept;
    std::size_t hamming_distance(const Genotype& other) const;
    std::string to_string() const;

    friend bool operator==(const Genotype&, const Genotype&) = default;

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

/// Mask of the valid bits in the last word of an n-bit string.
constexpr std::uint64_t last_word_mask(std::size_t n) noexcept
{
    return (n % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n % 64)) - 1);
}

} // namespace adapop
