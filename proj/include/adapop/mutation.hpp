#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adapop/genotype.hpp"
#include "adapop/rng.hpp"

namespace adapop {

/// Standard bit mutation: every bit flips independently with probability 1/n.
///
/// Sampled as K ~ Bin(n, 1/n) followed by a uniform K-subset of positions,
/// which has exactly the per-bit law above and costs O(1 + K) draws. The
/// binomial CDF table is built with IEEE +,*,/ only, so draws are identical on
/// every conforming platform.
class StandardMutation {
public:
    explicit StandardMutation(std::size_t n);

    std::size_t n() const noexcept { return n_; }

    /// Mutates `words` (an n-bit string) in place; returns the number of flipped bits.
    std::size_t apply(std::span<std::uint64_t> words, MutationRng& rng) const;

    /// Returns a mutated copy; the parent is left untouched.
    Genotype operator()(const Genotype& parent, MutationRng& rng) const;

private:
    std::size_t sample_flip_count(MutationRng& rng) const noexcept;

    std::size_t n_;
    std::vector<std::uint64_t> cdf_thresholds_; // P(K <= j) * 2^64
};

Genotype standard_mutation(const Genotype& parent, MutationRng& rng);

} // namespace adapop
