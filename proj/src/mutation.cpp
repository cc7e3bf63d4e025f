#include "adapop/mutation.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace adapop {

StandardMutation::StandardMutation(std::size_t n) : n_(n)
{
    if (n == 0)
        throw std::invalid_argument("mutation needs a positive length");
    if (n == 1) {
        cdf_thresholds_ = {0, std::numeric_limits<std::uint64_t>::max()};
        return;
    }
    const double q = 1.0 - 1.0 / static_cast<double>(n);
    double pmf = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        pmf *= q;
    double cdf = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        cdf += pmf;
        const std::uint64_t t = probability_threshold(cdf);
        cdf_thresholds_.push_back(t);
        if (t == std::numeric_limits<std::uint64_t>::max() || pmf == 0.0)
            break;
        pmf = pmf * static_cast<double>(n - j) / (static_cast<double>(j + 1) * static_cast<double>(n - 1));
    }
}

std::size_t StandardMutation::sample_flip_count(MutationRng& rng) const noexcept
{
    const std::uint64_t u = rng();
    for (std::size_t j = 0; j < cdf_thresholds_.size(); ++j)
        if (u < cdf_thresholds_[j])
            return j;
    return std::min(cdf_thresholds_.size(), n_);
}

std::size_t StandardMutation::apply(std::span<std::uint64_t> words, MutationRng& rng) const
{
    const std::size_t flips = sample_flip_count(rng);
    if (flips == 0)
        return 0;
    // Floyd's algorithm: a uniform `flips`-subset of [0, n) with exactly `flips` draws.
    std::array<std::size_t, 32> small{};
    std::vector<std::size_t> large;
    std::size_t* chosen = small.data();
    if (flips > small.size()) {
        large.resize(flips);
        chosen = large.data();
    }
    std::size_t count = 0;
    for (std::size_t j = n_ - flips; j < n_; ++j) {
        const auto t = static_cast<std::size_t>(rng.bounded(j + 1));
        bool seen = false;
        for (std::size_t c = 0; c < count; ++c)
            if (chosen[c] == t) {
                seen = true;
                break;
            }
        chosen[count++] = seen ? j : t;
    }
    for (std::size_t c = 0; c < count; ++c)
        words[chosen[c] >> 6] ^= std::uint64_t{1} << (chosen[c] & 63);
    return flips;
}

Genotype StandardMutation::operator()(const Genotype& parent, MutationRng& rng) const
{
    if (parent.size() != n_)
        throw std::invalid_argument("mutation operator built for a different length");
    Genotype child = parent;
    apply(child.words(), rng);
    return child;
}

Genotype standard_mutation(const Genotype& parent, MutationRng& rng)
{
    return StandardMutation(parent.size())(parent, rng);
}

} // namespace adapop
