#include "adapop/genotype.hpp"

#include <bit>
#include <stdexcept>

namespace adapop {

Genotype::Genotype(std::size_t n) : n_(n), words_(word_count(n), 0)
{
    if (n == 0)
        throw std::invalid_argument("genotype length must be positive");
}

Genotype Genotype::ones(std::size_t n)
{
    Genotype g(n);
    for (auto& w : g.words_)
        w = ~std::uint64_t{0};
    g.words_.back() &= last_word_mask(n);
    return g;
}

Genotype Genotype::random(std::size_t n, MutationRng& rng)
{
    Genotype g(n);
    for (auto& w : g.words_)
        w = rng();
    g.words_.back() &= last_word_mask(n);
    return g;
}

Genotype Genotype::from_string(std::string_view bits)
{
    Genotype g(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            g.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("genotype string may only contain '0' and '1'");
    }
    return g;
}

void Genotype::set(std::size_t i, bool value) noexcept
{
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value)
        words_[i >> 6] |= bit;
    else
        words_[i >> 6] &= ~bit;
}

std::size_t Genotype::popcount() const noexcept
{
    std::size_t count = 0;
    for (auto w : words_)
        count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

std::size_t Genotype::hamming_distance(const Genotype& other) const
{
    if (other.n_ != n_)
        throw std::invalid_argument("hamming distance of genotypes with different lengths");
    std::size_t d = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        d += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
    return d;
}

std::string Genotype::to_string() const
{
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if ((*this)[i])
            s[i] = '1';
    return s;
}

} // namespace adapop
