#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "adapop/genotype.hpp"

namespace adapop {

enum class FunctionKind { OneMax, LeadingOnes, Jump, Ridge };

std::string_view to_string(FunctionKind kind) noexcept;
std::optional<FunctionKind> parse_function_kind(std::string_view name) noexcept;

/// Pseudo-Boolean benchmark with its canonical fitness-level partition
/// (one level per attainable fitness value, ordered by value).
///
/// Values:
///   OneMax       popcount(x)
///   LeadingOnes  length of the all-ones prefix
///   Jump         k + |x|_1 if |x|_1 <= n-k or x = 1^n, else n - |x|_1
///   Ridge        n + i if x = 1^i 0^(n-i), else n - |x|_1
class FitnessFunction {
public:
    /// Throws std::invalid_argument for n = 0, or k outside [1, n] for Jump.
    FitnessFunction(FunctionKind kind, std::size_t n, std::size_t k = 0);

    static FitnessFunction one_max(std::size_t n) { return {FunctionKind::OneMax, n}; }
    static FitnessFunction leading_ones(std::size_t n) { return {FunctionKind::LeadingOnes, n}; }
    static FitnessFunction jump(std::size_t n, std::size_t k) { return {FunctionKind::Jump, n, k}; }
    static FitnessFunction ridge(std::size_t n) { return {FunctionKind::Ridge, n}; }

    FunctionKind kind() const noexcept { return kind_; }
    std::size_t n() const noexcept { return n_; }
    /// Jump gap width; 0 for the other kinds.
    std::size_t k() const noexcept { return k_; }

    /// Throws std::invalid_argument on length mismatch.
    std::int64_t evaluate(const Genotype& x) const;
    /// Unchecked hot path: `words` must hold word_count(n) words with zero padding.
    std::int64_t evaluate(std::span<const std::uint64_t> words) const noexcept;

    std::int64_t optimum_value() const noexcept;
    bool is_optimum(const Genotype& x) const { return evaluate(x) == optimum_value(); }
    bool is_optimum_value(std::int64_t value) const noexcept { return value == optimum_value(); }

    /// Number of levels m of the canonical partition.
    std::size_t level_count() const noexcept;
    /// Level in [1, m] holding fitness value `value`.
    std::size_t level_of_value(std::int64_t value) const noexcept;
    std::size_t level_index(const Genotype& x) const { return level_of_value(evaluate(x)); }

    friend bool operator==(const FitnessFunction&, const FitnessFunction&) = default;

private:
    FunctionKind kind_;
    std::size_t n_;
    std::size_t k_;
};

} // namespace adapop
