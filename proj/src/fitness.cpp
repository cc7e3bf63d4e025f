#include "adapop/fitness.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace adapop {

namespace {

std::size_t count_ones(std::span<const std::uint64_t> words) noexcept
{
    std::size_t count = 0;
    for (auto w : words)
        count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

std::size_t prefix_ones(std::span<const std::uint64_t> words, std::size_t n) noexcept
{
    std::size_t count = 0;
    for (auto w : words) {
        if (w != ~std::uint64_t{0}) {
            count += static_cast<std::size_t>(std::countr_one(w));
            break;
        }
        count += 64;
    }
    return std::min(count, n);
}

} // namespace

std::string_view to_string(FunctionKind kind) noexcept
{
    switch (kind) {
    case FunctionKind::OneMax: return "onemax";
    case FunctionKind::LeadingOnes: return "leadingones";
    case FunctionKind::Jump: return "jump";
    case FunctionKind::Ridge: return "ridge";
    }
    return "unknown";
}

std::optional<FunctionKind> parse_function_kind(std::string_view name) noexcept
{
    if (name == "onemax")
        return FunctionKind::OneMax;
    if (name == "leadingones")
        return FunctionKind::LeadingOnes;
    if (name == "jump")
        return FunctionKind::Jump;
    if (name == "ridge")
        return FunctionKind::Ridge;
    return std::nullopt;
}

FitnessFunction::FitnessFunction(FunctionKind kind, std::size_t n, std::size_t k)
    : kind_(kind), n_(n), k_(kind == FunctionKind::Jump ? k : 0)
{
    if (n == 0)
        throw std::invalid_argument("problem size n must be positive");
    if (kind == FunctionKind::Jump && (k < 1 || k > n))
        throw std::invalid_argument("jump parameter k must satisfy 1 <= k <= n (got k=" + std::to_string(k)
                                    + ", n=" + std::to_string(n) + ")");
}

std::int64_t FitnessFunction::evaluate(const Genotype& x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("genotype length " + std::to_string(x.size())
                                    + " does not match problem size " + std::to_string(n_));
    return evaluate(x.words());
}

std::int64_t FitnessFunction::evaluate(std::span<const std::uint64_t> words) const noexcept
{
    const auto n = static_cast<std::int64_t>(n_);
    switch (kind_) {
    case FunctionKind::OneMax:
        return static_cast<std::int64_t>(count_ones(words));
    case FunctionKind::LeadingOnes:
        return static_cast<std::int64_t>(prefix_ones(words, n_));
    case FunctionKind::Jump: {
        const auto ones = static_cast<std::int64_t>(count_ones(words));
        const auto k = static_cast<std::int64_t>(k_);
        if (ones <= n - k || ones == n)
            return k + ones;
        return n - ones;
    }
    case FunctionKind::Ridge: {
        const auto ones = count_ones(words);
        if (prefix_ones(words, n_) == ones)
            return n + static_cast<std::int64_t>(ones);
        return n - static_cast<std::int64_t>(ones);
    }
    }
    return 0;
}

std::int64_t FitnessFunction::optimum_value() const noexcept
{
    const auto n = static_cast<std::int64_t>(n_);
    switch (kind_) {
    case FunctionKind::OneMax:
    case FunctionKind::LeadingOnes: return n;
    case FunctionKind::Jump: return n + static_cast<std::int64_t>(k_);
    case FunctionKind::Ridge: return 2 * n;
    }
    return n;
}

// OneMax/LeadingOnes take values 0..n; Jump takes 1..n plus n+k; Ridge takes 1..2n.
std::size_t FitnessFunction::level_count() const noexcept
{
    switch (kind_) {
    case FunctionKind::OneMax:
    case FunctionKind::LeadingOnes:
    case FunctionKind::Jump: return n_ + 1;
    case FunctionKind::Ridge: return 2 * n_;
    }
    return n_ + 1;
}

std::size_t FitnessFunction::level_of_value(std::int64_t value) const noexcept
{
    switch (kind_) {
    case FunctionKind::OneMax:
    case FunctionKind::LeadingOnes: return static_cast<std::size_t>(value) + 1;
    case FunctionKind::Jump:
        return value == optimum_value() ? n_ + 1 : static_cast<std::size_t>(value);
    case FunctionKind::Ridge: return static_cast<std::size_t>(value);
    }
    return 1;
}

} // namespace adapop
