#include "adapop/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adapop {

namespace {

constexpr std::uint64_t kSaturation = std::uint64_t{1} << 62;

std::uint64_t islands_for(double success)
{
    if (!(success > 0.0) || success > 1.0)
        throw ConfigError("level success probability must lie in (0, 1]");
    const double need = std::ceil(1.0 / success);
    if (need >= static_cast<double>(kSaturation))
        return kSaturation;
    return static_cast<std::uint64_t>(need);
}

} // namespace

std::string_view to_string(SchemeKind kind) noexcept
{
    switch (kind) {
    case SchemeKind::A: return "a";
    case SchemeKind::B: return "b";
    case SchemeKind::JdW: return "jdw";
    case SchemeKind::Additive: return "additive";
    case SchemeKind::NonOblivious: return "nonoblivious";
    case SchemeKind::Constant: return "constant";
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view name) noexcept
{
    for (auto kind : {SchemeKind::A, SchemeKind::B, SchemeKind::JdW, SchemeKind::Additive,
                      SchemeKind::NonOblivious, SchemeKind::Constant})
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

void UpdatePolicy::validate() const
{
    if (!(base > 1.0) || !std::isfinite(base))
        throw ConfigError("scheme base must be a finite value > 1");
    if (mu_min < 1)
        throw ConfigError("mu_min must be at least 1");
    if (mu_max && *mu_max < mu_min)
        throw ConfigError("mu_max must be at least mu_min");
}

std::uint64_t UpdatePolicy::clamp(std::uint64_t mu) const noexcept
{
    mu = std::max(mu, mu_min);
    if (mu_max)
        mu = std::min(mu, *mu_max);
    return mu;
}

std::uint64_t grow(std::uint64_t mu, double base) noexcept
{
    if (mu >= kSaturation / 4)
        return kSaturation;
    if (base == 2.0)
        return 2 * mu;
    const long double scaled = std::floor(static_cast<long double>(base) * mu + 0.5L);
    if (scaled >= static_cast<long double>(kSaturation))
        return kSaturation;
    return std::max(mu + 1, static_cast<std::uint64_t>(scaled));
}

std::uint64_t shrink(std::uint64_t mu, double base) noexcept
{
    if (base == 2.0)
        return mu / 2;
    return static_cast<std::uint64_t>(std::floor(static_cast<long double>(mu) / base));
}

std::uint64_t update_size(const UpdatePolicy& policy, std::uint64_t mu, const GenerationOutcome& outcome,
                          std::optional<double> level_success)
{
    if (outcome.improved != (outcome.num_successes >= 1))
        throw ConfigError("generation outcome is inconsistent: improved must hold iff num_successes >= 1");
    std::uint64_t next = mu;
    switch (policy.kind) {
    case SchemeKind::A:
        next = outcome.improved ? 1 : grow(mu, policy.base);
        break;
    case SchemeKind::B:
        next = outcome.improved ? shrink(mu, policy.base) : grow(mu, policy.base);
        break;
    case SchemeKind::JdW:
        next = outcome.improved ? mu / outcome.num_successes : grow(mu, policy.base);
        break;
    case SchemeKind::Additive:
        next = outcome.improved ? 1 : std::min(mu + 1, kSaturation);
        break;
    case SchemeKind::NonOblivious:
        if (!level_success)
            throw ConfigError("the non-oblivious scheme needs the success probability of the current level");
        next = islands_for(*level_success);
        break;
    case SchemeKind::Constant:
        break;
    }
    return policy.clamp(next);
}

std::uint64_t initial_size(const UpdatePolicy& policy, std::optional<double> level_success)
{
    if (policy.kind == SchemeKind::NonOblivious) {
        if (!level_success)
            throw ConfigError("the non-oblivious scheme needs the success probability of the current level");
        return policy.clamp(islands_for(*level_success));
    }
    return policy.clamp(1);
}

} // namespace adapop
