#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adapop {

/// Population-size update rules.
///
///   A            fail: grow by base      success: reset to 1
///   B            fail: grow by base      success: divide by base (floor)
///   JdW          fail: grow by base      success: divide by the number of successes (floor)
///   Additive     fail: mu + 1            success: reset to 1
///   NonOblivious always ceil(1/s) for the success probability s of the current level
///   Constant     never changes
///
/// Every result is clamped to [mu_min, mu_max].
enum class SchemeKind { A, B, JdW, Additive, NonOblivious, Constant };

std::string_view to_string(SchemeKind kind) noexcept;
std::optional<SchemeKind> parse_scheme_kind(std::string_view name) noexcept;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct UpdatePolicy {
    SchemeKind kind = SchemeKind::B;
    double base = 2.0;
    std::optional<std::uint64_t> mu_max;
    std::uint64_t mu_min = 1;

    /// Throws ConfigError unless base > 1, mu_min >= 1 and mu_max >= mu_min.
    void validate() const;

    /// NonOblivious reads the per-level success probabilities of the function;
    /// it is not a black-box scheme.
    bool needs_level_success() const noexcept { return kind == SchemeKind::NonOblivious; }

    std::uint64_t clamp(std::uint64_t mu) const noexcept;

    friend bool operator==(const UpdatePolicy&, const UpdatePolicy&) = default;
};

struct GenerationOutcome {
    bool improved = false;
    /// Offspring strictly better than the best fitness before the generation.
    std::uint64_t num_successes = 0;
    std::size_t new_level = 1;
};

/// Size of the next generation. `level_success` is the success probability of
/// the level reached (NonOblivious only).
/// Throws ConfigError when NonOblivious is missing `level_success` or the
/// outcome is inconsistent (improved without successes or vice versa).
std::uint64_t update_size(const UpdatePolicy& policy, std::uint64_t mu, const GenerationOutcome& outcome,
                          std::optional<double> level_success = std::nullopt);

/// Size of the first generation: 1 (clamped), or ceil(1/s) of the initial level for NonOblivious.
std::uint64_t initial_size(const UpdatePolicy& policy, std::optional<double> level_success = std::nullopt);

/// max(mu + 1, round_half_up(base * mu)), saturating. Exactly 2*mu for base 2.
std::uint64_t grow(std::uint64_t mu, double base) noexcept;
/// floor(mu / base).
std::uint64_t shrink(std::uint64_t mu, double base) noexcept;

} // namespace adapop
