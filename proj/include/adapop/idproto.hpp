#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adapop/rng.hpp"

namespace adapop::idproto {

/// Processor ID: a bit string of up to 63 bits. Appended bits go to the low end,
/// so `bits` read as a binary number spells the ID left to right.
struct ProcessorId {
    std::uint8_t length = 0;
    std::uint64_t bits = 0;

    ProcessorId append(bool bit) const;
    ProcessorId drop_last() const;
    bool last_bit() const noexcept { return bits & 1U; }
    /// "" for the root, otherwise e.g. "01".
    std::string to_string() const;

    friend bool operator==(const ProcessorId&, const ProcessorId&) = default;
    friend auto operator<=>(const ProcessorId&, const ProcessorId&) = default;
};

inline constexpr std::size_t kMaxIdLength = 63;

enum class Outcome { Failure, Success };

/// The set of active processors after `step` synchronous rounds.
class Cluster {
public:
    /// A single processor with the empty ID.
    Cluster();

    const std::vector<ProcessorId>& active() const noexcept { return active_; }
    std::size_t size() const noexcept { return active_.size(); }
    std::size_t step() const noexcept { return step_; }
    /// Common ID length; meaningful while invariants hold.
    std::size_t id_length() const noexcept { return active_.empty() ? 0 : active_.front().length; }

    /// Unsuccessful round: every processor activates a partner; the old one
    /// appends 0, the partner appends 1. Throws std::length_error past 63 bits.
    Cluster expand() const;
    /// Successful round: IDs ending in 1 shut down, the rest drop their last
    /// bit. No-op on the lone root processor.
    Cluster contract() const;
    Cluster apply(Outcome outcome) const { return outcome == Outcome::Success ? contract() : expand(); }

    /// Empty when every ID has the same length l, IDs are pairwise distinct and
    /// all 2^l strings of length l are present; otherwise a description.
    std::optional<std::string> invariant_violation() const;

private:
    std::vector<ProcessorId> active_;
    std::size_t step_ = 0;
};

struct TrajectoryPoint {
    std::size_t step = 0;
    std::size_t size = 0;
    std::size_t id_length = 0;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct ReplayResult {
    std::vector<TrajectoryPoint> trajectory; // one point per step, starting with step 0
    std::optional<std::string> violation;    // first invariant violation, if any
};

/// Runs the protocol over `outcomes`, checking invariants after every step.
ReplayResult replay(const std::vector<Outcome>& outcomes);

/// Sizes only: replay(outcomes).trajectory[i].size.
std::vector<std::size_t> replay_sizes(const std::vector<Outcome>& outcomes);

/// Parses "ffs" / "FFS" / "001" (f or 0 = failure, s or 1 = success); whitespace ignored.
/// Throws std::invalid_argument on any other character.
std::vector<Outcome> parse_trace(std::string_view text);

/// Fair coin outcomes, except that a failure which would push the ID length past
/// `max_depth` becomes a success, keeping the cluster within 2^max_depth processors.
std::vector<Outcome> random_outcomes(std::size_t steps, std::size_t max_depth, MutationRng& rng);

nlohmann::json to_json(const TrajectoryPoint& point);

} // namespace adapop::idproto
