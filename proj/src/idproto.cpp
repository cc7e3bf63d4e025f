#include "adapop/idproto.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace adapop::idproto {

ProcessorId ProcessorId::append(bool bit) const
{
    if (length >= kMaxIdLength)
        throw std::length_error("processor ID would exceed 63 bits");
    return {static_cast<std::uint8_t>(length + 1), (bits << 1) | (bit ? 1U : 0U)};
}

ProcessorId ProcessorId::drop_last() const
{
    if (length == 0)
        throw std::logic_error("cannot drop a bit from the empty ID");
    return {static_cast<std::uint8_t>(length - 1), bits >> 1};
}

std::string ProcessorId::to_string() const
{
    std::string s(length, '0');
    for (std::size_t i = 0; i < length; ++i)
        if ((bits >> (length - 1 - i)) & 1U)
            s[i] = '1';
    return s;
}

Cluster::Cluster() : active_{ProcessorId{}} {}

Cluster Cluster::expand() const
{
    Cluster next;
    next.step_ = step_ + 1;
    next.active_.clear();
    next.active_.reserve(2 * active_.size());
    for (const auto& id : active_)
        next.active_.push_back(id.append(false));
    for (const auto& id : active_)
        next.active_.push_back(id.append(true));
    return next;
}

Cluster Cluster::contract() const
{
    Cluster next;
    next.step_ = step_ + 1;
    if (active_.size() == 1 && active_.front().length == 0)
        return next;
    next.active_.clear();
    next.active_.reserve(active_.size() / 2);
    for (const auto& id : active_)
        if (!id.last_bit())
            next.active_.push_back(id.drop_last());
    return next;
}

std::optional<std::string> Cluster::invariant_violation() const
{
    if (active_.empty())
        return "no active processors";
    const std::size_t length = active_.front().length;
    for (const auto& id : active_)
        if (id.length != length)
            return "IDs of different lengths (" + std::to_string(length) + " and " + std::to_string(id.length) + ")";
    if (length >= 64 || active_.size() != (std::size_t{1} << length))
        return "expected 2^" + std::to_string(length) + " processors, found " + std::to_string(active_.size());
    // With 2^l IDs of length l, distinctness is equivalent to completeness.
    std::vector<bool> seen(active_.size(), false);
    for (const auto& id : active_) {
        if (seen[id.bits])
            return "duplicate ID '" + id.to_string() + "'";
        seen[id.bits] = true;
    }
    return std::nullopt;
}

ReplayResult replay(const std::vector<Outcome>& outcomes)
{
    ReplayResult result;
    Cluster cluster;
    result.trajectory.push_back({0, cluster.size(), cluster.id_length()});
    result.violation = cluster.invariant_violation();
    for (auto outcome : outcomes) {
        if (result.violation)
            break;
        cluster = cluster.apply(outcome);
        result.trajectory.push_back({cluster.step(), cluster.size(), cluster.id_length()});
        if (auto v = cluster.invariant_violation())
            result.violation = "step " + std::to_string(cluster.step()) + ": " + *v;
    }
    return result;
}

std::vector<std::size_t> replay_sizes(const std::vector<Outcome>& outcomes)
{
    std::vector<std::size_t> sizes;
    for (const auto& point : replay(outcomes).trajectory)
        sizes.push_back(point.size);
    return sizes;
}

std::vector<Outcome> parse_trace(std::string_view text)
{
    std::vector<Outcome> out;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        switch (c) {
        case 'f': case 'F': case '0': out.push_back(Outcome::Failure); break;
        case 's': case 'S': case '1': out.push_back(Outcome::Success); break;
        default:
            throw std::invalid_argument(std::string("malformed trace: unexpected character '") + c + "'");
        }
    }
    return out;
}

std::vector<Outcome> random_outcomes(std::size_t steps, std::size_t max_depth, MutationRng& rng)
{
    if (max_depth > kMaxIdLength)
        throw std::invalid_argument("max_depth exceeds the 63-bit ID limit");
    std::vector<Outcome> out;
    out.reserve(steps);
    std::size_t depth = 0;
    for (std::size_t i = 0; i < steps; ++i) {
        Outcome o = (rng() >> 63) ? Outcome::Success : Outcome::Failure;
        if (o == Outcome::Failure && depth == max_depth)
            o = Outcome::Success;
        out.push_back(o);
        if (o == Outcome::Failure)
            ++depth;
        else if (depth > 0)
            --depth;
    }
    return out;
}

nlohmann::json to_json(const TrajectoryPoint& point)
{
    return {{"step", point.step}, {"size", point.size}, {"id_length", point.id_length}};
}

} // namespace adapop::idproto
