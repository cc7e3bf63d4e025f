#include "adapop/rng.hpp"

namespace adapop {

MutationRng::MutationRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id), key_(mix64(mix64(seed) ^ mix64(stream_id + kGoldenGamma)))
{
}

std::uint64_t MutationRng::bounded(std::uint64_t range) noexcept
{
    if (range <= 1)
        return 0;
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t floor = (0 - range) % range;
        while (low < floor) {
            m = static_cast<unsigned __int128>((*this)()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

bool MutationRng::bernoulli(double p) noexcept
{
    if (p >= 1.0) {
        (*this)();
        return true;
    }
    return (*this)() < probability_threshold(p);
}

std::uint64_t probability_threshold(double p) noexcept
{
    if (!(p > 0.0))
        return 0;
    if (p >= 1.0)
        return std::numeric_limits<std::uint64_t>::max();
    const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
    if (scaled >= 18446744073709551615.0L)
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(scaled);
}

} // namespace adapop
