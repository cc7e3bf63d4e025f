#include "oracle.hpp"

#include <cmath>

namespace oracle {

namespace {

// Sums a(t) * (1-p)^(2^k (2^t - 1)) with weight a(t) = 2^(k+t) or 1.
SeriesValue doubling_series(double p, unsigned k, bool weighted)
{
    if (p >= 1.0)
        return {weighted ? std::ldexp(1.0, static_cast<int>(k)) : 1.0, 0.0};
    const double log_q = std::log1p(-p);
    double sum = 0;
    for (int t = 0; t < 200; ++t) {
        const double trials = std::ldexp(1.0, static_cast<int>(k)) * (std::ldexp(1.0, t) - 1.0);
        const double weight = weighted ? std::ldexp(1.0, static_cast<int>(k) + t) : 1.0;
        const double term = weight * std::exp(trials * log_q);
        sum += term;
        // term(t+1)/term(t) = (1-p)^(2^(k+t)) * (2 if weighted); once below 1/2 the
        // remainder is at most term * r / (1 - r) <= term.
        const double ratio = std::exp(std::ldexp(1.0, static_cast<int>(k) + t) * log_q) * (weighted ? 2.0 : 1.0);
        if (ratio < 0.5) {
            const double tail = term * ratio / (1.0 - ratio);
            if (tail < 1e-13)
                return {sum, tail};
        }
    }
    return {sum, INFINITY};
}

} // namespace

SeriesValue doubling_parallel_expectation(double p, unsigned k) { return doubling_series(p, k, false); }

SeriesValue doubling_sequential_expectation(double p, unsigned k) { return doubling_series(p, k, true); }

double level_sum(const std::vector<double>& s, const std::vector<double>& init, double (*term)(double))
{
    double total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double inner = 0;
        for (std::size_t j = i; j < s.size(); ++j)
            inner += term(s[j]);
        total += init[i] * inner;
    }
    return total;
}

double harmonic(std::size_t n)
{
    double h = 0;
    for (std::size_t i = 1; i <= n; ++i)
        h += 1.0 / static_cast<double>(i);
    return h;
}

} // namespace oracle
