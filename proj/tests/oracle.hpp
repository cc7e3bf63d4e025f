#pragma once

#include <cstddef>
#include <vector>

// Reference computations for the tests, written independently of the library.
namespace oracle {

struct SeriesValue {
    double value;
    double tail; // upper bound on the truncated remainder
};

/// E[T] for the doubling process starting with 2^k trials of probability p:
/// sum_{t>=0} (1-p)^(2^k (2^t - 1)).
SeriesValue doubling_parallel_expectation(double p, unsigned k);
/// E[trials]: sum_{t>=0} (1-p)^(2^k (2^t - 1)) 2^(k+t).
SeriesValue doubling_sequential_expectation(double p, unsigned k);

/// sum_{i=1}^{m-1} init[i-1] * sum_{j=i}^{m-1} term(s_j), written as a double loop.
double level_sum(const std::vector<double>& s, const std::vector<double>& init, double (*term)(double));

double harmonic(std::size_t n);

} // namespace oracle
