#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adapop/bounds.hpp"
#include "adapop/engine.hpp"

namespace adapop {

/// Sample summary. The confidence interval uses the normal approximation and is
/// only reported for 30 or more samples; smaller samples report the range only.
struct Statistic {
    std::size_t count = 0;
    double mean = 0;
    double variance = 0; // unbiased
    double min = 0;
    double max = 0;
    std::optional<double> halfwidth;

    double upper() const noexcept { return mean + halfwidth.value_or(0.0); }
    double lower() const noexcept { return mean - halfwidth.value_or(0.0); }
};

inline constexpr std::size_t kMinTrialsForInterval = 30;

/// Throws std::invalid_argument for an empty sample or confidence outside (0, 1).
Statistic summarize(std::span<const double> values, double confidence = 0.95);

// ---------------------------------------------------------------------------
// Doubling-trials process

struct DoublingSample {
    std::uint64_t generations = 0;
    std::uint64_t trials = 0; // all trials of every generation run, including the last
    std::uint64_t peak = 0;   // trials in the final generation
};

/// Starts with 2^k Bernoulli(p) trials and doubles them every generation until
/// one succeeds. Simulated trial by trial.
DoublingSample simulate_doubling(double p, unsigned k, MutationRng& rng);

struct TailCheckRow {
    enum class Side { Upper, Lower };
    Side side = Side::Upper;
    unsigned alpha = 0;
    double threshold = 0;  // T > threshold (upper) or T <= threshold (lower)
    double exceedance = 0; // empirical probability
    double sigma = 0;      // binomial standard error at the bound
    double bound = 0;
    bool pass = false;     // exceedance <= bound + 3 sigma
};

/// Empirical check of both tail inequalities for the doubling process.
/// Throws std::invalid_argument when trials < 1000.
std::vector<TailCheckRow> verify_tail_bounds(double p, unsigned k, std::span<const unsigned> upper_alphas,
                                             std::span<const unsigned> lower_alphas, std::size_t trials,
                                             std::uint64_t seed);

// ---------------------------------------------------------------------------
// Experiments

struct FunctionChoice {
    FunctionKind kind = FunctionKind::OneMax;
    std::size_t k = 0;

    friend bool operator==(const FunctionChoice&, const FunctionChoice&) = default;
};

/// Cartesian grid: function x n x scheme x base x mu_max x tau.
struct ExperimentSpec {
    std::vector<FunctionChoice> functions;
    std::vector<std::size_t> n_values;
    std::vector<SchemeKind> schemes;
    std::vector<double> bases{2.0};
    std::vector<std::optional<std::uint64_t>> mu_maxes{std::nullopt};
    std::vector<std::uint64_t> taus{1};
    std::uint64_t mu_min = 1;
    std::size_t trials = 100;
    std::uint64_t master_seed = 0;
    double confidence = 0.95;
    std::uint64_t max_evaluations = 1'000'000'000;

    /// Throws ConfigError for an empty grid, trials < 1 or confidence outside (0, 1).
    void validate() const;
    /// One RunConfig per cell, in grid order; cell c is seeded with derive_seed(master_seed, c).
    std::vector<RunConfig> cells() const;
};

struct BoundCheck {
    Measure measure = Measure::Sequential;
    std::string bound_name;
    double bound = 0;
    double statistic = 0; // mean + CI halfwidth (mean alone below 30 trials)
    bool pass = false;
};

struct CellSummary {
    RunConfig config;
    std::size_t trials = 0;
    std::size_t censored = 0;
    Statistic t_par;
    Statistic t_seq;
    std::uint64_t mu_peak_max = 0;
    BoundReport bounds;
    std::optional<double> serial_bound; // fitness-level bound, for the constant mu = 1 policy
    std::vector<BoundCheck> checks;
    std::vector<std::string> warnings;

    bool passed() const noexcept;
};

/// Compares a statistic of `measure` against a named bound. Throws
/// std::logic_error if the bound belongs to the other measure.
BoundCheck check_bound(const BoundReport& report, const std::string& name, Measure measure, const Statistic& stat);

/// Bounds the harness checks for a policy, e.g. A -> seq_A, par_A (and par_A_mumax).
std::vector<std::string> bound_names_for(const UpdatePolicy& policy, Measure measure);

/// Summary and bound checks for one cell from its records.
CellSummary summarize_cell(const RunConfig& config, std::span<const RunRecord> records, double confidence);

struct ExperimentResult {
    std::vector<CellSummary> cells;
    std::vector<RunRecord> records; // cell-major, `trials` per cell
    std::size_t trials = 0;

    std::span<const RunRecord> records_of(std::size_t cell) const
    {
        return std::span<const RunRecord>(records).subspan(cell * trials, trials);
    }
    bool passed() const noexcept;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Analysis

struct ScalingFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

/// Least squares on (ln n, ln mean). Throws std::invalid_argument for fewer than
/// three distinct n, mismatched lengths or non-positive values.
ScalingFit scaling_fit(std::span<const double> n_values, std::span<const double> means);

struct SchemeComparison {
    std::vector<std::size_t> n_values;
    std::vector<double> ratios;
    std::vector<double> ratio_halfwidths; // delta-method CI of the ratio, 0 without CIs
    std::size_t decreases = 0;            // steps where the ratio did not increase
    std::size_t excused = 0;              // of those, steps whose ratio CIs overlap
    bool increasing = false;              // no decrease, or a single excused one
};

/// Ratio of mean `measure` per n, numerator / denominator. Cells are matched by
/// position and must share function and n. Throws std::invalid_argument otherwise.
SchemeComparison compare_schemes(std::span<const CellSummary> numerator, std::span<const CellSummary> denominator,
                                 Measure measure);

struct PeakCheckRow {
    double beta = 0;
    double threshold = 0;
    double exceedance = 0;
    double sigma = 0;
    double bound = 0;
    bool pass = false;
};

/// Fraction of runs whose peak population exceeds max(2^(k+1), 4/s_min) * beta,
/// against exp(-beta) + 3 sigma.
std::vector<PeakCheckRow> peak_population_check(std::span<const RunRecord> records, double s_min, unsigned k,
                                                std::span<const double> betas);

} // namespace adapop
