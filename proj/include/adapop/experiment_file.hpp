#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adapop/harness.hpp"

namespace adapop {

inline constexpr int kBenchSchemaVersion = 1;

/// Picks one series of cells (ordered by n) out of an experiment grid.
struct SeriesSelector {
    FunctionKind function = FunctionKind::LeadingOnes;
    std::size_t k = 0;
    SchemeKind scheme = SchemeKind::B;
    double base = 2.0;
    std::uint64_t tau = 1;
    std::optional<std::uint64_t> mu_max = std::nullopt;
};

struct ScalingRequirement {
    SeriesSelector series;
    Measure measure = Measure::Parallel;
    std::optional<double> min_slope;
    std::optional<double> max_slope;
    /// Slope must be strictly greater than this scheme's slope on the same series.
    std::optional<SchemeKind> steeper_than;
};

struct ComparisonRequirement {
    SeriesSelector numerator;
    SchemeKind denominator = SchemeKind::B;
    Measure measure = Measure::Parallel;
    bool expect_increasing = true;
};

struct TailCheckSpec {
    double p = 0.01;
    unsigned k = 0;
    std::vector<unsigned> upper_alphas;
    std::vector<unsigned> lower_alphas;
    std::size_t trials = 10'000;
    std::uint64_t seed = 0;
};

struct PeakCheckSpec {
    SeriesSelector series;
    std::vector<double> betas;
};

/// Declarative benchmark description, read from a versioned JSON file.
struct BenchPlan {
    std::string name;
    std::optional<ExperimentSpec> grid;
    std::vector<ScalingRequirement> scaling;
    std::vector<ComparisonRequirement> comparisons;
    std::vector<TailCheckSpec> tail_checks;
    std::vector<PeakCheckSpec> peak_checks;

    /// Throws ConfigError for a plan that asks for nothing or references an empty grid.
    void validate() const;
};

/// Throws ConfigError on schema problems (unknown version, bad kinds, wrong types).
BenchPlan parse_bench_plan(const nlohmann::json& doc);
/// Throws std::runtime_error naming the file when it cannot be read or parsed.
BenchPlan load_bench_plan(const std::filesystem::path& path);

struct ScalingOutcome {
    ScalingRequirement requirement;
    ScalingFit fit;
    std::optional<ScalingFit> reference;
    bool pass = false;
};

struct ComparisonOutcome {
    ComparisonRequirement requirement;
    SchemeComparison comparison;
    bool pass = false;
};

struct TailCheckOutcome {
    TailCheckSpec spec;
    std::vector<TailCheckRow> rows;
    bool pass = false;
};

struct PeakCheckCell {
    std::size_t n = 0;
    double s_min = 0; // hardest level of the cell's profile
    std::vector<PeakCheckRow> rows;
};

struct PeakCheckOutcome {
    PeakCheckSpec spec;
    std::vector<PeakCheckCell> cells;
    bool pass = false;
};

struct BenchOutcome {
    std::string name;
    std::optional<ExperimentResult> experiment;
    std::vector<ScalingOutcome> scaling;
    std::vector<ComparisonOutcome> comparisons;
    std::vector<TailCheckOutcome> tail_checks;
    std::vector<PeakCheckOutcome> peak_checks;

    bool passed() const noexcept;
};

/// Indices of the grid cells matching `selector`, ordered by n.
/// Throws std::invalid_argument if no cell matches.
std::vector<std::size_t> select_series(const ExperimentResult& result, const SeriesSelector& selector);

BenchOutcome run_bench(const BenchPlan& plan);

} // namespace adapop
