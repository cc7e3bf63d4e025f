#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "adapop/fitness.hpp"
#include "adapop/schemes.hpp"

namespace adapop {

enum class Execution { Serial, Parallel };

struct RunConfig {
    FitnessFunction function = FitnessFunction::one_max(1);
    UpdatePolicy policy;
    /// Generations between migrations; population updates happen only at migrations.
    std::uint64_t migration_interval = 1;
    std::uint64_t seed = 0;
    std::uint64_t max_generations = 1'000'000'000;
    std::uint64_t max_evaluations = 1'000'000'000;
    Execution execution = Execution::Parallel;
    /// Keep the per-update (mu, outcome) sequence in RunRecord::trajectory.
    bool record_trajectory = false;

    /// Throws ConfigError on an invalid policy, tau = 0 or zero caps.
    void validate() const;
};

struct LevelTime {
    std::uint64_t generations = 0;
    std::uint64_t evaluations = 0;

    friend bool operator==(const LevelTime&, const LevelTime&) = default;
};

/// One population update: the size used during the block and what it produced.
struct TrajectoryStep {
    std::uint64_t mu = 0;
    bool improved = false;
    std::uint64_t num_successes = 0;
    std::size_t level = 0;
    std::uint64_t next_mu = 0;

    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct RunRecord {
    /// Generations until the first optimum is evaluated (initialisation excluded).
    std::uint64_t t_par = 0;
    /// Evaluations until then, counting the whole final generation.
    std::uint64_t t_seq = 0;
    std::uint64_t mu_peak = 1;
    /// Indexed by level - 1; time spent while the system best sat on that level.
    std::vector<LevelTime> level_trace;
    bool hit_cap = false;
    std::uint64_t seed = 0;
    std::int64_t best_fitness = 0;
    std::vector<TrajectoryStep> trajectory;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Elitist island model with a complete topology; every island runs a (1+1)-EA.
/// Every `migration_interval` generations the best island is copied to all
/// islands and the policy picks the next number of islands.
RunRecord run(const RunConfig& config);

/// The (1+lambda)-EA view of the same process: lambda offspring of one parent,
/// best offspring replaces the parent unless worse. Requires migration_interval = 1.
/// Draws the same random numbers as run(), so both return equal records.
RunRecord run_offspring_population(const RunConfig& config);

/// Seed of trial `trial` under `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) noexcept;

/// `trials` independent runs with seeds trial_seed(config.seed, j), in trial order.
std::vector<RunRecord> run_batch(const RunConfig& config, std::size_t trials);

/// All cells of a grid, cell-major: record [c * trials + j] is trial j of cell c,
/// seeded with trial_seed(grid[c].seed, j). Trials run concurrently.
std::vector<RunRecord> run_batch(std::span<const RunConfig> grid, std::size_t trials);

nlohmann::json to_json(const RunRecord& record);

} // namespace adapop
