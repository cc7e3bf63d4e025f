#include "adapop/engine.hpp"

#include <algorithm>
#include <optional>

#include "adapop/bounds.hpp"
#include "adapop/kernels.hpp"
#include "adapop/mutation.hpp"
#include "adapop/rng.hpp"

namespace adapop {

void RunConfig::validate() const
{
    policy.validate();
    if (migration_interval < 1)
        throw ConfigError("migration interval must be at least 1");
    if (max_generations < 1 || max_evaluations < 1)
        throw ConfigError("run caps must be positive");
}

namespace {

// Shared bookkeeping of both code paths.
class RunState {
public:
    RunState(const RunConfig& config)
        : config_(config)
        , mutation_(config.function.n())
        , initial_(draw_initial(config))
    {
        if (config.policy.needs_level_success())
            profile_ = level_profile_preset(config.function);
        record_.seed = config.seed;
        record_.level_trace.assign(config.function.level_count(), LevelTime{});
        best_ = config.function.evaluate(initial_);
        block_start_best_ = best_;
        record_.best_fitness = best_;
        mu_ = initial_size(config.policy, level_success(best_));
        record_.mu_peak = mu_;
    }

    const Genotype& initial() const noexcept { return initial_; }
    const StandardMutation& mutation() const noexcept { return mutation_; }
    std::int64_t best() const noexcept { return best_; }
    std::uint64_t mu() const noexcept { return mu_; }
    bool solved() const noexcept { return config_.function.is_optimum_value(best_); }

    /// False once a cap would be exceeded by the next generation.
    bool may_run_generation()
    {
        if (record_.t_par >= config_.max_generations || record_.t_seq + mu_ > config_.max_evaluations) {
            record_.hit_cap = true;
            return false;
        }
        return true;
    }

    std::uint64_t begin_generation()
    {
        const std::uint64_t generation = ++record_.t_par;
        record_.t_seq += mu_;
        auto& slot = record_.level_trace[config_.function.level_of_value(best_) - 1];
        ++slot.generations;
        slot.evaluations += mu_;
        record_.mu_peak = std::max(record_.mu_peak, mu_);
        return derive_seed(config_.seed, generation);
    }

    std::int64_t block_start_best() const noexcept { return block_start_best_; }

    void end_generation(std::int64_t best_after, std::uint64_t successes)
    {
        best_ = std::max(best_, best_after);
        record_.best_fitness = best_;
        block_successes_ += successes;
    }

    bool at_migration() const noexcept { return record_.t_par % config_.migration_interval == 0; }

    /// Applies the policy at a migration point; returns the new size.
    std::uint64_t update()
    {
        GenerationOutcome outcome;
        outcome.improved = best_ > block_start_best_;
        outcome.num_successes = block_successes_;
        outcome.new_level = config_.function.level_of_value(best_);
        const std::uint64_t next = update_size(config_.policy, mu_, outcome, level_success(best_));
        if (config_.record_trajectory)
            record_.trajectory.push_back({mu_, outcome.improved, outcome.num_successes, outcome.new_level, next});
        mu_ = next;
        block_start_best_ = best_;
        block_successes_ = 0;
        return next;
    }

    RunRecord finish() { return std::move(record_); }

private:
    static Genotype draw_initial(const RunConfig& config)
    {
        config.validate();
        MutationRng rng(derive_seed(config.seed, 0), 0);
        return Genotype::random(config.function.n(), rng);
    }

    std::optional<double> level_success(std::int64_t value) const
    {
        if (!profile_)
            return std::nullopt;
        const std::size_t level = config_.function.level_of_value(value);
        if (level >= profile_->levels())
            return 1.0;
        return profile_->s(level);
    }

    const RunConfig& config_;
    StandardMutation mutation_;
    Genotype initial_;
    std::optional<LevelProfile> profile_;
    RunRecord record_;
    std::int64_t best_ = 0;
    std::int64_t block_start_best_ = 0;
    std::uint64_t block_successes_ = 0;
    std::uint64_t mu_ = 1;
};

} // namespace

RunRecord run(const RunConfig& config)
{
    RunState state(config);
    if (state.solved())
        return state.finish();

    IslandPopulation pop(config.function.n(), state.mu(), state.initial(), state.best());
    const auto evolve = config.execution == Execution::Serial ? evolve_islands_serial : evolve_islands_parallel;

    while (state.may_run_generation()) {
        pop.resize(state.mu());
        const std::uint64_t key = state.begin_generation();
        const GenerationResult result =
            evolve(pop, config.function, state.mutation(), key, state.block_start_best());
        state.end_generation(result.best_value, result.successes);
        if (result.found_optimum)
            break;
        if (state.at_migration()) {
            pop.broadcast(result.best_island);
            state.update();
        }
    }
    return state.finish();
}

RunRecord run_offspring_population(const RunConfig& config)
{
    if (config.migration_interval != 1)
        throw ConfigError("the (1+lambda) formulation has no migration interval; use tau = 1");
    RunState state(config);
    if (state.solved())
        return state.finish();

    const FitnessFunction& f = config.function;
    Genotype parent = state.initial();
    std::int64_t parent_value = state.best();
    Genotype child(f.n());
    Genotype best_child(f.n());

    while (state.may_run_generation()) {
        const std::uint64_t lambda = state.mu();
        const std::uint64_t key = state.begin_generation();
        std::int64_t best_value = 0;
        std::uint64_t successes = 0;
        for (std::uint64_t i = 0; i < lambda; ++i) {
            child = parent;
            MutationRng rng(key, i);
            state.mutation().apply(child.words(), rng);
            const std::int64_t value = f.evaluate(child.words());
            if (value > parent_value)
                ++successes;
            if (i == 0 || value > best_value) {
                best_value = value;
                best_child = child;
            }
        }
        if (best_value >= parent_value) {
            parent = best_child;
            parent_value = best_value;
        }
        state.end_generation(parent_value, successes);
        if (f.is_optimum_value(parent_value))
            break;
        state.update();
    }
    return state.finish();
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) noexcept
{
    return derive_seed(master_seed ^ 0xA5A5A5A5DEADBEEFULL, trial);
}

std::vector<RunRecord> run_batch(const RunConfig& config, std::size_t trials)
{
    return run_batch(std::span<const RunConfig>(&config, 1), trials);
}

std::vector<RunRecord> run_batch(std::span<const RunConfig> grid, std::size_t trials)
{
    const auto total = static_cast<std::int64_t>(grid.size() * trials);
    std::vector<RunRecord> records(static_cast<std::size_t>(total));
    for (const auto& cell : grid)
        cell.validate();
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        RunConfig cell = grid[u / trials];
        cell.seed = trial_seed(cell.seed, u % trials);
        records[u] = run(cell);
    }
    return records;
}

nlohmann::json to_json(const RunRecord& record)
{
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& level : record.level_trace)
        trace.push_back({level.generations, level.evaluations});
    return {{"t_par", record.t_par},       {"t_seq", record.t_seq},   {"mu_peak", record.mu_peak},
            {"hit_cap", record.hit_cap},   {"seed", record.seed},     {"best_fitness", record.best_fitness},
            {"level_trace", trace}};
}

} // namespace adapop
