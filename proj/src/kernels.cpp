#include "adapop/kernels.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

namespace adapop {

IslandPopulation::IslandPopulation(std::size_t n, std::size_t islands, const Genotype& seed_individual,
                                   std::int64_t fitness)
    : n_(n), stride_(word_count(n)), bits_(islands * stride_), fitness_(islands, fitness)
{
    const auto src = seed_individual.words();
    for (std::size_t i = 0; i < islands; ++i)
        std::copy(src.begin(), src.end(), bits_.begin() + static_cast<std::ptrdiff_t>(i * stride_));
}

Genotype IslandPopulation::genotype(std::size_t i) const
{
    Genotype g(n_);
    auto src = island(i);
    std::copy(src.begin(), src.end(), g.words().begin());
    return g;
}

void IslandPopulation::broadcast(std::size_t source)
{
    const std::vector<std::uint64_t> best(island(source).begin(), island(source).end());
    for (std::size_t i = 0; i < size(); ++i)
        std::copy(best.begin(), best.end(), bits_.begin() + static_cast<std::ptrdiff_t>(i * stride_));
    std::fill(fitness_.begin(), fitness_.end(), fitness_[source]);
}

void IslandPopulation::resize(std::size_t islands)
{
    const std::size_t old = size();
    bits_.resize(islands * stride_);
    fitness_.resize(islands, fitness_.empty() ? 0 : fitness_[0]);
    for (std::size_t i = old; i < islands; ++i)
        std::copy(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(stride_),
                  bits_.begin() + static_cast<std::ptrdiff_t>(i * stride_));
}

namespace {

struct Step {
    std::int64_t value;
    bool accepted;
};

// Mutates island i into `scratch`, evaluates, and writes back unless worse.
inline Step step_island(IslandPopulation& pop, std::size_t i, const FitnessFunction& f,
                                const StandardMutation& mutation, std::uint64_t generation_key,
                                std::span<std::uint64_t> scratch)
{
    auto current = pop.island(i);
    std::copy(current.begin(), current.end(), scratch.begin());
    MutationRng rng(generation_key, i);
    mutation.apply(scratch, rng);
    const std::int64_t value = f.evaluate(std::span<const std::uint64_t>(scratch));
    if (value < pop.fitness(i))
        return {value, false};
    std::copy(scratch.begin(), scratch.end(), current.begin());
    pop.set_fitness(i, value);
    return {value, true};
}

// Highest fitness; ties go to islands that just accepted an offspring, then to the lowest index.
struct Best {
    std::int64_t value = std::numeric_limits<std::int64_t>::min();
    bool fresh = false;
    std::size_t island = 0;

    void offer(std::int64_t v, bool f, std::size_t i) noexcept
    {
        if (v != value ? v > value : (f != fresh ? f : i < island)) {
            value = v;
            fresh = f;
            island = i;
        }
    }
};

} // namespace

GenerationResult evolve_islands_serial(IslandPopulation& pop, const FitnessFunction& f,
                                       const StandardMutation& mutation, std::uint64_t generation_key,
                                       std::int64_t success_threshold)
{
    std::vector<std::uint64_t> scratch(pop.words_per_island());
    const std::int64_t optimum = f.optimum_value();
    GenerationResult result;
    Best best;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const Step step = step_island(pop, i, f, mutation, generation_key, scratch);
        if (step.value > success_threshold)
            ++result.successes;
        if (step.value == optimum)
            result.found_optimum = true;
        best.offer(pop.fitness(i), step.accepted, i);
    }
    result.best_value = best.value;
    result.best_island = best.island;
    return result;
}

GenerationResult evolve_islands_parallel(IslandPopulation& pop, const FitnessFunction& f,
                                         const StandardMutation& mutation, std::uint64_t generation_key,
                                         std::int64_t success_threshold)
{
    const auto islands = static_cast<std::int64_t>(pop.size());
    const std::int64_t optimum = f.optimum_value();
    std::uint64_t successes = 0;
    int found = 0;
    Best best;
#pragma omp parallel if (pop.size() >= kParallelIslandGrain) reduction(+ : successes) reduction(| : found)
    {
        std::vector<std::uint64_t> scratch(pop.words_per_island());
        Best local;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < islands; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const Step step = step_island(pop, idx, f, mutation, generation_key, scratch);
            if (step.value > success_threshold)
                ++successes;
            if (step.value == optimum)
                found = 1;
            local.offer(pop.fitness(idx), step.accepted, idx);
        }
#pragma omp critical(adapop_best_island)
        best.offer(local.value, local.fresh, local.island);
    }
    GenerationResult result;
    result.best_value = best.value;
    result.best_island = best.island;
    result.successes = successes;
    result.found_optimum = found != 0;
    return result;
}

} // namespace adapop
