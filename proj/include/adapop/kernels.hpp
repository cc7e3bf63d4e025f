#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adapop/fitness.hpp"
#include "adapop/genotype.hpp"
#include "adapop/mutation.hpp"

namespace adapop {

/// Islands stored contiguously: island i owns words [i*w, (i+1)*w) and its
/// elitist's fitness.
class IslandPopulation {
public:
    IslandPopulation(std::size_t n, std::size_t islands, const Genotype& seed_individual, std::int64_t fitness);

    std::size_t size() const noexcept { return fitness_.size(); }
    std::size_t length() const noexcept { return n_; }
    std::size_t words_per_island() const noexcept { return stride_; }

    std::span<std::uint64_t> island(std::size_t i) noexcept { return {bits_.data() + i * stride_, stride_}; }
    std::span<const std::uint64_t> island(std::size_t i) const noexcept
    {
        return {bits_.data() + i * stride_, stride_};
    }
    std::int64_t fitness(std::size_t i) const noexcept { return fitness_[i]; }
    void set_fitness(std::size_t i, std::int64_t value) noexcept { fitness_[i] = value; }

    Genotype genotype(std::size_t i) const;

    /// Copies island `source` over every island (complete-topology migration).
    void broadcast(std::size_t source);
    /// New islands copy island 0; surplus islands are dropped from the end.
    void resize(std::size_t islands);

private:
    std::size_t n_;
    std::size_t stride_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::int64_t> fitness_;
};

struct GenerationResult {
    std::int64_t best_value = 0;
    /// Island holding best_value. Among ties, islands that accepted their
    /// offspring this generation come first, then the lowest index.
    std::size_t best_island = 0;
    /// Offspring with fitness strictly above the threshold passed in.
    std::uint64_t successes = 0;
    bool found_optimum = false;

    friend bool operator==(const GenerationResult&, const GenerationResult&) = default;
};

/// One generation of a (1+1)-EA on every island: island i draws its mutation from
/// stream (generation_key, i) and keeps the offspring unless it is worse.
/// Reference implementation.
GenerationResult evolve_islands_serial(IslandPopulation& pop, const FitnessFunction& f,
                                       const StandardMutation& mutation, std::uint64_t generation_key,
                                       std::int64_t success_threshold);

/// OpenMP version of evolve_islands_serial; produces the same population and result.
GenerationResult evolve_islands_parallel(IslandPopulation& pop, const FitnessFunction& f,
                                         const StandardMutation& mutation, std::uint64_t generation_key,
                                         std::int64_t success_threshold);

/// Below this many islands the parallel kernel runs on the calling thread.
inline constexpr std::size_t kParallelIslandGrain = 512;

} // namespace adapop
