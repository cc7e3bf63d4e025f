// Serial reference vs OpenMP kernels: island generations and trial batches.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "adapop/engine.hpp"
#include "adapop/kernels.hpp"
#include "adapop/rng.hpp"

using namespace adapop;

namespace {

template <class F>
double seconds(F&& body)
{
    const auto start = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool bench_islands(std::size_t n, std::size_t islands, int generations)
{
    const auto f = FitnessFunction::leading_ones(n);
    const StandardMutation mutation(n);
    MutationRng init(1, 0);
    const auto parent = Genotype::random(n, init);
    IslandPopulation serial(n, islands, parent, f.evaluate(parent));
    IslandPopulation parallel = serial;

    std::vector<GenerationResult> rs, rp;
    const double ts = seconds([&] {
        for (int g = 0; g < generations; ++g)
            rs.push_back(evolve_islands_serial(serial, f, mutation, derive_seed(9, g), serial.fitness(0)));
    });
    const double tp = seconds([&] {
        for (int g = 0; g < generations; ++g)
            rp.push_back(evolve_islands_parallel(parallel, f, mutation, derive_seed(9, g), parallel.fitness(0)));
    });
    bool same = rs == rp;
    for (std::size_t i = 0; same && i < islands; ++i)
        same = serial.genotype(i) == parallel.genotype(i);
    std::printf("islands  n=%-5zu mu=%-7zu serial %8.4fs  parallel %8.4fs  speedup %5.2f  %s\n", n, islands, ts, tp,
                ts / tp, same ? "equal" : "MISMATCH");
    return same;
}

bool bench_batch(std::size_t n, std::size_t trials)
{
    RunConfig cfg;
    cfg.function = FitnessFunction::leading_ones(n);
    cfg.policy.kind = SchemeKind::B;
    cfg.seed = 42;

    std::vector<RunRecord> serial;
    const double ts = seconds([&] {
        cfg.execution = Execution::Serial;
        for (std::size_t j = 0; j < trials; ++j) {
            auto one = cfg;
            one.seed = trial_seed(cfg.seed, j);
            serial.push_back(run(one));
        }
    });
    std::vector<RunRecord> parallel;
    const double tp = seconds([&] {
        cfg.execution = Execution::Parallel;
        parallel = run_batch(cfg, trials);
    });
    const bool same = serial == parallel;
    std::printf("batch    n=%-5zu trials=%-4zu serial %8.4fs  parallel %8.4fs  speedup %5.2f  %s\n", n, trials, ts,
                tp, ts / tp, same ? "equal" : "MISMATCH");
    return same;
}

} // namespace

int main()
{
    std::printf("threads: %d\n", omp_get_max_threads());
    bool ok = true;
    for (std::size_t islands : {256, 4096, 65536})
        ok &= bench_islands(200, islands, 20);
    ok &= bench_islands(2000, 8192, 10);
    ok &= bench_batch(100, 64);
    ok &= bench_batch(200, 32);
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
