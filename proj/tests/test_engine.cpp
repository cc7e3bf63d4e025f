#include <doctest.h>

#include <cmath>
#include <numeric>

#include <omp.h>

#include "adapop/engine.hpp"
#include "adapop/harness.hpp"

using namespace adapop;

namespace {

RunConfig make_config(FitnessFunction f, SchemeKind kind, std::uint64_t seed)
{
    RunConfig cfg;
    cfg.function = f;
    cfg.policy.kind = kind;
    cfg.seed = seed;
    return cfg;
}

const SchemeKind kAllSchemes[] = {SchemeKind::A,        SchemeKind::B,            SchemeKind::JdW,
                                  SchemeKind::Additive, SchemeKind::NonOblivious, SchemeKind::Constant};

} // namespace

TEST_CASE("OneMax n = 1 finishes in the first generation")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = run(make_config(FitnessFunction::one_max(1), SchemeKind::B, seed));
        CHECK(!r.hit_cap);
        CHECK(r.best_fitness == 1);
        if (r.t_par == 0) {
            CHECK(r.t_seq == 0); // initial search point was optimal
        } else {
            CHECK(r.t_par == 1);
            CHECK(r.t_seq == 1);
        }
    }
}

TEST_CASE("trajectory replays through update_size")
{
    for (auto kind : kAllSchemes) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            for (auto f : {FitnessFunction::leading_ones(40), FitnessFunction::one_max(60),
                           FitnessFunction::jump(12, 2)}) {
                auto cfg = make_config(f, kind, seed);
                cfg.record_trajectory = true;
                const auto r = run(cfg);
                REQUIRE(!r.hit_cap);
                const auto profile = level_profile_preset(f);
                std::uint64_t mu = initial_size(
                    cfg.policy, kind == SchemeKind::NonOblivious ? std::optional(profile.s(1)) : std::nullopt);
                if (kind == SchemeKind::NonOblivious) {
                    MutationRng rng(derive_seed(seed, 0), 0);
                    const auto level = f.level_index(Genotype::random(f.n(), rng));
                    mu = initial_size(cfg.policy, profile.s(level));
                }
                std::uint64_t t_seq = 0;
                std::size_t level = 0;
                for (const auto& step : r.trajectory) {
                    CHECK(step.mu == mu);
                    const GenerationOutcome outcome{step.improved, step.num_successes, step.level};
                    std::optional<double> s;
                    if (kind == SchemeKind::NonOblivious)
                        s = step.level >= profile.levels() ? 1.0 : profile.s(step.level);
                    CHECK(update_size(cfg.policy, step.mu, outcome, s) == step.next_mu);
                    CHECK(step.level >= level); // elitism
                    level = step.level;
                    CHECK(step.mu <= r.mu_peak);
                    t_seq += step.mu;
                    mu = step.next_mu;
                }
                // Every generation but the last ends with an update; the last one is paid in full.
                CHECK(r.trajectory.size() + 1 == r.t_par);
                CHECK(t_seq + mu == r.t_seq);
            }
        }
    }
}

TEST_CASE("scheme A trajectory on LeadingOnes doubles then resets")
{
    bool found = false;
    for (std::uint64_t seed = 0; seed < 20 && !found; ++seed) {
        auto cfg = make_config(FitnessFunction::leading_ones(100), SchemeKind::A, seed);
        cfg.record_trajectory = true;
        const auto t = run(cfg).trajectory;
        for (std::size_t i = 0; i + 2 < t.size() && !found; ++i) {
            if (t[i].mu == 1 && !t[i].improved && !t[i + 1].improved && t[i + 2].improved) {
                CHECK(t[i + 1].mu == 2);
                CHECK(t[i + 2].mu == 4);
                CHECK(t[i + 2].next_mu == 1);
                found = true;
            }
        }
    }
    CHECK(found);
}

TEST_CASE("time accounting and level trace")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (auto kind : {SchemeKind::A, SchemeKind::B, SchemeKind::JdW}) {
            auto cfg = make_config(FitnessFunction::ridge(20), kind, seed);
            cfg.migration_interval = 1 + seed % 4;
            const auto r = run(cfg);
            CHECK(!r.hit_cap);
            CHECK(r.t_seq >= r.t_par);
            CHECK(r.level_trace.size() == cfg.function.level_count());
            const auto gens = std::accumulate(r.level_trace.begin(), r.level_trace.end(), std::uint64_t{0},
                                              [](std::uint64_t a, const LevelTime& l) { return a + l.generations; });
            const auto evals = std::accumulate(r.level_trace.begin(), r.level_trace.end(), std::uint64_t{0},
                                               [](std::uint64_t a, const LevelTime& l) { return a + l.evaluations; });
            CHECK(gens == r.t_par);
            CHECK(evals == r.t_seq);
            CHECK(r.level_trace.back() == LevelTime{});
        }
    }
}

TEST_CASE("migration interval: updates only at migration points")
{
    for (std::uint64_t tau : {2, 3, 5}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto cfg = make_config(FitnessFunction::leading_ones(30), SchemeKind::B, seed);
            cfg.migration_interval = tau;
            cfg.record_trajectory = true;
            const auto r = run(cfg);
            CHECK(!r.hit_cap);
            // Generation t_par found the optimum and performed no update.
            CHECK(r.trajectory.size() == (r.t_par - 1) / tau);
            std::uint64_t t_seq = 0;
            for (const auto& step : r.trajectory)
                t_seq += step.mu * tau;
            const std::uint64_t last_mu = r.trajectory.empty() ? 1 : r.trajectory.back().next_mu;
            CHECK(t_seq + last_mu * (r.t_par - r.trajectory.size() * tau) == r.t_seq);
        }
    }
}

TEST_CASE("caps censor the run")
{
    auto cfg = make_config(FitnessFunction::leading_ones(2000), SchemeKind::B, 1);
    cfg.max_generations = 5;
    auto r = run(cfg);
    CHECK(r.hit_cap);
    CHECK(r.t_par == 5);

    cfg.max_generations = 1'000'000;
    cfg.max_evaluations = 100;
    r = run(cfg);
    CHECK(r.hit_cap);
    CHECK(r.t_seq <= 100);
    CHECK(r.t_seq + 2 * r.mu_peak > 100); // the next generation would not fit

    cfg.max_evaluations = 0;
    CHECK_THROWS_AS(run(cfg), ConfigError);
    cfg.max_evaluations = 10;
    cfg.migration_interval = 0;
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("determinism across execution modes and thread counts")
{
    const int saved = omp_get_max_threads();
    for (auto kind : {SchemeKind::A, SchemeKind::B}) {
        auto cfg = make_config(FitnessFunction::leading_ones(300), kind, 77);
        cfg.record_trajectory = true;
        cfg.execution = Execution::Serial;
        const auto serial = run(cfg);
        cfg.execution = Execution::Parallel;
        omp_set_num_threads(1);
        const auto one = run(cfg);
        omp_set_num_threads(4);
        const auto four = run(cfg);
        CHECK(serial == one);
        CHECK(serial == four);
        CHECK(serial.mu_peak >= 512); // exercises the threaded kernel
    }
    omp_set_num_threads(saved);
}

TEST_CASE("island engine and (1+lambda) view coincide")
{
    for (auto kind : kAllSchemes) {
        for (auto f : {FitnessFunction::one_max(40), FitnessFunction::leading_ones(25), FitnessFunction::jump(10, 2),
                       FitnessFunction::ridge(12)}) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                auto cfg = make_config(f, kind, seed);
                cfg.record_trajectory = true;
                CHECK(run(cfg) == run_offspring_population(cfg));
            }
        }
    }
    auto cfg = make_config(FitnessFunction::one_max(5), SchemeKind::B, 0);
    cfg.migration_interval = 2;
    CHECK_THROWS_AS(run_offspring_population(cfg), ConfigError);
}

TEST_CASE("run_batch seeds and ordering")
{
    auto cfg = make_config(FitnessFunction::one_max(30), SchemeKind::B, 5);
    const auto single = run_batch(cfg, 1);
    auto derived = cfg;
    derived.seed = trial_seed(5, 0);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == run(derived));

    const auto a = run_batch(cfg, 16);
    const auto b = run_batch(cfg, 16);
    CHECK(a == b);
    for (std::size_t j = 0; j < a.size(); ++j)
        CHECK(a[j].seed == trial_seed(5, j));

    std::vector<RunConfig> grid{cfg, make_config(FitnessFunction::leading_ones(20), SchemeKind::A, 9)};
    const auto both = run_batch(grid, 4);
    REQUIRE(both.size() == 8);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(both[4 + j] == run_batch(grid[1], 4)[j]);
}

TEST_CASE("scheme B on LeadingOnes n = 50: mean sequential time below 3en^2")
{
    auto cfg = make_config(FitnessFunction::leading_ones(50), SchemeKind::B, 2011);
    const auto records = run_batch(cfg, 1000);
    std::vector<double> t_seq;
    for (const auto& r : records) {
        REQUIRE(!r.hit_cap);
        t_seq.push_back(static_cast<double>(r.t_seq));
    }
    const auto stat = summarize(t_seq);
    CHECK(stat.upper() <= 3 * std::exp(1.0) * 50 * 50);
}

TEST_CASE("run record JSON")
{
    const auto r = run(make_config(FitnessFunction::leading_ones(10), SchemeKind::B, 7));
    const auto j = to_json(r);
    CHECK(j.at("t_par") == r.t_par);
    CHECK(j.at("t_seq") == r.t_seq);
    CHECK(j.at("mu_peak") == r.mu_peak);
    CHECK(j.at("level_trace").size() == 11);
    CHECK(j.dump() == to_json(run(make_config(FitnessFunction::leading_ones(10), SchemeKind::B, 7))).dump());
}
