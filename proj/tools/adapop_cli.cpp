// adapop: run, bound, benchmark and simulate adaptive parallel EAs.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "adapop/bounds.hpp"
#include "adapop/engine.hpp"
#include "adapop/experiment_file.hpp"
#include "adapop/idproto.hpp"
#include "adapop/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCap = 2;
constexpr int kExitFailed = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FunctionFlags {
    std::string function;
    std::size_t n = 0;
    std::optional<std::size_t> k;

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--function", function, "onemax | leadingones | jump | ridge")->required();
        cmd.add_option("--n", n, "bit-string length")->required();
        cmd.add_option("--k", k, "jump gap width (jump only)");
    }

    adapop::FitnessFunction make() const
    {
        const auto kind = adapop::parse_function_kind(function);
        if (!kind)
            throw UsageError("unknown function '" + function + "'");
        if (k && *kind != adapop::FunctionKind::Jump)
            throw UsageError("--k is only valid with --function jump");
        if (*kind == adapop::FunctionKind::Jump && !k)
            throw UsageError("--function jump requires --k");
        try {
            return adapop::FitnessFunction(*kind, n, k.value_or(0));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

std::uint64_t parse_seed(const std::string& text, const char* what)
{
    try {
        std::size_t used = 0;
        const auto value = std::stoull(text, &used, 0);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    }
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag)
{
    if (flag)
        return parse_seed(*flag, "--seed");
    if (const char* env = std::getenv("ADAPOP_SEED"))
        return parse_seed(env, "ADAPOP_SEED");
    throw UsageError("--seed is required (or set ADAPOP_SEED)");
}

void apply_threads(std::optional<int> threads)
{
    if (!threads)
        return;
    if (*threads < 1)
        throw UsageError("--threads must be at least 1");
    omp_set_num_threads(*threads);
}

std::optional<std::uint64_t> optional_cap(std::optional<std::uint64_t> value)
{
    if (value && *value == 0)
        return std::nullopt;
    return value;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive parallel evolutionary algorithms: runs, bounds, experiments"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "single run; prints the run record as JSON");
    FunctionFlags run_fn;
    run_fn.add_to(*run_cmd);
    std::string scheme;
    double base = 2.0;
    std::optional<std::uint64_t> mu_max;
    std::uint64_t mu_min = 1;
    std::uint64_t tau = 1;
    std::optional<std::string> seed;
    std::uint64_t max_generations = 1'000'000'000;
    std::uint64_t max_evals = 1'000'000'000;
    std::optional<int> threads;
    bool trajectory = false;
    run_cmd->add_option("--scheme", scheme, "a | b | jdw | additive | nonoblivious | constant")->required();
    run_cmd->add_option("--base", base, "growth base b > 1");
    run_cmd->add_option("--mu-max", mu_max, "population cap (0 = none)");
    run_cmd->add_option("--mu-min", mu_min, "population floor");
    run_cmd->add_option("--tau", tau, "migration interval");
    run_cmd->add_option("--seed", seed, "seed (default: $ADAPOP_SEED)");
    run_cmd->add_option("--max-generations", max_generations, "generation cap");
    run_cmd->add_option("--max-evals", max_evals, "evaluation cap");
    run_cmd->add_option("--threads", threads, "worker threads");
    run_cmd->add_flag("--trajectory", trajectory, "include the population-update trajectory");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "upper and lower bounds for a preset profile as JSON");
    FunctionFlags bounds_fn;
    bounds_fn.add_to(*bounds_cmd);
    double chi = 1.0;
    double c = 1.0;
    std::optional<std::uint64_t> bounds_mu_max;
    std::uint64_t bounds_tau = 1;
    double bounds_base = 2.0;
    bounds_cmd->add_option("--chi", chi, "mutation constant of the lower bound");
    bounds_cmd->add_option("--c", c, "mutation rate c/n of the lower bound");
    bounds_cmd->add_option("--mu-max", bounds_mu_max, "population cap (0 = none)");
    bounds_cmd->add_option("--tau", bounds_tau, "migration interval");
    bounds_cmd->add_option("--base", bounds_base, "growth base b > 1");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark file; writes CSV, JSON and SVG");
    std::string bench_file;
    std::string out_dir = "bench_out";
    std::optional<int> bench_threads;
    bench_cmd->add_option("spec", bench_file, "benchmark JSON file")->required();
    bench_cmd->add_option("--out", out_dir, "output directory");
    bench_cmd->add_option("--threads", bench_threads, "worker threads");

    // idsim
    auto* idsim_cmd = app.add_subcommand("idsim", "processor-ID protocol replay; prints JSON lines");
    std::optional<std::size_t> steps;
    std::optional<std::string> idsim_seed;
    std::optional<std::string> trace;
    std::size_t max_depth = 10;
    idsim_cmd->add_option("--steps", steps, "number of random outcomes");
    idsim_cmd->add_option("--seed", idsim_seed, "seed (default: $ADAPOP_SEED)");
    idsim_cmd->add_option("--trace", trace, "outcome trace: a file, or a literal such as ffs");
    idsim_cmd->add_option("--max-depth", max_depth, "largest ID length for random outcomes")
        ->check(CLI::Range(std::size_t{0}, adapop::idproto::kMaxIdLength));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run_cmd) {
            apply_threads(threads);
            adapop::RunConfig cfg;
            cfg.function = run_fn.make();
            const auto kind = adapop::parse_scheme_kind(scheme);
            if (!kind)
                throw UsageError("unknown scheme '" + scheme + "'");
            cfg.policy = {*kind, base, optional_cap(mu_max), mu_min};
            cfg.migration_interval = tau;
            cfg.seed = resolve_seed(seed);
            cfg.max_generations = max_generations;
            cfg.max_evaluations = max_evals;
            cfg.record_trajectory = trajectory;
            try {
                cfg.validate();
            } catch (const adapop::ConfigError& e) {
                throw UsageError(e.what());
            }
            const auto record = adapop::run(cfg);
            std::cout << adapop::to_json(record).dump() << '\n';
            return record.hit_cap ? kExitCap : kExitOk;
        }

        if (*bounds_cmd) {
            const auto f = bounds_fn.make();
            adapop::BoundParameters params;
            params.base = bounds_base;
            params.mu_max = optional_cap(bounds_mu_max);
            params.tau = bounds_tau;
            params.chi = chi;
            params.c = c;
            adapop::BoundReport report;
            try {
                params.validate();
                report = adapop::compute_bound_report(adapop::level_profile_preset(f), f.n(), params);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            std::cout << adapop::to_json(report).dump(2) << '\n';
            return kExitOk;
        }

        if (*bench_cmd) {
            apply_threads(bench_threads);
            adapop::BenchPlan plan;
            try {
                plan = adapop::load_bench_plan(bench_file);
                plan.validate();
            } catch (const adapop::ConfigError& e) {
                throw UsageError(bench_file + ": " + e.what());
            } catch (const std::runtime_error& e) {
                throw UsageError(e.what());
            }
            const auto outcome = adapop::run_bench(plan);
            for (const auto& path : adapop::write_bench_outputs(outcome, out_dir))
                std::cerr << "wrote " << path.string() << '\n';
            std::cout << (outcome.passed() ? "PASS " : "FAIL ") << plan.name << '\n';
            return outcome.passed() ? kExitOk : kExitFailed;
        }

        if (*idsim_cmd) {
            std::vector<adapop::idproto::Outcome> outcomes;
            if (trace && steps)
                throw UsageError("--trace and --steps are exclusive");
            if (trace) {
                std::string text = *trace;
                if (std::ifstream file{*trace}) {
                    std::ostringstream buf;
                    buf << file.rdbuf();
                    text = buf.str();
                }
                try {
                    outcomes = adapop::idproto::parse_trace(text);
                } catch (const std::invalid_argument& e) {
                    throw UsageError("malformed trace '" + *trace + "': " + e.what());
                }
            } else if (steps) {
                adapop::MutationRng rng(resolve_seed(idsim_seed), 0);
                outcomes = adapop::idproto::random_outcomes(*steps, max_depth, rng);
            } else {
                throw UsageError("idsim needs --steps or --trace");
            }
            const auto result = adapop::idproto::replay(outcomes);
            for (const auto& point : result.trajectory)
                std::cout << adapop::idproto::to_json(point).dump() << '\n';
            if (result.violation) {
                std::cerr << "invariant violated: " << *result.violation << '\n';
                return kExitFailed;
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
