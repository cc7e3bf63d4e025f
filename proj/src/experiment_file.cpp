#include "adapop/experiment_file.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace adapop {

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& obj, const char* key, T fallback)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

FunctionKind function_kind(const std::string& name)
{
    auto kind = parse_function_kind(name);
    if (!kind)
        throw ConfigError("unknown function '" + name + "'");
    return *kind;
}

SchemeKind scheme_kind(const std::string& name)
{
    auto kind = parse_scheme_kind(name);
    if (!kind)
        throw ConfigError("unknown scheme '" + name + "'");
    return *kind;
}

Measure measure_of(const std::string& name)
{
    if (name == "parallel" || name == "t_par")
        return Measure::Parallel;
    if (name == "sequential" || name == "t_seq")
        return Measure::Sequential;
    throw ConfigError("unknown measure '" + name + "' (use parallel or sequential)");
}

std::optional<std::uint64_t> optional_cap(const json& value)
{
    if (value.is_null())
        return std::nullopt;
    const auto cap = value.get<std::uint64_t>();
    if (cap == 0)
        return std::nullopt;
    return cap;
}

SeriesSelector parse_selector(const json& obj)
{
    SeriesSelector s;
    s.function = function_kind(get_or<std::string>(obj, "function", "leadingones"));
    s.k = get_or<std::size_t>(obj, "k", 0);
    s.scheme = scheme_kind(get_or<std::string>(obj, "scheme", "b"));
    s.base = get_or<double>(obj, "base", 2.0);
    s.tau = get_or<std::uint64_t>(obj, "tau", 1);
    if (obj.contains("mu_max"))
        s.mu_max = optional_cap(obj["mu_max"]);
    return s;
}

ExperimentSpec parse_grid(const json& grid, const json& doc)
{
    ExperimentSpec spec;
    for (const auto& fn : grid.value("functions", json::array())) {
        if (fn.is_string())
            spec.functions.push_back({function_kind(fn.get<std::string>()), 0});
        else
            spec.functions.push_back({function_kind(get_or<std::string>(fn, "kind", "")), get_or<std::size_t>(fn, "k", 0)});
    }
    spec.n_values = get_or<std::vector<std::size_t>>(grid, "n", {});
    for (const auto& s : get_or<std::vector<std::string>>(grid, "schemes", {}))
        spec.schemes.push_back(scheme_kind(s));
    spec.bases = get_or<std::vector<double>>(grid, "bases", {2.0});
    if (grid.contains("mu_max")) {
        spec.mu_maxes.clear();
        for (const auto& v : grid["mu_max"])
            spec.mu_maxes.push_back(optional_cap(v));
    }
    spec.taus = get_or<std::vector<std::uint64_t>>(grid, "tau", {1});
    spec.mu_min = get_or<std::uint64_t>(grid, "mu_min", 1);
    spec.trials = get_or<std::size_t>(grid, "trials", 100);
    spec.max_evaluations = get_or<std::uint64_t>(grid, "max_evaluations", 1'000'000'000);
    spec.master_seed = get_or<std::uint64_t>(doc, "master_seed", 0);
    spec.confidence = get_or<double>(doc, "confidence", 0.95);
    spec.validate();
    return spec;
}

bool matches(const RunConfig& cfg, const SeriesSelector& s)
{
    return cfg.function.kind() == s.function && cfg.function.k() == (s.function == FunctionKind::Jump ? s.k : 0)
           && cfg.policy.kind == s.scheme && cfg.policy.base == s.base && cfg.migration_interval == s.tau
           && cfg.policy.mu_max == s.mu_max;
}

std::vector<CellSummary> cells_of(const ExperimentResult& result, const SeriesSelector& selector)
{
    std::vector<CellSummary> out;
    for (auto idx : select_series(result, selector))
        out.push_back(result.cells[idx]);
    return out;
}

ScalingFit fit_series(const ExperimentResult& result, const SeriesSelector& selector, Measure measure)
{
    std::vector<double> ns, means;
    for (const auto& cell : cells_of(result, selector)) {
        ns.push_back(static_cast<double>(cell.config.function.n()));
        means.push_back(measure == Measure::Parallel ? cell.t_par.mean : cell.t_seq.mean);
    }
    return scaling_fit(ns, means);
}

} // namespace

void BenchPlan::validate() const
{
    if (!grid && tail_checks.empty())
        throw ConfigError("bench plan has neither a grid nor tail checks");
    if (grid)
        grid->validate();
    if (!grid && (!scaling.empty() || !comparisons.empty() || !peak_checks.empty()))
        throw ConfigError("scaling, comparison and peak checks need a grid");
}

namespace {

BenchPlan parse_plan(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("bench plan must be a JSON object");
    const int version = get_or<int>(doc, "schema_version", -1);
    if (version != kBenchSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(version) + " (expected "
                          + std::to_string(kBenchSchemaVersion) + ")");
    BenchPlan plan;
    plan.name = get_or<std::string>(doc, "name", "bench");
    if (doc.contains("grid"))
        plan.grid = parse_grid(doc["grid"], doc);
    for (const auto& item : doc.value("scaling", json::array())) {
        ScalingRequirement req;
        req.series = parse_selector(item);
        req.measure = measure_of(get_or<std::string>(item, "measure", "parallel"));
        if (item.contains("min_slope"))
            req.min_slope = item["min_slope"].get<double>();
        if (item.contains("max_slope"))
            req.max_slope = item["max_slope"].get<double>();
        if (item.contains("steeper_than"))
            req.steeper_than = scheme_kind(item["steeper_than"].get<std::string>());
        plan.scaling.push_back(req);
    }
    for (const auto& item : doc.value("comparisons", json::array())) {
        ComparisonRequirement req;
        req.numerator = parse_selector(item);
        req.numerator.scheme = scheme_kind(get_or<std::string>(item, "numerator", "a"));
        req.denominator = scheme_kind(get_or<std::string>(item, "denominator", "b"));
        req.measure = measure_of(get_or<std::string>(item, "measure", "parallel"));
        req.expect_increasing = get_or<std::string>(item, "expect", "increasing") == "increasing";
        plan.comparisons.push_back(req);
    }
    for (const auto& item : doc.value("tail_checks", json::array())) {
        TailCheckSpec spec;
        spec.p = get_or<double>(item, "p", 0.01);
        spec.k = get_or<unsigned>(item, "k", 0);
        spec.upper_alphas = get_or<std::vector<unsigned>>(item, "upper_alphas", {0, 1, 2});
        spec.lower_alphas = get_or<std::vector<unsigned>>(item, "lower_alphas", {1, 2, 3});
        spec.trials = get_or<std::size_t>(item, "trials", 10'000);
        spec.seed = get_or<std::uint64_t>(item, "seed", get_or<std::uint64_t>(doc, "master_seed", 0));
        if (!(spec.p > 0.0 && spec.p <= 1.0) || spec.trials < 1000)
            throw ConfigError("tail check needs 0 < p <= 1 and at least 1000 trials");
        plan.tail_checks.push_back(spec);
    }
    for (const auto& item : doc.value("peak_checks", json::array())) {
        PeakCheckSpec spec;
        spec.series = parse_selector(item);
        spec.betas = get_or<std::vector<double>>(item, "betas", {2.0, 4.0});
        plan.peak_checks.push_back(spec);
    }
    plan.validate();
    return plan;
}

} // namespace

BenchPlan parse_bench_plan(const json& doc)
{
    try {
        return parse_plan(doc);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed bench plan: ") + e.what());
    }
}

BenchPlan load_bench_plan(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open bench plan '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("cannot parse bench plan '" + path.string() + "': " + e.what());
    }
    return parse_bench_plan(doc);
}

bool BenchOutcome::passed() const noexcept
{
    auto ok = [](const auto& v) { return std::all_of(v.begin(), v.end(), [](const auto& x) { return x.pass; }); };
    return (!experiment || experiment->passed()) && ok(scaling) && ok(comparisons) && ok(tail_checks)
           && ok(peak_checks);
}

std::vector<std::size_t> select_series(const ExperimentResult& result, const SeriesSelector& selector)
{
    std::vector<std::size_t> idx;
    for (std::size_t c = 0; c < result.cells.size(); ++c)
        if (matches(result.cells[c].config, selector))
            idx.push_back(c);
    if (idx.empty())
        throw std::invalid_argument("no grid cell matches the requested series ("
                                    + std::string(to_string(selector.function)) + ", scheme "
                                    + std::string(to_string(selector.scheme)) + ")");
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return result.cells[a].config.function.n() < result.cells[b].config.function.n();
    });
    return idx;
}

BenchOutcome run_bench(const BenchPlan& plan)
{
    plan.validate();
    BenchOutcome out;
    out.name = plan.name;
    if (plan.grid)
        out.experiment = run_experiment(*plan.grid);

    for (const auto& req : plan.scaling) {
        ScalingOutcome o;
        o.requirement = req;
        o.fit = fit_series(*out.experiment, req.series, req.measure);
        o.pass = (!req.min_slope || o.fit.slope >= *req.min_slope) && (!req.max_slope || o.fit.slope <= *req.max_slope);
        if (req.steeper_than) {
            SeriesSelector other = req.series;
            other.scheme = *req.steeper_than;
            o.reference = fit_series(*out.experiment, other, req.measure);
            o.pass = o.pass && o.fit.slope > o.reference->slope;
        }
        out.scaling.push_back(o);
    }
    for (const auto& req : plan.comparisons) {
        ComparisonOutcome o;
        o.requirement = req;
        SeriesSelector denominator = req.numerator;
        denominator.scheme = req.denominator;
        const auto a = cells_of(*out.experiment, req.numerator);
        const auto b = cells_of(*out.experiment, denominator);
        o.comparison = compare_schemes(a, b, req.measure);
        o.pass = o.comparison.increasing == req.expect_increasing;
        out.comparisons.push_back(o);
    }
    for (const auto& spec : plan.tail_checks) {
        TailCheckOutcome o;
        o.spec = spec;
        o.rows = verify_tail_bounds(spec.p, spec.k, spec.upper_alphas, spec.lower_alphas, spec.trials, spec.seed);
        o.pass = std::all_of(o.rows.begin(), o.rows.end(), [](const TailCheckRow& r) { return r.pass; });
        out.tail_checks.push_back(o);
    }
    for (const auto& spec : plan.peak_checks) {
        PeakCheckOutcome o;
        o.spec = spec;
        o.pass = true;
        for (auto idx : select_series(*out.experiment, spec.series)) {
            const auto& cfg = out.experiment->cells[idx].config;
            const auto profile = level_profile_preset(cfg.function);
            PeakCheckCell cell;
            cell.n = cfg.function.n();
            cell.s_min = *std::min_element(profile.success.begin(), profile.success.end());
            cell.rows = peak_population_check(out.experiment->records_of(idx), cell.s_min, 0, spec.betas);
            for (const auto& row : cell.rows)
                o.pass = o.pass && row.pass;
            o.cells.push_back(std::move(cell));
        }
        out.peak_checks.push_back(o);
    }
    return out;
}

} // namespace adapop
