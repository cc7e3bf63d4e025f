#include "adapop/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace adapop {

namespace {

double binomial_sigma(double probability, std::size_t trials)
{
    const double q = std::clamp(probability, 0.0, 1.0);
    return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

} // namespace

Statistic summarize(std::span<const double> values, double confidence)
{
    if (values.empty())
        throw std::invalid_argument("cannot summarise an empty sample");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("confidence must lie in (0, 1)");
    Statistic s;
    s.count = values.size();
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0;
    for (double v : values)
        ss += (v - s.mean) * (v - s.mean);
    s.variance = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    if (values.size() >= kMinTrialsForInterval) {
        const boost::math::normal standard;
        const double z = boost::math::quantile(standard, 0.5 + confidence / 2.0);
        s.halfwidth = z * std::sqrt(s.variance / n);
    }
    return s;
}

DoublingSample simulate_doubling(double p, unsigned k, MutationRng& rng)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("event probability must lie in (0, 1]");
    const std::uint64_t threshold = probability_threshold(p);
    DoublingSample out;
    std::uint64_t batch = std::uint64_t{1} << k;
    while (true) {
        ++out.generations;
        out.trials += batch;
        out.peak = batch;
        bool hit = false;
        for (std::uint64_t i = 0; i < batch && !hit; ++i)
            hit = p >= 1.0 || rng() < threshold;
        if (hit)
            return out;
        if (batch >= (std::uint64_t{1} << 62))
            throw std::overflow_error("doubling process did not succeed before 2^62 trials per generation");
        batch *= 2;
    }
}

std::vector<TailCheckRow> verify_tail_bounds(double p, unsigned k, std::span<const unsigned> upper_alphas,
                                             std::span<const unsigned> lower_alphas, std::size_t trials,
                                             std::uint64_t seed)
{
    if (trials < 1000)
        throw std::invalid_argument("tail checks need at least 1000 trials");
    const DoublingBounds bounds = doubling_bounds(p, k);
    std::vector<std::uint64_t> times(trials);
    const auto total = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < total; ++j) {
        MutationRng rng(seed, static_cast<std::uint64_t>(j));
        times[static_cast<std::size_t>(j)] = simulate_doubling(p, k, rng).generations;
    }

    auto fraction = [&](auto predicate) {
        const auto hits = std::count_if(times.begin(), times.end(), predicate);
        return static_cast<double>(hits) / static_cast<double>(trials);
    };

    std::vector<TailCheckRow> rows;
    for (unsigned alpha : upper_alphas) {
        TailCheckRow row;
        row.side = TailCheckRow::Side::Upper;
        row.alpha = alpha;
        row.threshold = bounds.upper_tail_time(alpha);
        row.bound = bounds.upper_tail_probability(alpha);
        row.exceedance = fraction([&](std::uint64_t t) { return static_cast<double>(t) > row.threshold; });
        row.sigma = binomial_sigma(row.bound, trials);
        row.pass = row.exceedance <= row.bound + 3.0 * row.sigma;
        rows.push_back(row);
    }
    for (unsigned alpha : lower_alphas) {
        TailCheckRow row;
        row.side = TailCheckRow::Side::Lower;
        row.alpha = alpha;
        row.threshold = bounds.lower_tail_time(alpha);
        row.bound = bounds.lower_tail_probability(alpha);
        row.exceedance = fraction([&](std::uint64_t t) { return static_cast<double>(t) <= row.threshold; });
        row.sigma = binomial_sigma(row.bound, trials);
        row.pass = row.exceedance <= row.bound + 3.0 * row.sigma;
        rows.push_back(row);
    }
    return rows;
}

void ExperimentSpec::validate() const
{
    if (functions.empty() || n_values.empty() || schemes.empty() || bases.empty() || mu_maxes.empty()
        || taus.empty())
        throw ConfigError("experiment grid is empty");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw ConfigError("confidence must lie in (0, 1)");
    for (const auto& fn : functions)
        for (auto n : n_values) {
            try {
                FitnessFunction(fn.kind, n, fn.k);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    for (double base : bases)
        for (const auto& mu_max : mu_maxes)
            UpdatePolicy{SchemeKind::B, base, mu_max, mu_min}.validate();
    for (auto tau : taus)
        if (tau < 1)
            throw ConfigError("migration interval must be at least 1");
}

std::vector<RunConfig> ExperimentSpec::cells() const
{
    validate();
    std::vector<RunConfig> out;
    for (const auto& fn : functions)
        for (auto n : n_values)
            for (auto scheme : schemes)
                for (double base : bases)
                    for (const auto& mu_max : mu_maxes)
                        for (auto tau : taus) {
                            RunConfig cfg;
                            cfg.function = FitnessFunction(fn.kind, n, fn.k);
                            cfg.policy = UpdatePolicy{scheme, base, mu_max, mu_min};
                            cfg.migration_interval = tau;
                            cfg.max_evaluations = max_evaluations;
                            cfg.seed = derive_seed(master_seed, out.size());
                            cfg.validate();
                            out.push_back(cfg);
                        }
    return out;
}

bool CellSummary::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

BoundCheck check_bound(const BoundReport& report, const std::string& name, Measure measure, const Statistic& stat)
{
    if (report.measure(name) != measure)
        throw std::logic_error("bound '" + name + "' does not bound the requested time measure");
    BoundCheck check;
    check.measure = measure;
    check.bound_name = name;
    check.bound = report.value(name);
    check.statistic = stat.upper();
    check.pass = check.statistic <= check.bound;
    return check;
}

std::vector<std::string> bound_names_for(const UpdatePolicy& policy, Measure measure)
{
    const bool par = measure == Measure::Parallel;
    switch (policy.kind) {
    case SchemeKind::A:
        if (par)
            return policy.mu_max ? std::vector<std::string>{"par_A", "par_A_mumax"} : std::vector<std::string>{"par_A"};
        return {"seq_A"};
    case SchemeKind::B:
        if (par)
            return {"par_B", "par_B_improved"};
        return {"seq_B"};
    case SchemeKind::NonOblivious:
        return {par ? "par_no" : "seq_no"};
    case SchemeKind::JdW:
    case SchemeKind::Additive:
    case SchemeKind::Constant:
        return {};
    }
    return {};
}

CellSummary summarize_cell(const RunConfig& config, std::span<const RunRecord> records, double confidence)
{
    CellSummary cell;
    cell.config = config;
    cell.trials = records.size();
    std::vector<double> par, seq;
    for (const auto& r : records) {
        par.push_back(static_cast<double>(r.t_par));
        seq.push_back(static_cast<double>(r.t_seq));
        cell.mu_peak_max = std::max(cell.mu_peak_max, r.mu_peak);
        if (r.hit_cap)
            ++cell.censored;
    }
    cell.t_par = summarize(par, confidence);
    cell.t_seq = summarize(seq, confidence);

    const LevelProfile profile = level_profile_preset(config.function);
    BoundParameters params;
    params.base = config.policy.base;
    params.mu_max = config.policy.mu_max;
    params.tau = config.migration_interval;
    cell.bounds = compute_bound_report(profile, config.function.n(), params);

    for (auto measure : {Measure::Sequential, Measure::Parallel}) {
        const Statistic& stat = measure == Measure::Parallel ? cell.t_par : cell.t_seq;
        for (const auto& name : bound_names_for(config.policy, measure))
            cell.checks.push_back(check_bound(cell.bounds, name, measure, stat));
    }
    const bool serial = config.policy.kind == SchemeKind::Constant && config.policy.clamp(1) == 1
                        && config.migration_interval == 1;
    if (serial) {
        cell.serial_bound = fitness_level_upper(profile);
        for (auto measure : {Measure::Sequential, Measure::Parallel}) {
            const Statistic& stat = measure == Measure::Parallel ? cell.t_par : cell.t_seq;
            cell.checks.push_back({measure, measure == Measure::Parallel ? "par_serial" : "seq_serial",
                                   *cell.serial_bound, stat.upper(), stat.upper() <= *cell.serial_bound});
        }
    }
    if (cell.trials < kMinTrialsForInterval)
        cell.warnings.push_back("fewer than 30 trials: no confidence interval, checks use the mean");
    if (cell.censored > 0) {
        cell.warnings.push_back(std::to_string(cell.censored) + " run(s) hit the evaluation cap; times are censored");
        for (auto& check : cell.checks)
            check.pass = false;
    }
    return cell;
}

bool ExperimentResult::passed() const noexcept
{
    return std::all_of(cells.begin(), cells.end(), [](const CellSummary& c) { return c.passed(); });
}

ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    const std::vector<RunConfig> grid = spec.cells();
    ExperimentResult result;
    result.trials = spec.trials;
    result.records = run_batch(grid, spec.trials);
    for (std::size_t c = 0; c < grid.size(); ++c)
        result.cells.push_back(summarize_cell(grid[c], result.records_of(c), spec.confidence));
    return result;
}

ScalingFit scaling_fit(std::span<const double> n_values, std::span<const double> means)
{
    if (n_values.size() != means.size())
        throw std::invalid_argument("scaling fit needs one mean per n");
    if (std::set<double>(n_values.begin(), n_values.end()).size() < 3)
        throw std::invalid_argument("scaling fit needs at least three distinct n");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (!(n_values[i] > 0.0) || !(means[i] > 0.0))
            throw std::invalid_argument("scaling fit needs positive n and means");
        x.push_back(std::log(n_values[i]));
        y.push_back(std::log(means[i]));
    }
    const double count = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / count;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / count;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

SchemeComparison compare_schemes(std::span<const CellSummary> numerator, std::span<const CellSummary> denominator,
                                 Measure measure)
{
    if (numerator.size() != denominator.size() || numerator.empty())
        throw std::invalid_argument("scheme comparison needs two equally long, non-empty series");
    SchemeComparison out;
    for (std::size_t i = 0; i < numerator.size(); ++i) {
        const auto& a = numerator[i];
        const auto& b = denominator[i];
        if (!(a.config.function == b.config.function))
            throw std::invalid_argument("compared cells differ in function or n");
        const Statistic& sa = measure == Measure::Parallel ? a.t_par : a.t_seq;
        const Statistic& sb = measure == Measure::Parallel ? b.t_par : b.t_seq;
        if (!(sb.mean > 0.0))
            throw std::invalid_argument("denominator mean must be positive");
        const double ratio = sa.mean / sb.mean;
        double hw = 0;
        if (sa.halfwidth && sb.halfwidth && sa.mean > 0.0)
            hw = ratio * std::hypot(*sa.halfwidth / sa.mean, *sb.halfwidth / sb.mean);
        out.n_values.push_back(a.config.function.n());
        out.ratios.push_back(ratio);
        out.ratio_halfwidths.push_back(hw);
    }
    for (std::size_t i = 1; i < out.ratios.size(); ++i) {
        if (out.ratios[i] > out.ratios[i - 1])
            continue;
        ++out.decreases;
        const bool overlap = out.ratios[i] + out.ratio_halfwidths[i] >= out.ratios[i - 1] - out.ratio_halfwidths[i - 1];
        if (overlap)
            ++out.excused;
    }
    out.increasing = out.decreases == 0 || (out.decreases == 1 && out.excused == 1);
    return out;
}

std::vector<PeakCheckRow> peak_population_check(std::span<const RunRecord> records, double s_min, unsigned k,
                                                std::span<const double> betas)
{
    if (records.empty())
        throw std::invalid_argument("peak population check needs records");
    const DoublingBounds bounds = doubling_bounds(s_min, k);
    std::vector<PeakCheckRow> rows;
    for (double beta : betas) {
        PeakCheckRow row;
        row.beta = beta;
        row.threshold = bounds.population_threshold(beta);
        const auto over = std::count_if(records.begin(), records.end(), [&](const RunRecord& r) {
            return static_cast<double>(r.mu_peak) > row.threshold;
        });
        row.exceedance = static_cast<double>(over) / static_cast<double>(records.size());
        row.bound = std::exp(-beta);
        row.sigma = binomial_sigma(row.bound, records.size());
        row.pass = row.exceedance <= row.bound + 3.0 * row.sigma;
        rows.push_back(row);
    }
    return rows;
}

} // namespace adapop
