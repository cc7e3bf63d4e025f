#include "adapop/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace adapop {

namespace {

constexpr double kE = std::numbers::e;

double positive(double x) { return std::max(x, 0.0); }

void require_canonic(const LevelProfile& profile)
{
    if (!profile.canonic)
        throw std::invalid_argument("parallel-time bounds need a canonic partition");
}

// sum_{i=1}^{m-1} P(A_i) * sum_{j=i}^{m-1} term(j), with suffix sums.
template <typename Term>
double weighted_suffix_sum(const LevelProfile& profile, Term term)
{
    const std::size_t m = profile.levels();
    double suffix = 0;
    double total = 0;
    for (std::size_t i = m - 1; i >= 1; --i) {
        suffix += term(i);
        total += profile.initial[i - 1] * suffix;
    }
    return total;
}

} // namespace

void LevelProfile::validate() const
{
    if (success.empty())
        throw std::invalid_argument("a level profile needs at least two levels");
    for (double s : success)
        if (!(s > 0.0 && s <= 1.0))
            throw std::invalid_argument("success probabilities must lie in (0, 1]");
    if (initial.size() != levels())
        throw std::invalid_argument("initial distribution must have one entry per level");
    double sum = 0;
    for (double p : initial) {
        if (p < 0.0)
            throw std::invalid_argument("initial distribution has a negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("initial distribution must sum to 1");
}

LevelProfile LevelProfile::pessimistic(std::vector<double> success, bool canonic)
{
    LevelProfile profile;
    profile.success = std::move(success);
    profile.initial.assign(profile.success.size() + 1, 0.0);
    profile.initial[0] = 1.0;
    profile.canonic = canonic;
    return profile;
}

LevelProfile level_profile_preset(const FitnessFunction& f)
{
    const std::size_t n = f.n();
    const double en = kE * static_cast<double>(n);
    std::vector<double> s;
    switch (f.kind()) {
    case FunctionKind::OneMax:
        for (std::size_t i = 0; i < n; ++i)
            s.push_back(static_cast<double>(n - i) / en);
        break;
    case FunctionKind::LeadingOnes:
        s.assign(n, 1.0 / en);
        break;
    case FunctionKind::Ridge:
        return unimodal_profile(2 * n, n);
    case FunctionKind::Jump: {
        const std::size_t k = f.k();
        // Levels are indexed by fitness value f = 1..n; level n is the local optimum.
        for (std::size_t value = 1; value < k; ++value)
            s.push_back(static_cast<double>(n - value) / en);
        for (std::size_t value = k; value < n; ++value)
            s.push_back(static_cast<double>(n - (value - k)) / en);
        s.push_back(1.0 / (kE * std::pow(static_cast<double>(n), static_cast<double>(k))));
        break;
    }
    }
    return LevelProfile::pessimistic(std::move(s));
}

LevelProfile level_profile_preset(FunctionKind kind, std::size_t n, std::size_t k)
{
    return level_profile_preset(FitnessFunction(kind, n, k));
}

LevelProfile unimodal_profile(std::size_t d, std::size_t n)
{
    if (d < 2 || n == 0)
        throw std::invalid_argument("unimodal profile needs d >= 2 and n >= 1");
    return LevelProfile::pessimistic(std::vector<double>(d - 1, 1.0 / (kE * static_cast<double>(n))));
}

LevelProfile one_max_profile_uniform_init(std::size_t n)
{
    LevelProfile profile = level_profile_preset(FunctionKind::OneMax, n);
    // Binomial(n, 1/2) via lgamma to stay finite for large n.
    for (std::size_t i = 0; i <= n; ++i) {
        const double log_c = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
        profile.initial[i] = std::exp(log_c - static_cast<double>(n) * std::numbers::ln2);
    }
    const double sum = std::accumulate(profile.initial.begin(), profile.initial.end(), 0.0);
    for (auto& p : profile.initial)
        p /= sum;
    return profile;
}

DoublingBounds doubling_bounds(double p, unsigned k)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("event probability must lie in (0, 1]");
    return DoublingBounds{p, k};
}

double DoublingBounds::upper_tail_time(unsigned alpha) const
{
    return positive(std::ceil(std::log2(1.0 / p) - k)) + alpha + 1;
}

double DoublingBounds::upper_tail_probability(unsigned alpha) const
{
    return std::exp(-std::ldexp(1.0, static_cast<int>(alpha)));
}

double DoublingBounds::lower_tail_time(unsigned alpha) const
{
    return std::log2(1.0 / p) - k - alpha;
}

double DoublingBounds::lower_tail_probability(unsigned alpha) const
{
    return 2.0 * std::ldexp(1.0, -static_cast<int>(alpha));
}

double DoublingBounds::expected_parallel_low() const { return std::log2(1.0 / p) - k - 3; }

double DoublingBounds::expected_parallel_high() const
{
    return positive(std::ceil(std::log2(1.0 / p) - k)) + 2;
}

double DoublingBounds::expected_sequential_low() const
{
    return std::max(1.0 / p, std::ldexp(1.0, static_cast<int>(k)));
}

double DoublingBounds::expected_sequential_high() const
{
    return 2.0 / p + std::ldexp(1.0, static_cast<int>(k)) - 1;
}

double DoublingBounds::population_threshold(double beta) const
{
    return std::max(std::ldexp(1.0, static_cast<int>(k) + 1), 4.0 / p) * beta;
}

double fitness_level_upper(const LevelProfile& profile)
{
    profile.validate();
    return weighted_suffix_sum(profile, [&](std::size_t j) { return 1.0 / profile.s(j); });
}

TimeBounds upper_bound_scheme_a(const LevelProfile& profile)
{
    profile.validate();
    require_canonic(profile);
    TimeBounds out;
    out.seq = 2 * weighted_suffix_sum(profile, [&](std::size_t j) { return 1.0 / profile.s(j); });
    out.par = 2 * weighted_suffix_sum(profile, [&](std::size_t j) { return std::log2(2.0 / profile.s(j)); });
    return out;
}

namespace {

// The amortised Scheme-B bound, split into its additive part and its log2 part.
std::pair<double, double> scheme_b_improved_parts(const LevelProfile& profile)
{
    const std::size_t m = profile.levels();
    double fixed = 0;
    double logs = 0;
    // rises[i] = sum_{j=i+1}^{m-1} (log2(1/s_j) - log2(1/s_{j-1}))^+
    std::vector<double> rises(m, 0.0);
    for (std::size_t i = m - 2; i >= 1; --i)
        rises[i] = rises[i + 1] + positive(std::log2(1.0 / profile.s(i + 1)) - std::log2(1.0 / profile.s(i)));
    for (std::size_t i = 1; i <= m - 1; ++i) {
        const double w = profile.initial[i - 1];
        if (w == 0.0)
            continue;
        fixed += w * 3.0 * static_cast<double>(m - i - 1);
        logs += w * (std::log2(1.0 / profile.s(i)) + rises[i]);
    }
    return {fixed, logs};
}

} // namespace

double scheme_b_improved_general(const LevelProfile& profile)
{
    profile.validate();
    require_canonic(profile);
    auto [fixed, logs] = scheme_b_improved_parts(profile);
    return fixed + logs;
}

double scheme_b_improved_monotone(const LevelProfile& profile)
{
    profile.validate();
    require_canonic(profile);
    const std::size_t m = profile.levels();
    const double last = std::log2(1.0 / profile.s(m - 1));
    double total = 0;
    for (std::size_t i = 1; i <= m - 1; ++i)
        total += profile.initial[i - 1] * (3.0 * static_cast<double>(m - i - 1) + last);
    return total;
}

SchemeBBounds upper_bound_scheme_b(const LevelProfile& profile, std::size_t n)
{
    const TimeBounds a = upper_bound_scheme_a(profile);
    SchemeBBounds out;
    out.seq = 1.5 * a.seq;
    out.par = 2.0 * a.par;
    out.par_improved = scheme_b_improved_general(profile);
    out.par_generic = 2.0 * static_cast<double>(profile.levels())
                      + static_cast<double>(n) * std::log2(static_cast<double>(n));
    return out;
}

TimeBounds upper_bound_non_oblivious(const LevelProfile& profile)
{
    profile.validate();
    const double ratio = kE / (kE - 1.0);
    const std::size_t m = profile.levels();
    TimeBounds out;
    out.seq = 2 * ratio * weighted_suffix_sum(profile, [&](std::size_t j) { return 1.0 / profile.s(j); });
    for (std::size_t i = 1; i <= m - 1; ++i)
        out.par += profile.initial[i - 1] * ratio * static_cast<double>(m - i);
    return out;
}

double upper_bound_mumax(const LevelProfile& profile, std::uint64_t mu_max)
{
    profile.validate();
    if (mu_max < 1)
        throw std::invalid_argument("mu_max must be at least 1");
    const auto m = static_cast<double>(profile.levels());
    double inverse_sum = 0;
    for (double s : profile.success)
        inverse_sum += 1.0 / s;
    const auto cap = static_cast<double>(mu_max);
    return m * (std::log2(cap) + 2.0) + 2.0 / cap * inverse_sum;
}

double lower_bound_tight(const LevelProfile& profile, double chi, double c)
{
    if (!(chi > 0.0 && chi <= 1.0))
        throw std::invalid_argument("chi must lie in (0, 1]");
    if (!(c >= 1.0))
        throw std::invalid_argument("c must be at least 1");
    return chi / c * fitness_level_upper(profile);
}

LevelProfile migration_adjusted_profile(const LevelProfile& profile, std::uint64_t tau)
{
    if (tau < 1)
        throw std::invalid_argument("migration interval must be at least 1");
    LevelProfile out = profile;
    if (tau == 1)
        return out;
    for (auto& s : out.success)
        s = s >= 1.0 ? 1.0 : -std::expm1(static_cast<double>(tau) * std::log1p(-s));
    return out;
}

double BoundEntry::value(double base) const
{
    if (measure == Measure::Parallel)
        return fixed + (base == 2.0 ? log2_terms : log2_terms / std::log2(base));
    return base_scaled ? fixed * base / 2.0 : fixed;
}

void BoundParameters::validate() const
{
    if (!(base > 1.0))
        throw std::invalid_argument("base must exceed 1");
    if (mu_max && *mu_max < 1)
        throw std::invalid_argument("mu_max must be at least 1");
    if (tau < 1)
        throw std::invalid_argument("tau must be at least 1");
    if (!(chi > 0.0 && chi <= 1.0))
        throw std::invalid_argument("chi must lie in (0, 1]");
    if (!(c >= 1.0))
        throw std::invalid_argument("c must be at least 1");
}

double BoundReport::value(const std::string& name) const
{
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw std::out_of_range("bound report has no entry '" + name + "'");
    return it->second.value(params_.base);
}

Measure BoundReport::measure(const std::string& name) const
{
    auto it = entries_.find(name);
    if (it == entries_.end())
        throw std::out_of_range("bound report has no entry '" + name + "'");
    return it->second.measure;
}

std::vector<std::string> BoundReport::names() const
{
    std::vector<std::string> out;
    for (const auto& [name, entry] : entries_)
        out.push_back(name);
    return out;
}

BoundReport compute_bound_report(const LevelProfile& original, std::size_t n, const BoundParameters& params)
{
    params.validate();
    original.validate();
    const LevelProfile profile = migration_adjusted_profile(original, params.tau);
    const auto tau = static_cast<double>(params.tau);

    BoundReport report;
    report.params_ = params;
    report.levels_ = profile.levels();

    auto seq = [&](double value, bool scaled) {
        return BoundEntry{Measure::Sequential, tau * value, 0.0, scaled};
    };
    auto par = [&](double fixed, double logs) { return BoundEntry{Measure::Parallel, tau * fixed, tau * logs, false}; };

    const TimeBounds a = upper_bound_scheme_a(profile);
    const auto [improved_fixed, improved_logs] = scheme_b_improved_parts(profile);
    const TimeBounds no = upper_bound_non_oblivious(profile);
    const auto m = static_cast<double>(profile.levels());

    report.entries_["seq_A"] = seq(a.seq, true);
    report.entries_["par_A"] = par(0.0, a.par);
    report.entries_["seq_B"] = seq(1.5 * a.seq, true);
    report.entries_["par_B"] = par(0.0, 2.0 * a.par);
    report.entries_["par_B_improved"] = par(improved_fixed, improved_logs);
    report.entries_["par_B_generic"] = par(2.0 * m, static_cast<double>(n) * std::log2(static_cast<double>(n)));
    report.entries_["seq_no"] = seq(no.seq, false);
    report.entries_["par_no"] = par(no.par, 0.0);
    if (params.mu_max) {
        const auto cap = static_cast<double>(*params.mu_max);
        double inverse_sum = 0;
        for (double s : profile.success)
            inverse_sum += 1.0 / s;
        report.entries_["par_A_mumax"] = par(2.0 * m + 2.0 / cap * inverse_sum, m * std::log2(cap));
    }
    // Lower bounds count evaluations of the original process; no period rescaling.
    report.entries_["seq_lower_tight"] =
        BoundEntry{Measure::Sequential, lower_bound_tight(original, params.chi, params.c), 0.0, false};
    return report;
}

BoundReport base_b_adjust(const BoundReport& report, double b)
{
    if (!(b > 1.0))
        throw std::invalid_argument("base must exceed 1");
    BoundReport out = report;
    out.params_.base = b;
    return out;
}

nlohmann::json to_json(const BoundReport& report)
{
    nlohmann::json bounds = nlohmann::json::object();
    nlohmann::json measures = nlohmann::json::object();
    for (const auto& name : report.names()) {
        bounds[name] = report.value(name);
        measures[name] = report.measure(name) == Measure::Parallel ? "parallel" : "sequential";
    }
    const auto& p = report.parameters();
    nlohmann::json params = {{"base", p.base}, {"tau", p.tau}, {"chi", p.chi}, {"c", p.c}};
    params["mu_max"] = p.mu_max ? nlohmann::json(*p.mu_max) : nlohmann::json(nullptr);
    return {{"levels", report.levels()},
            {"parameters", params},
            {"bounds", bounds},
            {"measures", measures},
            {"par_B_generic_unquantified_constant", BoundReport::generic_has_unquantified_constant}};
}

} // namespace adapop
