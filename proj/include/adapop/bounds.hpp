#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adapop/fitness.hpp"

namespace adapop {

/// Fitness-level description of a problem: m levels, success probabilities
/// s_1..s_{m-1} of leaving each non-optimal level upwards, and the initial
/// level distribution.
struct LevelProfile {
    std::vector<double> success;     // s_1..s_{m-1}
    std::vector<double> initial;     // P(A_1)..P(A_m)
    bool canonic = true;

    std::size_t levels() const noexcept { return success.size() + 1; }
    /// s_i for 1-based level i < m.
    double s(std::size_t level) const { return success.at(level - 1); }

    /// Throws std::invalid_argument unless every s_i lies in (0, 1], the
    /// initial vector has m entries and sums to 1 within 1e-9.
    void validate() const;

    /// Profile with the initial point mass on level 1.
    static LevelProfile pessimistic(std::vector<double> success, bool canonic = true);
};

/// Canonical profile of a benchmark, from the standard-mutation success probabilities:
///   OneMax       level with i ones:        s = (n - i)/(e n)
///   LeadingOnes  every level:              s = 1/(e n)
///   Ridge        every level (d = 2n):     s = 1/(e n)
///   Jump         gap level with n-f ones:  s = (n - f)/(e n)
///                slope level with j ones:  s = (n - j)/(e n)
///                local optimum (n-k ones): s = 1/(e n^k)
/// The initial distribution is the pessimistic point mass on level 1.
LevelProfile level_profile_preset(const FitnessFunction& f);
LevelProfile level_profile_preset(FunctionKind kind, std::size_t n, std::size_t k = 0);
/// Unimodal function with d function values: m = d, s = 1/(e n).
LevelProfile unimodal_profile(std::size_t d, std::size_t n);
/// OneMax profile with the exact Binomial(n, 1/2) initial level distribution.
LevelProfile one_max_profile_uniform_init(std::size_t n);

/// Runtime bounds for a process that starts with 2^k trials per generation and
/// doubles every generation until an event of probability p occurs.
struct DoublingBounds {
    double p;
    unsigned k;

    /// P(T > threshold) <= exp(-2^alpha) for threshold = ceil(log2(1/p) - k)^+ + alpha + 1.
    double upper_tail_time(unsigned alpha) const;
    double upper_tail_probability(unsigned alpha) const;
    /// P(T <= log2(1/p) - k - alpha) <= 2 * 2^-alpha.
    double lower_tail_time(unsigned alpha) const;
    double lower_tail_probability(unsigned alpha) const;

    double expected_parallel_low() const;   // strict lower end: log2(1/p) - k - 3
    double expected_parallel_high() const;  // strict upper end: ceil(log2(1/p) - k)^+ + 2
    double expected_sequential_low() const; // max(1/p, 2^k)
    double expected_sequential_high() const;// 2/p + 2^k - 1

    /// Population size not exceeded with probability >= 1 - exp(-beta): max(2^(k+1), 4/p) * beta.
    double population_threshold(double beta) const;
};

/// Throws std::invalid_argument unless 0 < p <= 1.
DoublingBounds doubling_bounds(double p, unsigned k);

struct TimeBounds {
    double seq = 0;
    double par = 0;
};

/// Classical fitness-level bound sum_i P(A_i) sum_{j>=i} 1/s_j (serial elitist EA).
double fitness_level_upper(const LevelProfile& profile);

/// Reset-to-one doubling: seq = sum P(A_i) 2 sum 1/s_j, par = sum P(A_i) 2 sum log2(2/s_j).
/// Throws std::invalid_argument if the profile is not canonic (par is only valid then).
TimeBounds upper_bound_scheme_a(const LevelProfile& profile);

struct SchemeBBounds {
    double seq = 0;
    double par = 0;
    double par_improved = 0;
    double par_generic = 0;
};

/// Halving/doubling: seq = 3/2 of A's, par = 2x A's, the amortised bound
///   sum P(A_i) (3(m-i-1) + log2(1/s_i) + sum_{j>i} (log2(1/s_j) - log2(1/s_{j-1}))^+)
/// and the generic 2m + n log2 n (plus an unquantified O(1)).
SchemeBBounds upper_bound_scheme_b(const LevelProfile& profile, std::size_t n);

/// The amortised bound above in its general form.
double scheme_b_improved_general(const LevelProfile& profile);
/// Closed form sum P(A_i) (3(m-i-1) + log2(1/s_{m-1})) for non-increasing s.
double scheme_b_improved_monotone(const LevelProfile& profile);

/// Tailored scheme using ceil(1/s_i) islands on level i.
TimeBounds upper_bound_non_oblivious(const LevelProfile& profile);

/// Reset-to-one doubling capped at mu_max islands: m (log2 mu_max + 2) + 2/mu_max sum 1/s_i.
double upper_bound_mumax(const LevelProfile& profile, std::uint64_t mu_max);

/// (chi / c) sum P(A_i) sum 1/s_j for a partition that is tight with constants chi in (0,1], c >= 1.
double lower_bound_tight(const LevelProfile& profile, double chi, double c);

/// Success probabilities over a block of tau generations: s' = 1 - (1 - s)^tau.
LevelProfile migration_adjusted_profile(const LevelProfile& profile, std::uint64_t tau);

enum class Measure { Parallel, Sequential };

/// One bound of a report. The value for growth base b is
///   parallel:    fixed + log2_terms / log2 b
///   sequential:  fixed * (b/2 if base_scaled else 1)
/// Any migration-interval factor is already folded into the parts.
struct BoundEntry {
    Measure measure = Measure::Sequential;
    double fixed = 0;
    double log2_terms = 0;
    bool base_scaled = false;

    double value(double base) const;
};

struct BoundParameters {
    double base = 2.0;
    std::optional<std::uint64_t> mu_max;
    std::uint64_t tau = 1;
    double chi = 1.0;
    double c = 1.0;

    void validate() const;
};

/// Evaluated bounds for one (profile, parameters) pair, keyed by stable names:
/// seq_A, par_A, seq_B, par_B, par_B_improved, par_B_generic, seq_no, par_no,
/// par_A_mumax (only when mu_max is set), seq_lower_tight.
class BoundReport {
public:
    BoundReport() = default;

    const BoundParameters& parameters() const noexcept { return params_; }
    std::size_t levels() const noexcept { return levels_; }

    bool contains(const std::string& name) const { return entries_.contains(name); }
    double value(const std::string& name) const;
    Measure measure(const std::string& name) const;
    std::vector<std::string> names() const;

    /// par_B_generic carries an additive O(1) that is never quantified.
    static constexpr bool generic_has_unquantified_constant = true;

    friend BoundReport compute_bound_report(const LevelProfile&, std::size_t, const BoundParameters&);
    friend BoundReport base_b_adjust(const BoundReport&, double);

private:
    BoundParameters params_;
    std::size_t levels_ = 0;
    std::map<std::string, BoundEntry> entries_;
};

/// All bounds for `profile`; `n` feeds the generic n log n term. When tau > 1
/// the bounds are evaluated on the migration-adjusted profile and scaled by tau.
BoundReport compute_bound_report(const LevelProfile& profile, std::size_t n, const BoundParameters& params = {});

/// Same report for growth base b: parallel log2 terms become log_b, the A/B
/// sequential bounds scale by b/2. Throws std::invalid_argument unless b > 1.
BoundReport base_b_adjust(const BoundReport& report, double b);

nlohmann::json to_json(const BoundReport& report);

} // namespace adapop
