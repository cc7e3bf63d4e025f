#include "adapop/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace adapop {

namespace {

using nlohmann::json;

std::string measure_name(Measure m) { return m == Measure::Parallel ? "parallel" : "sequential"; }

json cap_json(const std::optional<std::uint64_t>& cap) { return cap ? json(*cap) : json(nullptr); }

json config_json(const RunConfig& cfg)
{
    return {{"function", to_string(cfg.function.kind())},
            {"n", cfg.function.n()},
            {"k", cfg.function.k()},
            {"scheme", to_string(cfg.policy.kind)},
            {"base", cfg.policy.base},
            {"mu_max", cap_json(cfg.policy.mu_max)},
            {"mu_min", cfg.policy.mu_min},
            {"tau", cfg.migration_interval},
            {"seed", cfg.seed}};
}

json selector_json(const SeriesSelector& s)
{
    return {{"function", to_string(s.function)}, {"k", s.k},     {"scheme", to_string(s.scheme)},
            {"base", s.base},                    {"tau", s.tau}, {"mu_max", cap_json(s.mu_max)}};
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace

void write_records_csv(std::ostream& out, const ExperimentResult& result)
{
    out << "function,n,k,scheme,base,mu_max,tau,seed,t_par,t_seq,mu_peak,hit_cap\n";
    for (std::size_t c = 0; c < result.cells.size(); ++c) {
        const auto& cfg = result.cells[c].config;
        for (const auto& r : result.records_of(c)) {
            out << to_string(cfg.function.kind()) << ',' << cfg.function.n() << ',' << cfg.function.k() << ','
                << to_string(cfg.policy.kind) << ',' << cfg.policy.base << ',';
            if (cfg.policy.mu_max)
                out << *cfg.policy.mu_max;
            out << ',' << cfg.migration_interval << ',' << r.seed << ',' << r.t_par << ',' << r.t_seq << ','
                << r.mu_peak << ',' << (r.hit_cap ? 1 : 0) << '\n';
        }
    }
}

json to_json(const Statistic& stat)
{
    json out = {{"count", stat.count}, {"mean", stat.mean}, {"variance", stat.variance},
                {"min", stat.min},     {"max", stat.max}};
    if (stat.halfwidth) {
        out["ci_halfwidth"] = *stat.halfwidth;
        out["ci"] = {stat.lower(), stat.upper()};
    } else {
        out["ci_halfwidth"] = nullptr;
        out["ci"] = nullptr;
    }
    return out;
}

json to_json(const CellSummary& cell)
{
    json checks = json::array();
    for (const auto& c : cell.checks)
        checks.push_back({{"measure", measure_name(c.measure)},
                          {"bound", c.bound_name},
                          {"bound_value", c.bound},
                          {"statistic", c.statistic},
                          {"pass", c.pass}});
    json out = {{"config", config_json(cell.config)},
                {"trials", cell.trials},
                {"censored", cell.censored},
                {"t_par", to_json(cell.t_par)},
                {"t_seq", to_json(cell.t_seq)},
                {"mu_peak_max", cell.mu_peak_max},
                {"bounds", to_json(cell.bounds)},
                {"checks", checks},
                {"warnings", cell.warnings},
                {"pass", cell.passed()}};
    if (cell.serial_bound)
        out["serial_bound"] = *cell.serial_bound;
    return out;
}

json to_json(const BenchOutcome& outcome)
{
    json out = {{"schema_version", kBenchSchemaVersion}, {"name", outcome.name}, {"pass", outcome.passed()}};
    json cells = json::array();
    if (outcome.experiment)
        for (const auto& cell : outcome.experiment->cells)
            cells.push_back(to_json(cell));
    out["cells"] = cells;

    json scaling = json::array();
    for (const auto& s : outcome.scaling) {
        json item = {{"series", selector_json(s.requirement.series)},
                     {"measure", measure_name(s.requirement.measure)},
                     {"slope", s.fit.slope},
                     {"intercept", s.fit.intercept},
                     {"r_squared", s.fit.r_squared},
                     {"min_slope", s.requirement.min_slope ? json(*s.requirement.min_slope) : json(nullptr)},
                     {"max_slope", s.requirement.max_slope ? json(*s.requirement.max_slope) : json(nullptr)},
                     {"pass", s.pass}};
        if (s.reference) {
            item["steeper_than"] = to_string(*s.requirement.steeper_than);
            item["reference_slope"] = s.reference->slope;
        }
        scaling.push_back(item);
    }
    out["scaling"] = scaling;

    json comparisons = json::array();
    for (const auto& c : outcome.comparisons)
        comparisons.push_back({{"series", selector_json(c.requirement.numerator)},
                               {"numerator", to_string(c.requirement.numerator.scheme)},
                               {"denominator", to_string(c.requirement.denominator)},
                               {"measure", measure_name(c.requirement.measure)},
                               {"n", c.comparison.n_values},
                               {"ratio", c.comparison.ratios},
                               {"ratio_ci_halfwidth", c.comparison.ratio_halfwidths},
                               {"decreases", c.comparison.decreases},
                               {"excused", c.comparison.excused},
                               {"increasing", c.comparison.increasing},
                               {"pass", c.pass}});
    out["comparisons"] = comparisons;

    json tails = json::array();
    for (const auto& t : outcome.tail_checks) {
        json rows = json::array();
        for (const auto& r : t.rows)
            rows.push_back({{"side", r.side == TailCheckRow::Side::Upper ? "upper" : "lower"},
                            {"alpha", r.alpha},
                            {"threshold", r.threshold},
                            {"exceedance", r.exceedance},
                            {"bound", r.bound},
                            {"sigma", r.sigma},
                            {"pass", r.pass}});
        tails.push_back({{"p", t.spec.p}, {"k", t.spec.k}, {"trials", t.spec.trials}, {"rows", rows}, {"pass", t.pass}});
    }
    out["tail_checks"] = tails;

    json peaks = json::array();
    for (const auto& p : outcome.peak_checks) {
        json cells_json = json::array();
        for (const auto& cell : p.cells) {
            json rows = json::array();
            for (const auto& r : cell.rows)
                rows.push_back({{"beta", r.beta},
                                {"threshold", r.threshold},
                                {"exceedance", r.exceedance},
                                {"bound", r.bound},
                                {"sigma", r.sigma},
                                {"pass", r.pass}});
            cells_json.push_back({{"n", cell.n}, {"s_min", cell.s_min}, {"rows", rows}});
        }
        peaks.push_back({{"series", selector_json(p.spec.series)}, {"cells", cells_json}, {"pass", p.pass}});
    }
    out["peak_checks"] = peaks;
    return out;
}

std::string render_svg(const std::string& title, const std::string& y_label, const std::vector<PlotSeries>& series)
{
    constexpr double width = 640, height = 420, left = 70, right = 170, top = 40, bottom = 50;
    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0) || !(s.y[i] > 0))
                continue;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    if (!std::isfinite(x_lo)) {
        x_lo = y_lo = 1;
        x_hi = y_hi = 10;
    }
    const double lx0 = std::log10(x_lo), lx1 = std::max(std::log10(x_hi), lx0 + 1e-9);
    const double ly0 = std::floor(std::log10(y_lo)), ly1 = std::max(std::ceil(std::log10(y_hi)), ly0 + 1);
    auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (std::log10(y) - ly0) / (ly1 - ly0) * (height - top - bottom); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
       << height - bottom << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
       << "\" stroke=\"black\"/>\n";
    for (double e = ly0; e <= ly1 + 1e-9; e += 1) {
        const double y = py(std::pow(10.0, e));
        os << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
        os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - right << "\" y2=\"" << y
           << "\" stroke=\"#ddd\"/>\n";
    }
    std::set<double> ticks;
    for (const auto& s : series)
        ticks.insert(s.x.begin(), s.x.end());
    for (double t : ticks)
        if (t > 0)
            os << "<text x=\"" << px(t) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">" << fmt(t)
               << "</text>\n";
    os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">n</text>\n";
    os << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" transform=\"rotate(-90 16 "
       << (top + height - bottom) / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % std::size(palette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
        if (s.dashed)
            os << " stroke-dasharray=\"6 4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (s.x[i] > 0 && s.y[i] > 0)
                os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.error.size() && i < s.x.size(); ++i) {
            const double lo = std::max(s.y[i] - s.error[i], s.y[i] * 1e-3);
            os << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(s.x[i]) << "\" y2=\""
               << py(s.y[i] + s.error[i]) << "\" stroke=\"" << color << "\"/>\n";
        }
        const double ly = top + 16.0 * static_cast<double>(si);
        os << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 30
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\""
           << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        os << "<text x=\"" << width - right + 34 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path> write_bench_outputs(const BenchOutcome& outcome, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> written;

    if (outcome.experiment) {
        std::ostringstream csv;
        write_records_csv(csv, *outcome.experiment);
        written.push_back(dir / "records.csv");
        write_file(written.back(), csv.str());
    }
    written.push_back(dir / "summary.json");
    write_file(written.back(), to_json(outcome).dump(2) + "\n");

    if (!outcome.experiment)
        return written;
    // One chart per (function, k, measure): empirical means per scheme and the checked bounds.
    std::map<std::tuple<std::string, std::size_t, int>, std::vector<PlotSeries>> charts;
    std::map<std::tuple<std::string, std::size_t, int, std::string>, PlotSeries> lines;
    for (const auto& cell : outcome.experiment->cells) {
        const auto& cfg = cell.config;
        std::string tag = std::string(to_string(cfg.policy.kind));
        if (cfg.policy.base != 2.0)
            tag += " b=" + fmt(cfg.policy.base);
        if (cfg.policy.mu_max)
            tag += " mu_max=" + std::to_string(*cfg.policy.mu_max);
        if (cfg.migration_interval != 1)
            tag += " tau=" + std::to_string(cfg.migration_interval);
        for (int m = 0; m < 2; ++m) {
            const Measure measure = m == 0 ? Measure::Parallel : Measure::Sequential;
            const Statistic& stat = measure == Measure::Parallel ? cell.t_par : cell.t_seq;
            const auto key = std::make_tuple(std::string(to_string(cfg.function.kind())), cfg.function.k(), m);
            auto& mean_line = lines[std::tuple_cat(key, std::make_tuple("mean " + tag))];
            mean_line.label = "mean " + tag;
            mean_line.x.push_back(static_cast<double>(cfg.function.n()));
            mean_line.y.push_back(stat.mean);
            mean_line.error.push_back(stat.halfwidth.value_or(0.0));
            for (const auto& check : cell.checks) {
                if (check.measure != measure)
                    continue;
                auto& bound_line = lines[std::tuple_cat(key, std::make_tuple(check.bound_name + " " + tag))];
                bound_line.label = check.bound_name;
                bound_line.dashed = true;
                bound_line.x.push_back(static_cast<double>(cfg.function.n()));
                bound_line.y.push_back(check.bound);
            }
        }
    }
    for (auto& [key, line] : lines)
        charts[std::make_tuple(std::get<0>(key), std::get<1>(key), std::get<2>(key))].push_back(line);
    for (const auto& [key, series] : charts) {
        const auto& [function, k, m] = key;
        const std::string measure = m == 0 ? "t_par" : "t_seq";
        std::string name = function + (k ? "_k" + std::to_string(k) : "") + "_" + measure + ".svg";
        written.push_back(dir / name);
        write_file(written.back(), render_svg(function + (k ? " k=" + std::to_string(k) : "") + ": mean " + measure
                                                  + " vs n",
                                              measure, series));
    }
    return written;
}

} // namespace adapop
