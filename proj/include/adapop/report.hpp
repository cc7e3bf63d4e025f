#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adapop/experiment_file.hpp"
#include "adapop/harness.hpp"

namespace adapop {

/// Raw per-trial records:
/// function,n,k,scheme,base,mu_max,tau,seed,t_par,t_seq,mu_peak,hit_cap
void write_records_csv(std::ostream& out, const ExperimentResult& result);

nlohmann::json to_json(const Statistic& stat);
nlohmann::json to_json(const CellSummary& cell);
nlohmann::json to_json(const BenchOutcome& outcome);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> error; // symmetric error bars; empty for none
    bool dashed = false;
};

/// Log-log line chart as a standalone SVG document.
std::string render_svg(const std::string& title, const std::string& y_label, const std::vector<PlotSeries>& series);

/// Writes records.csv, summary.json and one SVG per (function, measure) into `dir`.
/// Returns the files written. Throws std::runtime_error naming the file on I/O failure.
std::vector<std::filesystem::path> write_bench_outputs(const BenchOutcome& outcome, const std::filesystem::path& dir);

} // namespace adapop
