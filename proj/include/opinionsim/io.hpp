#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opinionsim/analysis.hpp"
#include "opinionsim/indicators.hpp"
#include "opinionsim/interventions.hpp"
#include "opinionsim/model.hpp"
#include "opinionsim/sweep.hpp"

#include "json.hpp"

namespace opinionsim {

std::uint64_t fnv1a64(std::string_view s);

/// Reproducibility header written as the first line of every output file:
///   # opinionsim <version> config_hash=<16 hex> seed=<n> [extra]
struct OutputMeta {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string extra;

    std::string header_line() const;
};

/// CSV float formatting: 6 significant digits; missing values as "nan".
std::string format_csv(double v);
std::string format_csv(const std::optional<double>& v);
/// Full-precision round-trip formatting (progress files, JSON).
std::string format_full(double v);

/// Fully resolved invocation: subcommand plus everything needed to rerun it.
struct RunConfig {
    std::string subcommand = "run";
    ScenarioParams scenario;
    ParameterGrid grid;
    bool has_scenario = false;
    bool has_grid = false;

    std::uint64_t seed = 0;
    unsigned workers = 0;
    int repeats = 1;
    std::string out_dir = ".";
    std::string format = "csv";  // csv | json
    bool ci_profile = false;

    void validate() const;
    nlohmann::json to_json() const;
    std::uint64_t config_hash() const;
};

/// Strict parsers: unknown keys are rejected with the offending key named,
/// every value is range-checked, and defaults are resolved so repeated
/// parses of the same input always yield the same config.
ScenarioParams scenario_from_json(const nlohmann::json& j);
ParameterGrid grid_from_json(const nlohmann::json& j);
RunConfig run_config_from_json(const nlohmann::json& j);

nlohmann::json scenario_to_json(const ScenarioParams& params);
nlohmann::json grid_to_json(const ParameterGrid& grid);

ScenarioParams load_scenario_file(const std::string& path);
ParameterGrid load_grid_file(const std::string& path);

std::uint64_t scenario_config_hash(const ScenarioParams& params);

/// Per-iteration summary series of one scenario, pointwise-averaged over
/// repeats when there is more than one run.
struct SeriesTable {
    std::string scenario;
    std::vector<double> mean_opinion;
    std::vector<double> mean_abs_change;
    std::vector<double> std_dev;
    std::vector<double> n_clusters;

    static SeriesTable from_runs(std::string name, std::span<const Trajectory> runs);
};

// --- writers ---------------------------------------------------------------

void write_summary_csv(const std::string& path, std::span<const SummaryRow> rows,
                       const OutputMeta& meta);
void write_summary_json(const std::string& path, std::span<const SummaryRow> rows,
                        const OutputMeta& meta);

void write_series_csv(const std::string& path, const SeriesTable& series, const OutputMeta& meta);
void write_series_json(const std::string& path, const SeriesTable& series, const OutputMeta& meta);

/// Long-form per-run trajectory dump: run_id, t, agent_id, category, opinion.
void write_trajectories_csv(const std::string& path, std::span<const Trajectory> runs,
                            const OutputMeta& meta);

void write_correlation_csv(const std::string& path, std::span<const CorrelationCell> cells,
                           const OutputMeta& meta);
void write_correlation_json(const std::string& path, std::span<const CorrelationCell> cells,
                            const OutputMeta& meta);

void write_extremes_csv(const std::string& path, std::span<const ExtremeReport> reports,
                        const OutputMeta& meta);
void write_extremes_json(const std::string& path, std::span<const ExtremeReport> reports,
                         const OutputMeta& meta);

void write_strategies_csv(const std::string& path, const ExtremeStrategyReport& report,
                          const OutputMeta& meta);
void write_strategies_json(const std::string& path, const ExtremeStrategyReport& report,
                           const OutputMeta& meta);

void write_interventions_csv(const std::string& path, const InterventionStudy& study,
                             const OutputMeta& meta);
void write_interventions_json(const std::string& path, const InterventionStudy& study,
                              const OutputMeta& meta);

// --- readers ---------------------------------------------------------------

std::vector<SummaryRow> read_summary_csv(const std::string& path);
SeriesTable read_series_csv(const std::string& path);

}  // namespace opinionsim
