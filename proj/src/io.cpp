#include "opinionsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "opinionsim/errors.hpp"
#include "opinionsim/version.hpp"

namespace opinionsim {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string OutputMeta::header_line() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# opinionsim %s config_hash=%016llx seed=%llu", kVersion,
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(seed));
    std::string line(buf);
    if (!extra.empty()) {
        line += ' ';
        line += extra;
    }
    return line;
}

std::string format_csv(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string format_csv(const std::optional<double>& v) {
    return v.has_value() ? format_csv(*v) : "nan";
}

std::string format_full(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- config parsing ----------------------------------------------------------

namespace {

using nlohmann::json;

void require_known_keys(const json& j, const std::set<std::string>& known,
                        const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("invalid value for key '") + key + "'");
    }
}

EventConfig events_from_json(const json& j) {
    require_known_keys(j, {"enabled", "probability", "fraction", "amplitude"}, "events");
    EventConfig events;
    read_field(j, "enabled", events.enabled);
    read_field(j, "probability", events.probability);
    read_field(j, "fraction", events.fraction);
    read_field(j, "amplitude", events.amplitude);
    events.validate();
    return events;
}

json events_to_json(const EventConfig& events) {
    return json{{"enabled", events.enabled},
                {"probability", events.probability},
                {"fraction", events.fraction},
                {"amplitude", events.amplitude}};
}

GraphConfig graph_from_json(const json& j) {
    require_known_keys(j, {"edge_prob", "enforce_connected"}, "graph");
    GraphConfig graph;
    read_field(j, "edge_prob", graph.edge_prob);
    read_field(j, "enforce_connected", graph.enforce_connected);
    return graph;
}

json graph_to_json(const GraphConfig& graph) {
    return json{{"edge_prob", graph.edge_prob}, {"enforce_connected", graph.enforce_connected}};
}

}  // namespace

ScenarioParams scenario_from_json(const json& j) {
    require_known_keys(j,
                       {"preset", "N", "T", "epsilon", "pro_nin", "pro_ninl", "pro_nil", "x_llm",
                        "classic_hk", "events", "graph", "agent_thresholds", "seed"},
                       "scenario");
    ScenarioParams params;
    if (j.contains("preset")) {
        const auto name = j.at("preset").get<std::string>();
        const auto preset = find_preset(name);
        if (!preset.has_value()) throw ConfigError("unknown preset '" + name + "'");
        params = *preset;
    }
    read_field(j, "N", params.group_size);
    read_field(j, "T", params.iterations);
    read_field(j, "epsilon", params.threshold);
    read_field(j, "pro_nin", params.pro_nin);
    read_field(j, "pro_ninl", params.pro_ninl);
    read_field(j, "pro_nil", params.pro_nil);
    read_field(j, "x_llm", params.x_llm);
    read_field(j, "classic_hk", params.classic_hk);
    read_field(j, "seed", params.seed);
    if (j.contains("events")) params.events = events_from_json(j.at("events"));
    if (j.contains("graph")) params.graph = graph_from_json(j.at("graph"));
    read_field(j, "agent_thresholds", params.agent_thresholds);
    params.validate();
    return params;
}

json scenario_to_json(const ScenarioParams& params) {
    json j{{"N", params.group_size},
           {"T", params.iterations},
           {"epsilon", params.threshold},
           {"pro_nin", params.pro_nin},
           {"pro_ninl", params.pro_ninl},
           {"pro_nil", params.pro_nil},
           {"x_llm", params.x_llm},
           {"classic_hk", params.classic_hk},
           {"events", events_to_json(params.events)},
           {"graph", graph_to_json(params.graph)},
           {"seed", params.seed}};
    if (!params.agent_thresholds.empty()) j["agent_thresholds"] = params.agent_thresholds;
    return j;
}

ParameterGrid grid_from_json(const json& j) {
    require_known_keys(j,
                       {"epsilon_values", "x_llm_values", "proportion_step", "fixed_proportions",
                        "N", "T", "repeats", "seed", "events", "graph"},
                       "grid");
    ParameterGrid grid = ParameterGrid::reference_defaults();
    read_field(j, "epsilon_values", grid.epsilon_values);
    read_field(j, "x_llm_values", grid.x_llm_values);
    read_field(j, "proportion_step", grid.proportion_step);
    if (j.contains("fixed_proportions")) {
        grid.fixed_proportions.clear();
        for (const auto& triple : j.at("fixed_proportions")) {
            if (!triple.is_array() || triple.size() != 3) {
                throw ConfigError("fixed_proportions entries must be 3-element arrays");
            }
            grid.fixed_proportions.push_back(
                {triple[0].get<double>(), triple[1].get<double>(), triple[2].get<double>()});
        }
    }
    read_field(j, "N", grid.group_size);
    read_field(j, "T", grid.iterations);
    read_field(j, "repeats", grid.repeats);
    read_field(j, "seed", grid.seed);
    if (j.contains("events")) grid.events = events_from_json(j.at("events"));
    if (j.contains("graph")) grid.graph = graph_from_json(j.at("graph"));
    grid.validate();
    return grid;
}

json grid_to_json(const ParameterGrid& grid) {
    json j{{"epsilon_values", grid.epsilon_values},
           {"x_llm_values", grid.x_llm_values},
           {"proportion_step", grid.proportion_step},
           {"N", grid.group_size},
           {"T", grid.iterations},
           {"repeats", grid.repeats},
           {"seed", grid.seed},
           {"events", events_to_json(grid.events)},
           {"graph", graph_to_json(grid.graph)}};
    if (!grid.fixed_proportions.empty()) {
        json triples = json::array();
        for (const auto& t : grid.fixed_proportions) triples.push_back({t[0], t[1], t[2]});
        j["fixed_proportions"] = triples;
    }
    return j;
}

void RunConfig::validate() const {
    static const std::set<std::string> commands{"run",      "sweep",    "correlate", "extremes",
                                                "extreme-strategies", "intervene", "presets"};
    if (!commands.count(subcommand)) {
        throw ConfigError("unknown subcommand '" + subcommand + "'");
    }
    if (format != "csv" && format != "json") {
        throw ConfigError("format must be csv or json, got '" + format + "'");
    }
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (has_scenario) scenario.validate();
    if (has_grid) grid.validate();
}

json RunConfig::to_json() const {
    json j{{"subcommand", subcommand}, {"seed", seed},       {"workers", workers},
           {"repeats", repeats},       {"out_dir", out_dir}, {"format", format},
           {"ci_profile", ci_profile}};
    if (has_scenario) j["scenario"] = scenario_to_json(scenario);
    if (has_grid) j["grid"] = grid_to_json(grid);
    return j;
}

std::uint64_t RunConfig::config_hash() const { return fnv1a64(to_json().dump()); }

RunConfig run_config_from_json(const json& j) {
    require_known_keys(j,
                       {"subcommand", "scenario", "grid", "seed", "workers", "repeats", "out_dir",
                        "format", "ci_profile"},
                       "config");
    RunConfig config;
    read_field(j, "subcommand", config.subcommand);
    if (j.contains("scenario")) {
        config.scenario = scenario_from_json(j.at("scenario"));
        config.has_scenario = true;
    }
    if (j.contains("grid")) {
        config.grid = grid_from_json(j.at("grid"));
        config.has_grid = true;
    }
    read_field(j, "seed", config.seed);
    read_field(j, "workers", config.workers);
    read_field(j, "repeats", config.repeats);
    read_field(j, "out_dir", config.out_dir);
    read_field(j, "format", config.format);
    read_field(j, "ci_profile", config.ci_profile);
    config.validate();
    return config;
}

namespace {

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace

ScenarioParams load_scenario_file(const std::string& path) {
    return scenario_from_json(parse_json_file(path));
}

ParameterGrid load_grid_file(const std::string& path) {
    return grid_from_json(parse_json_file(path));
}

std::uint64_t scenario_config_hash(const ScenarioParams& params) {
    return fnv1a64(scenario_to_json(params).dump());
}

// --- series ------------------------------------------------------------------

SeriesTable SeriesTable::from_runs(std::string name, std::span<const Trajectory> runs) {
    if (runs.empty()) throw InputError("series: no runs");
    SeriesTable table;
    table.scenario = std::move(name);
    const std::size_t len = runs.front().mean_opinion.size();
    for (const auto& run : runs) {
        if (run.mean_opinion.size() != len || run.cluster_count.size() != len) {
            throw InputError("series: runs have differing lengths or missing cluster series");
        }
    }
    const double inv = 1.0 / static_cast<double>(runs.size());
    table.mean_opinion.assign(len, 0.0);
    table.mean_abs_change.assign(len, 0.0);
    table.std_dev.assign(len, 0.0);
    table.n_clusters.assign(len, 0.0);
    for (const auto& run : runs) {
        for (std::size_t t = 0; t < len; ++t) {
            table.mean_opinion[t] += run.mean_opinion[t];
            table.mean_abs_change[t] += run.mean_abs_change[t];
            table.std_dev[t] += run.std_dev[t];
            table.n_clusters[t] += run.cluster_count[t];
        }
    }
    for (std::size_t t = 0; t < len; ++t) {
        table.mean_opinion[t] *= inv;
        table.mean_abs_change[t] *= inv;
        table.std_dev[t] *= inv;
        table.n_clusters[t] *= inv;
    }
    return table;
}

// --- writers -------------------------------------------------------------------

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

constexpr const char* kSummaryHeader =
    "N,T,epsilon,pro_nin,pro_ninl,pro_nil,x_llm,category,node_diff,node_conv,node_sd,node_clus,S";

json summary_row_to_json(const SummaryRow& row) {
    auto opt = [](const std::optional<double>& v) {
        return v.has_value() ? json(*v) : json();
    };
    return json{{"N", row.group_size},
                {"T", row.iterations},
                {"epsilon", row.epsilon},
                {"pro_nin", row.pro_nin},
                {"pro_ninl", row.pro_ninl},
                {"pro_nil", row.pro_nil},
                {"x_llm", row.x_llm},
                {"category", to_string(row.group)},
                {"node_diff", opt(row.node_diff)},
                {"node_conv", opt(row.node_conv)},
                {"node_sd", opt(row.node_sd)},
                {"node_clus", opt(row.node_clus)},
                {"S", row.repeats}};
}

void write_json_document(const std::string& path, const OutputMeta& meta, json payload) {
    json doc{{"tool", "opinionsim"},
             {"version", kVersion},
             {"config_hash", meta.config_hash},
             {"seed", meta.seed}};
    if (!meta.extra.empty()) doc["note"] = meta.extra;
    doc["data"] = std::move(payload);
    write_text(path, doc.dump(2) + "\n");
}

}  // namespace

void write_summary_csv(const std::string& path, std::span<const SummaryRow> rows,
                       const OutputMeta& meta) {
    std::string text = meta.header_line() + "\n" + kSummaryHeader + "\n";
    for (const auto& row : rows) {
        text += std::to_string(row.group_size) + ',' + std::to_string(row.iterations) + ',' +
                format_csv(row.epsilon) + ',' + format_csv(row.pro_nin) + ',' +
                format_csv(row.pro_ninl) + ',' + format_csv(row.pro_nil) + ',' +
                format_csv(row.x_llm) + ',' + to_string(row.group) + ',' +
                format_csv(row.node_diff) + ',' + format_csv(row.node_conv) + ',' +
                format_csv(row.node_sd) + ',' + format_csv(row.node_clus) + ',' +
                std::to_string(row.repeats) + '\n';
    }
    write_text(path, text);
}

void write_summary_json(const std::string& path, std::span<const SummaryRow> rows,
                        const OutputMeta& meta) {
    json data = json::array();
    for (const auto& row : rows) data.push_back(summary_row_to_json(row));
    write_json_document(path, meta, std::move(data));
}

void write_series_csv(const std::string& path, const SeriesTable& series, const OutputMeta& meta) {
    std::string text =
        meta.header_line() + "\nscenario,t,mean_opinion,mean_abs_change,std_dev,n_clusters\n";
    for (std::size_t t = 0; t < series.mean_opinion.size(); ++t) {
        text += series.scenario + ',' + std::to_string(t) + ',' +
                format_csv(series.mean_opinion[t]) + ',' + format_csv(series.mean_abs_change[t]) +
                ',' + format_csv(series.std_dev[t]) + ',' + format_csv(series.n_clusters[t]) +
                '\n';
    }
    write_text(path, text);
}

void write_series_json(const std::string& path, const SeriesTable& series, const OutputMeta& meta) {
    json data{{"scenario", series.scenario},
              {"mean_opinion", series.mean_opinion},
              {"mean_abs_change", series.mean_abs_change},
              {"std_dev", series.std_dev},
              {"n_clusters", series.n_clusters}};
    write_json_document(path, meta, std::move(data));
}

void write_trajectories_csv(const std::string& path, std::span<const Trajectory> runs,
                            const OutputMeta& meta) {
    std::string text = meta.header_line() + "\nrun_id,t,agent_id,category,opinion\n";
    for (std::size_t run_id = 0; run_id < runs.size(); ++run_id) {
        const Trajectory& run = runs[run_id];
        for (int t = 0; t <= run.steps; ++t) {
            const auto row = run.row(t);
            for (int i = 0; i < run.agents; ++i) {
                text += std::to_string(run_id) + ',' + std::to_string(t) + ',' +
                        std::to_string(i) + ',' + to_string(run.category[i]) + ',' +
                        format_csv(row[i]) + '\n';
            }
        }
    }
    write_text(path, text);
}

void write_correlation_csv(const std::string& path, std::span<const CorrelationCell> cells,
                           const OutputMeta& meta) {
    std::string text = meta.header_line() + "\nparameter,indicator,category,r,p_value,significance,n\n";
    for (const auto& cell : cells) {
        text += cell.parameter + ',' + cell.indicator + ',' + to_string(cell.group) + ',' +
                format_csv(cell.r) + ',' + format_csv(cell.p) + ',' + cell.stars + ',' +
                std::to_string(cell.n) + '\n';
    }
    write_text(path, text);
}

void write_correlation_json(const std::string& path, std::span<const CorrelationCell> cells,
                            const OutputMeta& meta) {
    json data = json::array();
    for (const auto& cell : cells) {
        json c{{"parameter", cell.parameter},
               {"indicator", cell.indicator},
               {"category", to_string(cell.group)},
               {"significance", cell.stars},
               {"missing", cell.missing},
               {"n", cell.n}};
        c["r"] = cell.r.has_value() ? json(*cell.r) : json();
        c["p_value"] = cell.p.has_value() ? json(*cell.p) : json();
        data.push_back(std::move(c));
    }
    write_json_document(path, meta, std::move(data));
}

void write_extremes_csv(const std::string& path, std::span<const ExtremeReport> reports,
                        const OutputMeta& meta) {
    std::string text =
        meta.header_line() +
        "\nindicator,target,category,n_combos,epsilon,pro_nin,pro_ninl,pro_nil,x_llm\n";
    for (const auto& r : reports) {
        text += r.indicator + ',' + to_string(r.target) + ',' + to_string(r.group) + ',' +
                std::to_string(r.combos_averaged) + ',' + format_csv(r.epsilon) + ',' +
                format_csv(r.pro_nin) + ',' + format_csv(r.pro_ninl) + ',' +
                format_csv(r.pro_nil) + ',' + format_csv(r.x_llm) + '\n';
    }
    write_text(path, text);
}

void write_extremes_json(const std::string& path, std::span<const ExtremeReport> reports,
                         const OutputMeta& meta) {
    json data = json::array();
    for (const auto& r : reports) {
        data.push_back(json{{"indicator", r.indicator},
                            {"target", to_string(r.target)},
                            {"category", to_string(r.group)},
                            {"n_combos", r.combos_averaged},
                            {"epsilon", r.epsilon},
                            {"pro_nin", r.pro_nin},
                            {"pro_ninl", r.pro_ninl},
                            {"pro_nil", r.pro_nil},
                            {"x_llm", r.x_llm}});
    }
    write_json_document(path, meta, std::move(data));
}

void write_strategies_csv(const std::string& path, const ExtremeStrategyReport& report,
                          const OutputMeta& meta) {
    std::string text = meta.header_line() + "\n";
    text += "# family_test=welch_t node_sd_ratio_partial_over_none=" +
            format_csv(report.sd_ratio_partial_over_none) + "\n";
    text += "family,n_cells,mean_node_sd,mean_node_clus,welch_p_node_sd_vs_none,"
            "welch_p_node_clus_vs_none\n";
    for (const auto& fam : report.families) {
        text += fam.family + ',' + std::to_string(fam.cells) + ',' +
                format_csv(fam.mean_node_sd) + ',' + format_csv(fam.mean_node_clus) + ',' +
                format_csv(fam.welch_p_sd_vs_none) + ',' + format_csv(fam.welch_p_clus_vs_none) +
                '\n';
    }
    write_text(path, text);
}

void write_strategies_json(const std::string& path, const ExtremeStrategyReport& report,
                           const OutputMeta& meta) {
    json families = json::array();
    for (const auto& fam : report.families) {
        json f{{"family", fam.family},
               {"n_cells", fam.cells},
               {"mean_node_sd", fam.mean_node_sd},
               {"mean_node_clus", fam.mean_node_clus}};
        f["welch_p_node_sd_vs_none"] =
            fam.welch_p_sd_vs_none.has_value() ? json(*fam.welch_p_sd_vs_none) : json();
        f["welch_p_node_clus_vs_none"] =
            fam.welch_p_clus_vs_none.has_value() ? json(*fam.welch_p_clus_vs_none) : json();
        families.push_back(std::move(f));
    }
    write_json_document(path, meta,
                        json{{"family_test", "welch_t"},
                             {"node_sd_ratio_partial_over_none", report.sd_ratio_partial_over_none},
                             {"families", std::move(families)}});
}

void write_interventions_csv(const std::string& path, const InterventionStudy& study,
                             const OutputMeta& meta) {
    std::string text = meta.header_line() + "\n";
    text += "# injected_count=" + std::to_string(study.spec_template.resolved_count(
                                      study.base.group_size)) +
            " injected_category=" + to_string(study.spec_template.category) +
            " injection_time=" + std::to_string(study.spec_template.time) + "\n";
    text += "kind,S,mean,min,max,span,std_dev,p_vs_none\n";
    for (const auto& outcome : study.outcomes) {
        text += std::string(to_string(outcome.kind)) + ',' + std::to_string(study.repeats) + ',' +
                format_csv(outcome.mean) + ',' + format_csv(outcome.min) + ',' +
                format_csv(outcome.max) + ',' + format_csv(outcome.span) + ',' +
                format_csv(outcome.std_dev) + ',' + format_csv(outcome.p_vs_none) + '\n';
    }
    write_text(path, text);
}

void write_interventions_json(const std::string& path, const InterventionStudy& study,
                              const OutputMeta& meta) {
    json outcomes = json::array();
    for (const auto& outcome : study.outcomes) {
        json o{{"kind", to_string(outcome.kind)},
               {"S", study.repeats},
               {"mean", outcome.mean},
               {"min", outcome.min},
               {"max", outcome.max},
               {"span", outcome.span},
               {"std_dev", outcome.std_dev},
               {"final_mean_opinion", outcome.final_mean_opinion}};
        o["p_vs_none"] = outcome.p_vs_none.has_value() ? json(*outcome.p_vs_none) : json();
        outcomes.push_back(std::move(o));
    }
    write_json_document(path, meta,
                        json{{"injected_count",
                              study.spec_template.resolved_count(study.base.group_size)},
                             {"injected_category", to_string(study.spec_template.category)},
                             {"injection_time", study.spec_template.time},
                             {"outcomes", std::move(outcomes)}});
}

// --- readers -------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::optional<double> parse_optional(const std::string& s, const std::string& path) {
    if (s == "nan") return std::nullopt;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw InputError("non-numeric field '" + s + "' in " + path);
    }
}

double parse_double(const std::string& s, const std::string& path) {
    const auto v = parse_optional(s, path);
    if (!v.has_value()) throw InputError("unexpected nan field in " + path);
    return *v;
}

int parse_int(const std::string& s, const std::string& path) {
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw InputError("non-integer field '" + s + "' in " + path);
    }
}

// Returns the data lines of a CSV file after checking the column header.
std::vector<std::string> read_csv_body(const std::string& path, const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::vector<std::string> lines;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != expected_header) {
                throw InputError(path + ": unexpected columns '" + line + "' (expected '" +
                                 expected_header + "')");
            }
            header_seen = true;
            continue;
        }
        lines.push_back(line);
    }
    if (!header_seen) throw InputError(path + ": missing column header");
    return lines;
}

}  // namespace

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
    const auto lines = read_csv_body(path, kSummaryHeader);
    std::vector<SummaryRow> rows;
    rows.reserve(lines.size());
    for (const auto& line : lines) {
        const auto f = split_csv_line(line);
        if (f.size() != 13) throw InputError(path + ": expected 13 columns, got a row with " +
                                             std::to_string(f.size()));
        SummaryRow row;
        row.group_size = parse_int(f[0], path);
        row.iterations = parse_int(f[1], path);
        row.epsilon = parse_double(f[2], path);
        row.pro_nin = parse_double(f[3], path);
        row.pro_ninl = parse_double(f[4], path);
        row.pro_nil = parse_double(f[5], path);
        row.x_llm = parse_double(f[6], path);
        const auto group = category_group_from_string(f[7]);
        if (!group.has_value()) throw InputError(path + ": unknown category '" + f[7] + "'");
        row.group = *group;
        row.node_diff = parse_optional(f[8], path);
        row.node_conv = parse_optional(f[9], path);
        row.node_sd = parse_optional(f[10], path);
        row.node_clus = parse_optional(f[11], path);
        row.repeats = parse_int(f[12], path);
        rows.push_back(row);
    }
    return rows;
}

SeriesTable read_series_csv(const std::string& path) {
    const auto lines = read_csv_body(path, "scenario,t,mean_opinion,mean_abs_change,std_dev,n_clusters");
    SeriesTable table;
    for (const auto& line : lines) {
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw InputError(path + ": expected 6 columns");
        if (table.scenario.empty()) table.scenario = f[0];
        table.mean_opinion.push_back(parse_double(f[2], path));
        table.mean_abs_change.push_back(parse_double(f[3], path));
        table.std_dev.push_back(parse_double(f[4], path));
        table.n_clusters.push_back(parse_double(f[5], path));
    }
    return table;
}

}  // namespace opinionsim
