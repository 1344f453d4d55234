#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opinionsim/errors.hpp"
#include "opinionsim/io.hpp"
#include "opinionsim/version.hpp"

namespace {

using namespace opinionsim;

// Exit codes: 0 ok, 2 configuration, 3 file I/O, 4 simulation/analysis.
enum ExitCode { kOk = 0, kConfigError = 2, kIoError = 3, kRuntimeError = 4 };

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned workers = 0;
    int repeats = 0;  // 0 = subcommand default
    std::string out_dir = ".";
    std::string format = "csv";
    std::string events = "";  // "", "on", "off"
    bool ci_profile = false;  // quick profile: 10 repeats where 100 is the default
};

std::string joined(const GlobalOptions& g, const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_absolute()) return name;
    return (std::filesystem::path(g.out_dir) / p).string();
}

void apply_event_override(const GlobalOptions& g, EventConfig& events) {
    if (g.events == "on") events.enabled = true;
    if (g.events == "off") events.enabled = false;
}

struct ScenarioCliArgs {
    std::string preset;
    std::string file;
    std::optional<int> n, t;
    std::optional<double> epsilon, pro_nin, pro_ninl, pro_nil, x_llm;
    bool classic = false;
};

ScenarioParams resolve_scenario(const ScenarioCliArgs& args, const GlobalOptions& global) {
    ScenarioParams params;
    if (!args.preset.empty() && !args.file.empty()) {
        throw ConfigError("give either --preset or --scenario, not both");
    }
    if (!args.preset.empty()) {
        const auto preset = find_preset(args.preset);
        if (!preset.has_value()) {
            throw ConfigError("unknown preset '" + args.preset + "' (see `opinionsim presets`)");
        }
        params = *preset;
    } else if (!args.file.empty()) {
        params = load_scenario_file(args.file);
    }
    if (args.n) params.group_size = *args.n;
    if (args.t) params.iterations = *args.t;
    if (args.epsilon) params.threshold = *args.epsilon;
    if (args.pro_nin) params.pro_nin = *args.pro_nin;
    if (args.pro_ninl) params.pro_ninl = *args.pro_ninl;
    if (args.pro_nil) params.pro_nil = *args.pro_nil;
    if (args.x_llm) params.x_llm = *args.x_llm;
    if (args.classic) params.classic_hk = true;
    apply_event_override(global, params.events);
    params.validate();
    return params;
}

int run_command(const GlobalOptions& global, const ScenarioCliArgs& scenario_args,
                const std::string& out, const std::string& trajectories_out,
                const std::string& graph_out) {
    ScenarioParams params = resolve_scenario(scenario_args, global);
    const int repeats = global.repeats > 0 ? global.repeats : 1;

    std::vector<Trajectory> runs;
    runs.reserve(repeats);
    for (int r = 0; r < repeats; ++r) {
        runs.push_back(run_scenario(params, rng::derive(global.seed, r)));
    }

    OutputMeta meta{scenario_config_hash(params), global.seed,
                    "repeats=" + std::to_string(repeats)};
    const std::string label = !scenario_args.preset.empty() ? scenario_args.preset : "scenario";
    const auto series = SeriesTable::from_runs(label, runs);

    const std::string path = joined(global, out);
    if (global.format == "json") {
        write_series_json(path, series, meta);
    } else {
        write_series_csv(path, series, meta);
    }
    std::cout << "wrote " << path << " (" << repeats << " run" << (repeats == 1 ? "" : "s")
              << ")\n";

    if (!trajectories_out.empty()) {
        const std::string tpath = joined(global, trajectories_out);
        write_trajectories_csv(tpath, runs, meta);
        std::cout << "wrote " << tpath << '\n';
    }
    if (!graph_out.empty()) {
        GraphConfig gc = params.graph;
        gc.n = params.group_size;
        gc.seed = rng::derive(rng::derive(global.seed, 0), rng::kGraph);
        const Graph g = generate_er(gc);
        const std::string gpath = joined(global, graph_out);
        std::ofstream gout(gpath);
        if (!gout) throw IoError("cannot write " + gpath);
        g.dump_edge_list(gout);
        std::cout << "wrote " << gpath << '\n';
    }
    return kOk;
}

int sweep_command(const GlobalOptions& global, const std::string& grid_file,
                  const std::string& out, bool resume, bool progress) {
    ParameterGrid grid =
        grid_file.empty() ? ParameterGrid::reference_defaults() : load_grid_file(grid_file);
    if (global.repeats > 0) {
        grid.repeats = global.repeats;
    } else if (global.ci_profile) {
        grid.repeats = 10;
    }
    grid.seed = global.seed;
    apply_event_override(global, grid.events);
    grid.validate();

    const std::string path = joined(global, out);
    SweepOptions options;
    options.workers = global.workers;
    options.progress_path = path + ".progress";
    options.resume = resume;
    if (progress) {
        options.on_progress = [](std::size_t done, std::size_t total) {
            if (done % 100 == 0 || done == total) {
                std::fprintf(stderr, "\rsweep: %zu/%zu combos", done, total);
                if (done == total) std::fprintf(stderr, "\n");
            }
        };
    }

    const auto results = run_sweep(grid, options);
    const auto rows = to_summary_rows(results);

    OutputMeta meta{grid_config_hash(grid), global.seed,
                    "combos=" + std::to_string(results.size())};
    if (global.format == "json") {
        write_summary_json(path, rows, meta);
    } else {
        write_summary_csv(path, rows, meta);
    }
    std::filesystem::remove(options.progress_path);
    std::cout << "wrote " << path << " (" << results.size() << " combos x "
              << grid.repeats << " repeats)\n";
    return kOk;
}

int correlate_command(const GlobalOptions& global, const std::string& in,
                      const std::string& out) {
    const auto rows = read_summary_csv(in);
    const auto cells = correlation_matrix(rows);
    OutputMeta meta{fnv1a64(in), global.seed, "rows=" + std::to_string(rows.size())};
    const std::string path = joined(global, out);
    if (global.format == "json") {
        write_correlation_json(path, cells, meta);
    } else {
        write_correlation_csv(path, cells, meta);
    }
    std::cout << "wrote " << path << " (" << cells.size() << " cells)\n";
    return kOk;
}

int extremes_command(const GlobalOptions& global, const std::string& in,
                     const std::string& indicator, const std::string& target_name, int k,
                     const std::string& category, const std::string& out) {
    const auto target = extreme_target_from_string(target_name);
    if (!target.has_value()) {
        throw ConfigError("target must be min, max or polarization; got '" + target_name + "'");
    }
    const auto group = category_group_from_string(category);
    if (!group.has_value()) throw ConfigError("unknown category '" + category + "'");

    const auto rows = read_summary_csv(in);
    const ExtremeReport report = extremal_combos(rows, indicator, *target, k, *group);

    if (out.empty()) {
        std::printf("%s %s (%s, %d combos): epsilon=%s pro_nin=%s pro_ninl=%s pro_nil=%s x_llm=%s\n",
                    to_string(report.target), report.indicator.c_str(), to_string(report.group),
                    report.combos_averaged, format_csv(report.epsilon).c_str(),
                    format_csv(report.pro_nin).c_str(), format_csv(report.pro_ninl).c_str(),
                    format_csv(report.pro_nil).c_str(), format_csv(report.x_llm).c_str());
        return kOk;
    }
    OutputMeta meta{fnv1a64(in), global.seed, ""};
    const std::string path = joined(global, out);
    std::vector<ExtremeReport> reports{report};
    if (global.format == "json") {
        write_extremes_json(path, reports, meta);
    } else {
        write_extremes_csv(path, reports, meta);
    }
    std::cout << "wrote " << path << '\n';
    return kOk;
}

int strategies_command(const GlobalOptions& global, const std::string& in,
                       const std::string& out) {
    const auto rows = read_summary_csv(in);
    const auto report = compare_extreme_strategies(rows);
    if (out.empty()) {
        for (const auto& fam : report.families) {
            std::printf("%-8s cells=%d mean_node_sd=%s mean_node_clus=%s\n", fam.family.c_str(),
                        fam.cells, format_csv(fam.mean_node_sd).c_str(),
                        format_csv(fam.mean_node_clus).c_str());
        }
        std::printf("node_sd ratio partial/none = %s\n",
                    format_csv(report.sd_ratio_partial_over_none).c_str());
        return kOk;
    }
    OutputMeta meta{fnv1a64(in), global.seed, ""};
    const std::string path = joined(global, out);
    if (global.format == "json") {
        write_strategies_json(path, report, meta);
    } else {
        write_strategies_csv(path, report, meta);
    }
    std::cout << "wrote " << path << '\n';
    return kOk;
}

int intervene_command(const GlobalOptions& global, const ScenarioCliArgs& scenario_args,
                      const std::string& kinds_csv, int count, const std::string& category,
                      int time, std::optional<double> stubbornness, const std::string& out) {
    ScenarioParams base = resolve_scenario(scenario_args, global);

    std::vector<InterventionKind> kinds;
    std::stringstream ss(kinds_csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto kind = intervention_kind_from_string(token);
        if (!kind.has_value()) throw ConfigError("unknown intervention kind '" + token + "'");
        kinds.push_back(*kind);
    }
    if (kinds.empty()) throw ConfigError("--kinds must name at least one intervention");

    const auto cat = category_from_string(category);
    if (!cat.has_value()) throw ConfigError("unknown category '" + category + "'");

    InterventionSpec spec;
    spec.count = count;
    spec.category = *cat;
    spec.time = time;
    spec.stubbornness = stubbornness;

    const int repeats = global.repeats > 0 ? global.repeats : (global.ci_profile ? 10 : 100);
    const auto study =
        run_intervention_study(base, kinds, spec, repeats, global.seed, global.workers);

    OutputMeta meta{scenario_config_hash(base), global.seed,
                    "repeats=" + std::to_string(repeats)};
    const std::string path = joined(global, out);
    if (global.format == "json") {
        write_interventions_json(path, study, meta);
    } else {
        write_interventions_csv(path, study, meta);
    }
    std::cout << "wrote " << path << '\n';
    return kOk;
}

int presets_command() {
    std::printf("%-14s %5s %5s %8s %8s %9s %8s %7s %s\n", "name", "N", "T", "epsilon", "pro_nin",
                "pro_ninl", "pro_nil", "x_llm", "mode");
    for (const auto& [name, p] : scenario_presets()) {
        std::printf("%-14s %5d %5d %8s %8s %9s %8s %7s %s\n", name.c_str(), p.group_size,
                    p.iterations, format_csv(p.threshold).c_str(), format_csv(p.pro_nin).c_str(),
                    format_csv(p.pro_ninl).c_str(), format_csv(p.pro_nil).c_str(),
                    format_csv(p.x_llm).c_str(), p.classic_hk ? "classic" : "modified");
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based opinion dynamics with LLM-influenced usage strategies"};
    app.set_version_flag("--version", std::string("opinionsim ") + opinionsim::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Master seed")->capture_default_str();
    app.add_option("--workers", global.workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--repeats", global.repeats, "Repeat count (0 = subcommand default)");
    app.add_option("--out-dir", global.out_dir, "Directory for relative output paths")
        ->capture_default_str();
    app.add_option("--format", global.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--events", global.events, "Force random events on or off")
        ->check(CLI::IsMember({"on", "off"}));
    app.add_flag("--ci", global.ci_profile,
                 "Quick profile: 10 repeats where 100 would be the default");

    ScenarioCliArgs scenario_args;
    auto add_scenario_options = [&](CLI::App* cmd) {
        cmd->add_option("--preset", scenario_args.preset, "Named scenario preset");
        cmd->add_option("--scenario", scenario_args.file, "Scenario JSON file");
        cmd->add_option("--N", scenario_args.n, "Group size");
        cmd->add_option("--T", scenario_args.t, "Iteration count");
        cmd->add_option("--epsilon", scenario_args.epsilon, "Confidence threshold");
        cmd->add_option("--pro-nin", scenario_args.pro_nin, "Proportion of NIN agents");
        cmd->add_option("--pro-ninl", scenario_args.pro_ninl, "Proportion of NINL agents");
        cmd->add_option("--pro-nil", scenario_args.pro_nil, "Proportion of NIL agents");
        cmd->add_option("--x-llm", scenario_args.x_llm, "LLM output opinion");
        cmd->add_flag("--classic", scenario_args.classic, "Unmodified bounded-confidence mode");
    };

    auto* run_cmd = app.add_subcommand("run", "Simulate one scenario and emit its series");
    std::string run_out = "series.csv";
    std::string run_traj, run_graph;
    add_scenario_options(run_cmd);
    run_cmd->add_option("--out", run_out, "Series output file")->capture_default_str();
    run_cmd->add_option("--trajectories", run_traj, "Also dump per-run trajectories (CSV)");
    run_cmd->add_option("--dump-graph", run_graph, "Dump the first run's edge list");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid and emit the summary");
    std::string sweep_grid, sweep_out = "summary.csv";
    bool sweep_resume = false, sweep_progress = false;
    sweep_cmd->add_option("--grid", sweep_grid, "Grid JSON file (default: full reference grid)");
    sweep_cmd->add_option("--out", sweep_out, "Summary output file")->capture_default_str();
    sweep_cmd->add_flag("--resume", sweep_resume, "Reuse completed combos from a progress file");
    sweep_cmd->add_flag("--progress", sweep_progress, "Print progress to stderr");

    auto* corr_cmd = app.add_subcommand("correlate", "Correlation matrix over a sweep summary");
    std::string corr_in, corr_out = "corr.csv";
    corr_cmd->add_option("--in", corr_in, "Summary CSV")->required();
    corr_cmd->add_option("--out", corr_out, "Output file")->capture_default_str();

    auto* ext_cmd = app.add_subcommand("extremes", "Average the combos attaining an extreme");
    std::string ext_in, ext_indicator = "node_diff", ext_target = "max", ext_cat = "all", ext_out;
    int ext_k = 10;
    ext_cmd->add_option("--in", ext_in, "Summary CSV")->required();
    ext_cmd->add_option("--indicator", ext_indicator, "node_diff|node_conv|node_sd|node_clus")
        ->capture_default_str();
    ext_cmd->add_option("--target", ext_target, "min|max|polarization")->capture_default_str();
    ext_cmd->add_option("--k", ext_k, "Top-k when no exact ties")->capture_default_str();
    ext_cmd->add_option("--category", ext_cat, "nin|ninl|nil|all")->capture_default_str();
    ext_cmd->add_option("--out", ext_out, "Output file (default: print)");

    auto* strat_cmd =
        app.add_subcommand("extreme-strategies", "Compare the pure usage-strategy families");
    std::string strat_in, strat_out;
    strat_cmd->add_option("--in", strat_in, "Summary CSV")->required();
    strat_cmd->add_option("--out", strat_out, "Output file (default: print)");

    auto* int_cmd = app.add_subcommand("intervene", "Agent-injection countermeasure study");
    std::string int_kinds = "opposite,neutral,random", int_cat = "nin", int_out = "intervene.csv";
    int int_count = -1, int_time = 0;
    std::optional<double> int_stubbornness;
    add_scenario_options(int_cmd);
    int_cmd->add_option("--base", scenario_args.preset, "Base scenario preset")
        ->excludes(int_cmd->get_option("--preset"));
    int_cmd->add_option("--kinds", int_kinds, "Comma list of opposite,neutral,random")
        ->capture_default_str();
    int_cmd->add_option("--count", int_count, "Injected agents (-1 = 10% of N)");
    int_cmd->add_option("--category", int_cat, "Category of injected agents")
        ->capture_default_str();
    int_cmd->add_option("--time", int_time, "Injection step")->capture_default_str();
    int_cmd->add_option("--stubbornness", int_stubbornness,
                        "Fixed stubbornness of injected agents (default: U[0,1])");
    int_cmd->add_option("--out", int_out, "Output file")->capture_default_str();

    auto* presets_cmd = app.add_subcommand("presets", "List the named scenario presets");

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(global.out_dir);
        if (run_cmd->parsed()) return run_command(global, scenario_args, run_out, run_traj, run_graph);
        if (sweep_cmd->parsed())
            return sweep_command(global, sweep_grid, sweep_out, sweep_resume, sweep_progress);
        if (corr_cmd->parsed()) return correlate_command(global, corr_in, corr_out);
        if (ext_cmd->parsed())
            return extremes_command(global, ext_in, ext_indicator, ext_target, ext_k, ext_cat,
                                    ext_out);
        if (strat_cmd->parsed()) return strategies_command(global, strat_in, strat_out);
        if (int_cmd->parsed())
            return intervene_command(global, scenario_args, int_kinds, int_count, int_cat,
                                     int_time, int_stubbornness, int_out);
        if (presets_cmd->parsed()) return presets_command();
    } catch (const opinionsim::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const opinionsim::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kConfigError;
    } catch (const opinionsim::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}
