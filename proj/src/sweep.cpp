#include "opinionsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "opinionsim/errors.hpp"
#include "opinionsim/io.hpp"

namespace opinionsim {

ParameterGrid ParameterGrid::reference_defaults() {
    ParameterGrid grid;
    grid.epsilon_values.clear();
    for (int i = 0; i <= 10; ++i) grid.epsilon_values.push_back(i / 10.0);
    grid.x_llm_values.clear();
    for (int i = 0; i <= 10; ++i) grid.x_llm_values.push_back((i - 5) / 5.0);
    grid.proportion_step = 0.1;
    grid.group_size = 100;
    grid.iterations = 100;
    grid.repeats = 100;
    return grid;
}

void ParameterGrid::validate() const {
    if (epsilon_values.empty()) throw ConfigError("grid.epsilon_values must not be empty");
    if (x_llm_values.empty()) throw ConfigError("grid.x_llm_values must not be empty");
    for (double e : epsilon_values) {
        if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("grid.epsilon_values must lie in [0, 1]");
    }
    for (double x : x_llm_values) {
        if (!(x >= -1.0 && x <= 1.0)) throw ConfigError("grid.x_llm_values must lie in [-1, 1]");
    }
    if (fixed_proportions.empty()) {
        if (!(proportion_step > 0.0 && proportion_step <= 1.0)) {
            throw ConfigError("grid.proportion_step must lie in (0, 1]");
        }
        const double m = 1.0 / proportion_step;
        if (std::abs(m - std::round(m)) > 1e-9) {
            throw ConfigError("grid.proportion_step must divide 1 evenly, got " +
                              std::to_string(proportion_step));
        }
    } else {
        for (const auto& p : fixed_proportions) {
            if (std::abs(p[0] + p[1] + p[2] - 1.0) > 1e-9) {
                throw ConfigError("grid.fixed_proportions triples must sum to 1");
            }
        }
    }
    if (group_size < 2) throw ConfigError("grid.group_size must be >= 2");
    if (iterations < 0) throw ConfigError("grid.iterations must be >= 0");
    if (repeats < 1) throw ConfigError("grid.repeats must be >= 1");
    events.validate();
    GraphConfig g = graph;
    g.n = group_size;
    g.validate();
}

std::vector<std::array<double, 3>> proportion_triples(double step) {
    const double exact_m = 1.0 / step;
    const int m = static_cast<int>(std::round(exact_m));
    if (std::abs(exact_m - m) > 1e-9) {
        throw ConfigError("proportion step must divide 1 evenly, got " + std::to_string(step));
    }
    std::vector<std::array<double, 3>> triples;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
            const int k = m - i - j;
            triples.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m,
                               static_cast<double>(k) / m});
        }
    }
    return triples;
}

std::vector<ScenarioParams> enumerate_grid(const ParameterGrid& grid) {
    grid.validate();
    const auto triples = grid.fixed_proportions.empty()
                             ? proportion_triples(grid.proportion_step)
                             : grid.fixed_proportions;
    std::vector<ScenarioParams> combos;
    combos.reserve(grid.epsilon_values.size() * grid.x_llm_values.size() * triples.size());
    for (double eps : grid.epsilon_values) {
        for (double x : grid.x_llm_values) {
            for (const auto& pro : triples) {
                ScenarioParams p;
                p.group_size = grid.group_size;
                p.iterations = grid.iterations;
                p.threshold = eps;
                p.pro_nin = pro[0];
                p.pro_ninl = pro[1];
                p.pro_nil = pro[2];
                p.x_llm = x;
                p.events = grid.events;
                p.graph = grid.graph;
                p.record_cluster_series = false;  // sweeps only use final-state indicators
                p.seed = grid.seed;
                combos.push_back(std::move(p));
            }
        }
    }
    return combos;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t combo_index, int repeat) {
    return rng::derive(rng::derive(master_seed, 0xC0DEBA5EULL + combo_index),
                       static_cast<std::uint64_t>(repeat));
}

void parallel_for_indexed(std::size_t count, unsigned workers,
                          const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t grid_config_hash(const ParameterGrid& grid) {
    return fnv1a64(grid_to_json(grid).dump());
}

namespace {

// Progress file: one header line tying the file to the grid config, then one
// line per completed combo with full-precision indicator values.
constexpr int kProgressFields = 1 + 4 * 4;  // combo index + 4 groups x 4 indicators

std::string progress_header(std::uint64_t config_hash) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "# sweep-progress config_hash=%016llx",
                  static_cast<unsigned long long>(config_hash));
    return buf;
}

std::string progress_line(std::size_t combo_index, const ComboResult& result) {
    std::string line = std::to_string(combo_index);
    for (const auto& set : result.indicators) {
        for (const auto* v : {&set.node_diff, &set.node_conv, &set.node_sd, &set.node_clus}) {
            line += ',';
            line += v->has_value() ? format_full(**v) : "nan";
        }
    }
    return line;
}

bool parse_progress_line(const std::string& line, std::size_t combo_count,
                         std::size_t& combo_index, std::array<IndicatorSet, 4>& sets) {
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != kProgressFields) return false;
    try {
        combo_index = std::stoull(fields[0]);
    } catch (const std::exception&) {
        return false;
    }
    if (combo_index >= combo_count) return false;
    std::size_t at = 1;
    for (std::size_t g = 0; g < 4; ++g) {
        sets[g].group = static_cast<CategoryGroup>(g);
        std::optional<double>* slots[4] = {&sets[g].node_diff, &sets[g].node_conv,
                                           &sets[g].node_sd, &sets[g].node_clus};
        for (auto* slot : slots) {
            const std::string& f = fields[at++];
            if (f == "nan") {
                *slot = std::nullopt;
            } else {
                try {
                    *slot = std::stod(f);
                } catch (const std::exception&) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

std::vector<ComboResult> run_sweep(const ParameterGrid& grid, const SweepOptions& options) {
    const auto combos = enumerate_grid(grid);
    const std::size_t total = combos.size();
    std::vector<ComboResult> results(total);
    std::vector<char> done(total, 0);
    const std::uint64_t config_hash = grid_config_hash(grid);

    std::ofstream progress_out;
    std::mutex progress_mutex;
    std::size_t completed = 0;

    if (!options.progress_path.empty()) {
        if (options.resume && std::filesystem::exists(options.progress_path)) {
            std::ifstream in(options.progress_path);
            if (!in) throw IoError("cannot read progress file " + options.progress_path);
            std::string line;
            bool header_ok = false;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                if (line.front() == '#') {
                    header_ok = line == progress_header(config_hash);
                    if (!header_ok) {
                        throw ConfigError("progress file " + options.progress_path +
                                          " belongs to a different sweep configuration");
                    }
                    continue;
                }
                std::size_t index = 0;
                std::array<IndicatorSet, 4> sets;
                if (!header_ok || !parse_progress_line(line, total, index, sets)) {
                    continue;  // torn tail line from an interrupted writer
                }
                if (done[index]) continue;
                results[index].params = combos[index];
                results[index].indicators = sets;
                results[index].repeats = grid.repeats;
                for (auto& s : results[index].indicators) s.repeats = grid.repeats;
                done[index] = 1;
                ++completed;
            }
            in.close();
        }
        // Rewrite from the parsed state so an interrupted trailing line
        // cannot corrupt appended entries.
        progress_out.open(options.progress_path, std::ios::trunc);
        if (!progress_out) {
            throw IoError("cannot open progress file " + options.progress_path);
        }
        progress_out << progress_header(config_hash) << '\n';
        for (std::size_t c = 0; c < total; ++c) {
            if (done[c]) progress_out << progress_line(c, results[c]) << '\n';
        }
        progress_out.flush();
    }

    parallel_for_indexed(total, options.workers, [&](std::size_t c) {
        if (done[c]) return;
        const ScenarioParams& params = combos[c];
        std::array<std::vector<RunIndicators>, 4> per_group;
        for (auto& v : per_group) v.reserve(grid.repeats);
        for (int r = 0; r < grid.repeats; ++r) {
            Trajectory trajectory;
            try {
                trajectory = run_scenario(params, run_seed(grid.seed, c, r));
            } catch (const std::exception& e) {
                throw AnalysisError("sweep run failed at combo " + std::to_string(c) +
                                    ", repeat " + std::to_string(r) + ": " + e.what());
            }
            for (auto g : kCategoryGroups) {
                per_group[static_cast<std::size_t>(g)].push_back(run_indicators(trajectory, g));
            }
        }
        ComboResult& result = results[c];
        result.params = params;
        result.repeats = grid.repeats;
        for (auto g : kCategoryGroups) {
            result.indicators[static_cast<std::size_t>(g)] =
                aggregate_indicators(g, per_group[static_cast<std::size_t>(g)]);
        }
        std::lock_guard lock(progress_mutex);
        done[c] = 1;
        ++completed;
        if (progress_out.is_open()) {
            progress_out << progress_line(c, result) << '\n';
            progress_out.flush();
        }
        if (options.on_progress) options.on_progress(completed, total);
    });

    return results;
}

std::vector<SummaryRow> to_summary_rows(std::span<const ComboResult> results) {
    std::vector<SummaryRow> rows;
    rows.reserve(results.size() * 4);
    for (const auto& res : results) {
        for (auto g : kCategoryGroups) {
            const IndicatorSet& set = res.group(g);
            SummaryRow row;
            row.group_size = res.params.group_size;
            row.iterations = res.params.iterations;
            row.epsilon = res.params.threshold;
            row.pro_nin = res.params.pro_nin;
            row.pro_ninl = res.params.pro_ninl;
            row.pro_nil = res.params.pro_nil;
            row.x_llm = res.params.x_llm;
            row.group = g;
            row.node_diff = set.node_diff;
            row.node_conv = set.node_conv;
            row.node_sd = set.node_sd;
            row.node_clus = set.node_clus;
            row.repeats = res.repeats;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<std::pair<std::string, ScenarioParams>> scenario_presets() {
    auto make = [](int n, int t, double eps, double nin, double ninl, double nil, double x) {
        ScenarioParams p;
        p.group_size = n;
        p.iterations = t;
        p.threshold = eps;
        p.pro_nin = nin;
        p.pro_ninl = ninl;
        p.pro_nil = nil;
        p.x_llm = x;
        return p;
    };
    std::vector<std::pair<std::string, ScenarioParams>> presets;

    ScenarioParams g1 = make(100, 100, 0.4, 1.0, 0.0, 0.0, 0.0);
    g1.classic_hk = true;
    presets.emplace_back("G1", g1);

    presets.emplace_back("benchmark", make(100, 100, 0.4, 0.6, 0.2, 0.2, -1.0));
    presets.emplace_back("N=300", make(300, 100, 0.4, 0.6, 0.2, 0.2, -1.0));
    presets.emplace_back("T=300", make(100, 300, 0.4, 0.6, 0.2, 0.2, -1.0));
    presets.emplace_back("eps=0.8", make(100, 100, 0.8, 0.6, 0.2, 0.2, -1.0));
    presets.emplace_back("pro_NINL=0.6", make(100, 100, 0.4, 0.2, 0.6, 0.2, -1.0));
    presets.emplace_back("pro_NIL=0.6", make(100, 100, 0.4, 0.2, 0.2, 0.6, -1.0));
    presets.emplace_back("x_LLM=1", make(100, 100, 0.4, 0.6, 0.2, 0.2, 1.0));
    return presets;
}

std::optional<ScenarioParams> find_preset(std::string_view name) {
    for (const auto& [preset_name, params] : scenario_presets()) {
        if (preset_name == name) return params;
    }
    return std::nullopt;
}

}  // namespace opinionsim
