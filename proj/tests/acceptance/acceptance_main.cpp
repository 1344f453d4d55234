// Acceptance suite: runs the project's quantitative exit criteria end to end
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria. The grid sweep streams through a progress file, so an
// interrupted invocation resumes instead of recomputing.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "opinionsim/analysis.hpp"
#include "opinionsim/clustering.hpp"
#include "opinionsim/errors.hpp"
#include "opinionsim/indicators.hpp"
#include "opinionsim/interventions.hpp"
#include "opinionsim/io.hpp"
#include "opinionsim/model.hpp"
#include "opinionsim/sweep.hpp"

using namespace opinionsim;

namespace {

struct Options {
    std::string out_dir = "acceptance_out";
    std::vector<int> criteria;  // empty = all
    unsigned workers = 0;
    int sweep_repeats = 100;  // debugging profile knob; the gate runs at 100
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

constexpr std::uint64_t kMasterSeed = 20240601;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --- shared full-grid sweep (criteria 6-9, 11) -------------------------------

class SharedSweep {
  public:
    SharedSweep(const Options& options) : options_(options) {}

    const std::vector<SummaryRow>& rows() {
        if (rows_.empty()) compute();
        return rows_;
    }

    int repeats() const { return options_.sweep_repeats; }

  private:
    void compute() {
        ParameterGrid grid = ParameterGrid::reference_defaults();
        grid.repeats = options_.sweep_repeats;
        grid.seed = kMasterSeed;

        SweepOptions sweep_options;
        sweep_options.workers = options_.workers;
        sweep_options.progress_path =
            (std::filesystem::path(options_.out_dir) / "reference_sweep.progress").string();
        sweep_options.resume = true;
        sweep_options.on_progress = [](std::size_t done, std::size_t total) {
            if (done % 250 == 0 || done == total) {
                std::fprintf(stderr, "\r  [sweep] %zu/%zu combos", done, total);
                if (done == total) std::fprintf(stderr, "\n");
            }
        };
        std::fprintf(stderr, "  [sweep] full grid at S=%d (resumable)\n", grid.repeats);
        const auto results = run_sweep(grid, sweep_options);
        rows_ = to_summary_rows(results);
        OutputMeta meta{grid_config_hash(grid), grid.seed,
                        "combos=" + std::to_string(results.size())};
        write_summary_csv(
            (std::filesystem::path(options_.out_dir) / "reference_sweep_summary.csv").string(),
            rows_, meta);
    }

    Options options_;
    std::vector<SummaryRow> rows_;
};

std::vector<const SummaryRow*> select_rows(const std::vector<SummaryRow>& rows,
                                           const std::function<bool(const SummaryRow&)>& pred) {
    std::vector<const SummaryRow*> out;
    for (const auto& row : rows) {
        if (pred(row)) out.push_back(&row);
    }
    return out;
}

// --- criteria ----------------------------------------------------------------

Outcome criterion_grid_cardinality() {
    const auto combos = enumerate_grid(ParameterGrid::reference_defaults());
    char buf[96];
    std::snprintf(buf, sizeof(buf), "|grid| = %zu (expected 7986)", combos.size());
    return {combos.size() == 7986, buf};
}

Outcome criterion_full_reliance_pinning() {
    const auto grid = ParameterGrid::reference_defaults();
    int checked = 0;
    for (double eps : grid.epsilon_values) {
        for (double x : grid.x_llm_values) {
            ScenarioParams params;
            params.threshold = eps;
            params.pro_nin = 0.0;
            params.pro_ninl = 0.0;
            params.pro_nil = 1.0;
            params.x_llm = x;
            const std::uint64_t seed = run_seed(kMasterSeed, checked, 0);
            const Trajectory tr = run_scenario(params, seed);
            const auto ind = run_indicators(tr, CategoryGroup::All);

            const auto first = tr.row(0);
            const double initial_mean =
                std::accumulate(first.begin(), first.end(), 0.0) / tr.agents;

            char buf[160];
            if (*ind.sd != 0.0) {
                std::snprintf(buf, sizeof(buf), "node_sd = %.3e != 0 at eps=%g x_llm=%g",
                              *ind.sd, eps, x);
                return {false, buf};
            }
            if (*ind.clus != 1.0) {
                std::snprintf(buf, sizeof(buf), "node_clus = %g != 1 at eps=%g x_llm=%g",
                              *ind.clus, eps, x);
                return {false, buf};
            }
            if (*ind.conv > 2.0) {
                std::snprintf(buf, sizeof(buf), "node_conv = %g > 2 at eps=%g x_llm=%g",
                              *ind.conv, eps, x);
                return {false, buf};
            }
            if (!near(*ind.diff, x - initial_mean, 1e-12)) {
                std::snprintf(buf, sizeof(buf),
                              "node_diff deviates by %.3e from x_llm - mean(initial)",
                              std::abs(*ind.diff - (x - initial_mean)));
                return {false, buf};
            }
            ++checked;
        }
    }
    return {true, "121 cells: node_sd = 0, node_clus = 1, node_conv <= 2, node_diff exact"};
}

Outcome criterion_clustering_oracle() {
    rng::Stream stream(kMasterSeed);
    for (int it = 0; it < 1000; ++it) {
        const int n = 1 + static_cast<int>(stream.below(200));
        std::vector<double> values(n);
        for (auto& v : values) v = stream.uniform(-1.0, 1.0);
        const double cut = stream.uniform(0.0, 2.0);
        const int dendrogram = count_clusters(single_linkage(values), cut);
        const int gaps = sorted_gap_cluster_count(values, cut);
        if (dendrogram != gaps) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "instance %d (n=%d, cut=%.4f): dendrogram %d vs gaps %d", it, n, cut,
                          dendrogram, gaps);
            return {false, buf};
        }
    }
    return {true, "1000 randomized instances agree with the sorted-gap oracle"};
}

Outcome criterion_benchmark_convergence(const Options& options) {
    ScenarioParams params = *find_preset("benchmark");
    params.events.enabled = false;
    constexpr int kRepeats = 100;
    std::vector<double> avg_change(params.iterations + 1, 0.0);
    std::vector<std::vector<double>> per_run(kRepeats);
    parallel_for_indexed(kRepeats, options.workers, [&](std::size_t r) {
        per_run[r] = run_scenario(params, rng::derive(kMasterSeed, r)).mean_abs_change;
    });
    for (const auto& series : per_run) {
        for (std::size_t t = 0; t < series.size(); ++t) avg_change[t] += series[t];
    }
    for (auto& v : avg_change) v /= kRepeats;
    double worst = 0.0;
    int worst_t = -1;
    for (int t = 80; t <= params.iterations; ++t) {
        if (avg_change[t] > worst) {
            worst = avg_change[t];
            worst_t = t;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "S=100 avg mean_abs_change max over t>=80: %.5f at t=%d (< 0.005)", worst,
                  worst_t);
    return {worst < 0.005, buf};
}

Outcome criterion_mirror_symmetry() {
    ScenarioParams params = *find_preset("benchmark");
    params.events.enabled = false;
    ScenarioParams mirrored = params;
    mirrored.x_llm = 1.0;
    mirrored.negate_initial_opinions = true;
    double worst = 0.0;
    for (std::uint64_t r = 0; r < 20; ++r) {
        const std::uint64_t seed = rng::derive(kMasterSeed + 5, r);
        const Trajectory a = run_scenario(params, seed);
        const Trajectory b = run_scenario(mirrored, seed);
        for (int t = 0; t <= a.steps; ++t) {
            worst = std::max(worst, std::abs(a.mean_opinion[t] + b.mean_opinion[t]));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "20 runs: max |mean(t) + mirrored_mean(t)| = %.3e", worst);
    return {worst <= 1e-12, buf};
}

Outcome criterion_diversity_ratio(SharedSweep& sweep) {
    const auto& rows = sweep.rows();
    auto family_mean_sd = [&](double SummaryRow::*pro) {
        double sum = 0.0;
        int n = 0;
        for (const auto& row : rows) {
            if (row.group == CategoryGroup::All && row.*pro == 1.0) {
                sum += row.node_sd.value();
                ++n;
            }
        }
        return std::pair{sum / n, n};
    };
    const auto [none_sd, n_none] = family_mean_sd(&SummaryRow::pro_nin);
    const auto [partial_sd, n_partial] = family_mean_sd(&SummaryRow::pro_ninl);
    const auto [full_sd, n_full] = family_mean_sd(&SummaryRow::pro_nil);
    const double ratio = partial_sd / none_sd;
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "node_sd means: none=%.4f partial=%.4f full=%.4g (cells %d/%d/%d); "
                  "ratio=%.3f in [1.2, 1.6]",
                  none_sd, partial_sd, full_sd, n_none, n_partial, n_full, ratio);
    const bool pass = n_none == 121 && n_partial == 121 && n_full == 121 && ratio >= 1.2 &&
                      ratio <= 1.6 && full_sd == 0.0;
    return {pass, buf};
}

Outcome criterion_correlation_signs(SharedSweep& sweep) {
    const auto cells = correlation_matrix(sweep.rows());
    auto find = [&](const char* par, const char* ind, CategoryGroup g) -> const CorrelationCell& {
        for (const auto& c : cells) {
            if (c.parameter == par && c.indicator == ind && c.group == g) return c;
        }
        throw AnalysisError("cell not found");
    };

    const auto& diff_llm = find("x_llm", "node_diff", CategoryGroup::All);
    const auto& sd_eps = find("epsilon", "node_sd", CategoryGroup::Nin);

    // The three structurally constant full-reliance indicators must come out
    // missing for every parameter. (node_diff of that class tracks x_llm by
    // construction, so it stays defined; see the decisions notes.)
    int missing = 0;
    for (const auto& c : cells) {
        if (c.group == CategoryGroup::Nil &&
            (c.indicator == "node_conv" || c.indicator == "node_sd" ||
             c.indicator == "node_clus") &&
            c.missing) {
            ++missing;
        }
    }

    char buf[224];
    std::snprintf(buf, sizeof(buf),
                  "r(x_llm, node_diff, all)=%.3f (p=%.2e); r(eps, node_sd, nin)=%.3f "
                  "(p=%.2e); constant nil cells missing: %d/15",
                  diff_llm.r.value_or(0.0), diff_llm.p.value_or(1.0), sd_eps.r.value_or(0.0),
                  sd_eps.p.value_or(1.0), missing);
    const bool pass = diff_llm.r.has_value() && *diff_llm.r > 0.5 && *diff_llm.p < 0.001 &&
                      sd_eps.r.has_value() && *sd_eps.r < 0.0 && *sd_eps.p < 0.05 &&
                      missing == 15;
    return {pass, buf};
}

Outcome criterion_threshold_nonlinearity(SharedSweep& sweep) {
    const auto scan = select_rows(sweep.rows(), [](const SummaryRow& r) {
        return r.group == CategoryGroup::All && near(r.pro_nin, 0.6, 1e-12) &&
               near(r.pro_ninl, 0.2, 1e-12) && near(r.x_llm, -1.0, 1e-12);
    });
    if (scan.size() != 11) return {false, "epsilon scan rows missing from the sweep"};
    std::map<double, const SummaryRow*> by_eps;
    for (const auto* row : scan) by_eps[row->epsilon] = row;

    const double sd_03 = by_eps.at(0.3)->node_sd.value();
    const double sd_08 = by_eps.at(0.8)->node_sd.value();

    int violations = 0;
    double previous = by_eps.begin()->second->node_clus.value();
    for (auto it = std::next(by_eps.begin()); it != by_eps.end(); ++it) {
        const double current = it->second->node_clus.value();
        if (current > previous) ++violations;
        previous = current;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "node_sd(eps=0.8)=%.4f < node_sd(eps=0.3)=%.4f; node_clus adjacent "
                  "increases: %d (<= 1)",
                  sd_08, sd_03, violations);
    return {sd_08 < sd_03 && violations <= 1, buf};
}

Outcome criterion_sd_parabola(SharedSweep& sweep) {
    const auto scan = select_rows(sweep.rows(), [](const SummaryRow& r) {
        return r.group == CategoryGroup::All && near(r.pro_nin, 0.6, 1e-12) &&
               near(r.pro_ninl, 0.2, 1e-12) && near(r.epsilon, 0.4, 1e-12);
    });
    if (scan.size() != 11) return {false, "x_llm scan rows missing from the sweep"};
    const SummaryRow* best = scan.front();
    for (const auto* row : scan) {
        if (row->node_sd.value() < best->node_sd.value()) best = row;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "node_sd minimized at x_llm=%g (min value %.4f)",
                  best->x_llm, best->node_sd.value());
    return {near(best->x_llm, 0.0, 1e-12), buf};
}

Outcome criterion_intervention_efficacy(const Options& options) {
    const ScenarioParams base = *find_preset("benchmark");
    InterventionSpec spec;  // defaults: ceil(0.1 N) fresh neighbor-only agents at t = 0
    const auto study = run_intervention_study(
        base,
        {InterventionKind::Opposite, InterventionKind::Neutral, InterventionKind::Random}, spec,
        100, kMasterSeed + 10, options.workers);

    const auto& none = study.outcomes[0];
    double worst_p = 0.0;
    bool raised = true;
    for (std::size_t k = 1; k < study.outcomes.size(); ++k) {
        raised = raised && study.outcomes[k].mean > none.mean;
        worst_p = std::max(worst_p, study.outcomes[k].p_vs_none.value());
    }
    const auto& opposite = study.outcomes[1];
    const auto& neutral = study.outcomes[2];
    char buf[224];
    std::snprintf(buf, sizeof(buf),
                  "means none=%.3f opp=%.3f neu=%.3f rnd=%.3f; worst one-sided p=%.2e; "
                  "span(opp)=%.3f > span(neu)=%.3f",
                  none.mean, opposite.mean, neutral.mean, study.outcomes[3].mean, worst_p,
                  opposite.span, neutral.span);
    return {raised && worst_p < 0.05 && opposite.span > neutral.span, buf};
}

Outcome criterion_extremal_reproduction(SharedSweep& sweep) {
    const auto report = extremal_combos(sweep.rows(), "node_diff", ExtremeTarget::Max, 10);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "top-10 max node_diff avg: eps=%.2f pro=(%.2f, %.2f, %.2f) x_llm=%.2f "
                  "(need x_llm >= 0.8, pro_ninl >= 0.6)",
                  report.epsilon, report.pro_nin, report.pro_ninl, report.pro_nil, report.x_llm);
    return {report.x_llm >= 0.8 && report.pro_ninl >= 0.6, buf};
}

Outcome criterion_determinism(const Options& options) {
    ParameterGrid grid;
    grid.epsilon_values = {0.2, 0.6};
    grid.x_llm_values = {-1.0, 0.2};
    grid.proportion_step = 0.5;
    grid.group_size = 50;
    grid.iterations = 40;
    grid.repeats = 3;
    grid.seed = kMasterSeed + 12;

    const auto dir = std::filesystem::path(options.out_dir);
    auto emit = [&](unsigned workers, const std::string& name) {
        SweepOptions sweep_options;
        sweep_options.workers = workers;
        const auto rows = to_summary_rows(run_sweep(grid, sweep_options));
        const std::string path = (dir / name).string();
        write_summary_csv(path, rows, OutputMeta{grid_config_hash(grid), grid.seed, ""});
        std::ifstream in(path, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string one = emit(1, "determinism_w1.csv");
    const std::string two = emit(2, "determinism_w2.csv");
    const std::string four = emit(4, "determinism_w4.csv");
    const bool pass = one == two && two == four && !one.empty();
    return {pass, pass ? "summary bytes identical for workers 1, 2 and 4"
                       : "worker count changed output bytes"};
}

}  // namespace

int main(int argc, char** argv) {
    Options options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", arg.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--out-dir") {
            options.out_dir = next();
        } else if (arg == "--criterion") {
            options.criteria.push_back(std::stoi(next()));
        } else if (arg == "--workers") {
            options.workers = static_cast<unsigned>(std::stoul(next()));
        } else if (arg == "--sweep-repeats") {
            options.sweep_repeats = std::stoi(next());
        } else {
            std::fprintf(stderr,
                         "usage: acceptance [--out-dir DIR] [--criterion N]... [--workers W] "
                         "[--sweep-repeats S]\n");
            return 2;
        }
    }
    std::filesystem::create_directories(options.out_dir);

    SharedSweep sweep(options);
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"grid cardinality 7986", [&] { return criterion_grid_cardinality(); }},
        {"full-reliance pinning suite", [&] { return criterion_full_reliance_pinning(); }},
        {"clustering oracle equivalence", [&] { return criterion_clustering_oracle(); }},
        {"benchmark convergence", [&] { return criterion_benchmark_convergence(options); }},
        {"mirror symmetry", [&] { return criterion_mirror_symmetry(); }},
        {"diversity ratio", [&] { return criterion_diversity_ratio(sweep); }},
        {"correlation signs", [&] { return criterion_correlation_signs(sweep); }},
        {"threshold nonlinearity", [&] { return criterion_threshold_nonlinearity(sweep); }},
        {"sd parabola", [&] { return criterion_sd_parabola(sweep); }},
        {"intervention efficacy", [&] { return criterion_intervention_efficacy(options); }},
        {"extremal reproduction", [&] { return criterion_extremal_reproduction(sweep); }},
        {"determinism across workers", [&] { return criterion_determinism(options); }},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int number = static_cast<int>(k) + 1;
        if (!options.criteria.empty() &&
            std::find(options.criteria.begin(), options.criteria.end(), number) ==
                options.criteria.end()) {
            continue;
        }
        Outcome outcome;
        try {
            outcome = criteria[k].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %2d: %s — %s\n", outcome.pass ? "PASS" : "FAIL", number,
                    criteria[k].first, outcome.detail.c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    }
    return failures;
}
