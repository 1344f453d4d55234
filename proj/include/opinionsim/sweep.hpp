#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opinionsim/indicators.hpp"
#include "opinionsim/model.hpp"

namespace opinionsim {

/// The parameter grid of a sweep: threshold values x LLM output values x all
/// step-quantized proportion triples summing to 1.
struct ParameterGrid {
    std::vector<double> epsilon_values;
    std::vector<double> x_llm_values;
    double proportion_step = 0.1;

    /// Explicit proportion triples; when non-empty they replace the step
    /// enumeration.
    std::vector<std::array<double, 3>> fixed_proportions;

    int group_size = 100;
    int iterations = 100;
    int repeats = 100;
    std::uint64_t seed = 0;
    EventConfig events;
    GraphConfig graph;

    /// 11 epsilon values (0..1 step 0.1), 11 LLM values (-1..1 step 0.2),
    /// proportion step 0.1 (66 triples): 7986 combinations.
    static ParameterGrid reference_defaults();

    void validate() const;
};

/// Aggregated result of one grid combination: the scenario plus one
/// IndicatorSet per category group, each the mean over `repeats` runs.
struct ComboResult {
    ScenarioParams params;
    std::array<IndicatorSet, 4> indicators;  // indexed by CategoryGroup
    int repeats = 0;

    const IndicatorSet& group(CategoryGroup g) const {
        return indicators[static_cast<std::size_t>(g)];
    }
};

/// All scenarios of the grid, in deterministic lexicographic order
/// (epsilon, then x_llm, then proportion triple).
std::vector<ScenarioParams> enumerate_grid(const ParameterGrid& grid);

/// The step-quantized proportion triples in lexicographic order.
std::vector<std::array<double, 3>> proportion_triples(double step);

/// Seed of run (combo_index, repeat): a labeled hash of the master seed,
/// injective over the pair, so no two runs share a random stream.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t combo_index, int repeat);

struct SweepOptions {
    unsigned workers = 0;  // 0 = hardware concurrency

    /// When set, completed combos are appended to this file as they finish;
    /// with `resume`, combos already present are not recomputed. The file is
    /// tied to the grid via a config hash.
    std::string progress_path;
    bool resume = false;

    /// Called after each completed combo with (done, total).
    std::function<void(std::size_t, std::size_t)> on_progress;
};

/// Run every (combo, repeat) and aggregate indicators per category group.
/// The result is identical for any worker count. A failing run aborts the
/// sweep with the offending (combo, repeat) identified.
std::vector<ComboResult> run_sweep(const ParameterGrid& grid, const SweepOptions& options = {});

/// Flatten combo results into summary rows (one row per category group).
std::vector<SummaryRow> to_summary_rows(std::span<const ComboResult> results);

/// The eight named reference scenarios: the unmodified-model baseline G1,
/// the benchmark, and six single-parameter variations of it.
std::vector<std::pair<std::string, ScenarioParams>> scenario_presets();

/// Look up a preset by name.
std::optional<ScenarioParams> find_preset(std::string_view name);

/// Stable FNV-1a content hash used to tie progress files and output headers
/// to the configuration that produced them.
std::uint64_t grid_config_hash(const ParameterGrid& grid);

/// Run `body(i)` for i in [0, count) on `workers` threads. Exceptions are
/// captured and the first one rethrown after all workers join.
void parallel_for_indexed(std::size_t count, unsigned workers,
                          const std::function<void(std::size_t)>& body);

}  // namespace opinionsim
