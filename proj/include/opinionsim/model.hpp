#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "opinionsim/graph.hpp"
#include "opinionsim/rng.hpp"

namespace opinionsim {

/// Usage strategy of an agent, fixed for the whole run.
///   Nin  - influenced by neighbors only
///   Ninl - influenced by neighbors and the LLM
///   Nil  - influenced by the LLM only
enum class Category : std::uint8_t { Nin = 0, Ninl = 1, Nil = 2 };

const char* to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);

struct AgentState {
    int id = 0;
    Category category = Category::Nin;
    double opinion = 0.0;       // in [-1, 1]
    double stubbornness = 0.0;  // in [0, 1]
    double threshold = 0.0;     // in [0, 1]
    double authority = 0.0;     // in [0, 1]
};

/// Per-iteration external shock: with probability `probability`, a uniformly
/// chosen floor(fraction * N)-subset of agents is perturbed by an additive
/// draw from [-amplitude, amplitude], clamped back into [-1, 1]. Agents fully
/// relying on the LLM are exempt.
struct EventConfig {
    bool enabled = true;
    double probability = 0.05;
    double fraction = 0.05;
    double amplitude = 0.1;

    void validate() const;
};

/// The full description of one scenario. The seven headline parameters are
/// (group_size, iterations, threshold, pro_nin, pro_ninl, pro_nil, x_llm);
/// the rest is mechanism configuration.
struct ScenarioParams {
    int group_size = 100;    // N
    int iterations = 100;    // T
    double threshold = 0.4;  // shared confidence threshold epsilon
    double pro_nin = 0.6;
    double pro_ninl = 0.2;
    double pro_nil = 0.2;
    double x_llm = -1.0;        // constant LLM output opinion, in [-1, 1]
    double llm_authority = 1.0; // fixed weight of the LLM in mixed updates

    /// Run the unmodified bounded-confidence update (self-inclusive mean,
    /// no stubbornness / authority / LLM) for every agent.
    bool classic_hk = false;

    /// Negate all initial opinions after sampling. Used to exercise the
    /// mirror symmetry of the dynamics without touching any random stream.
    bool negate_initial_opinions = false;

    EventConfig events;
    GraphConfig graph;  // n and seed are overwritten per run

    /// Optional per-agent thresholds; empty means uniform `threshold`.
    std::vector<double> agent_thresholds;

    /// Skip the per-iteration cluster-count series (the other three series
    /// are always recorded). Sweeps only consume final-state indicators, and
    /// the per-step clustering is the single most expensive part of a run.
    bool record_cluster_series = true;

    std::uint64_t seed = 0;  // default master seed used by the CLI

    void validate() const;
};

/// Agent state in structure-of-arrays form; the unit of work of one step.
struct Population {
    std::vector<double> opinion;
    std::vector<double> stubbornness;
    std::vector<double> threshold;
    std::vector<double> authority;
    std::vector<Category> category;

    int size() const { return static_cast<int>(opinion.size()); }
    AgentState agent(int i) const;
    std::vector<AgentState> agents() const;
};

/// Full record of one run: row t of `opinions` is the synchronous state
/// after t steps (row 0 is the initial state), plus the per-iteration
/// summary series. All entries stay in [-1, 1].
struct Trajectory {
    int agents = 0;
    int steps = 0;  // T
    std::vector<Category> category;
    std::vector<double> opinions;  // (steps + 1) x agents, row-major

    std::vector<double> mean_opinion;     // size steps + 1
    std::vector<double> mean_abs_change;  // size steps + 1; [0] == 0
    std::vector<double> std_dev;          // size steps + 1 (sample, n-1)
    std::vector<double> cluster_count;    // size steps + 1, or empty if not recorded

    std::span<const double> row(int t) const {
        return {opinions.data() + static_cast<std::size_t>(t) * agents,
                static_cast<std::size_t>(agents)};
    }
    double opinion_at(int t, int i) const {
        return opinions[static_cast<std::size_t>(t) * agents + i];
    }
};

/// Category head-counts by largest-remainder rounding; always sums to n.
/// Ties in the fractional parts resolve in category order (Nin, Ninl, Nil).
std::array<int, 3> category_counts(double pro_nin, double pro_ninl, double pro_nil, int n);

/// Sample initial opinions (U[-1,1]), stubbornness (U[0,1]), assign
/// categories by a seeded permutation of the largest-remainder counts, and
/// copy authorities from the graph. Thresholds are the shared epsilon unless
/// per-agent values are configured.
Population init_population(const ScenarioParams& params, const Graph& graph, std::uint64_t seed);

/// Confidence set of agent j: graph neighbors i (j itself excluded) with
/// |x_i - x_j| <= epsilon_j.
std::vector<int> confidence_set(int j, const Population& pop, const Graph& graph);

/// One modified-model update for agent j, reading the time-t state:
///   Nil:  x_llm.
///   Nin:  x_j * sd_j + authority-weighted mean over the confidence set
///         * (1 - sd_j); unchanged if the set is empty; unweighted mean if
///         every in-set authority is zero.
///   Ninl: as Nin while the LLM is out of range (|x_j - x_llm| > eps_j);
///         otherwise the LLM joins the weighted mean with weight
///         llm_authority. With an empty set and the LLM in range this
///         degenerates to x_j * sd_j + x_llm * (1 - sd_j).
double update_agent(int j, const Population& pop, const Graph& graph,
                    const ScenarioParams& params);

/// Classic bounded-confidence update: unweighted mean over the confidence
/// set plus j itself.
double update_classic_hk(int j, const Population& pop, const Graph& graph);

/// Apply the per-iteration random event to `pop` (see EventConfig). Draws
/// only from `events_stream`; a disabled config consumes nothing.
void apply_random_event(Population& pop, const EventConfig& config, rng::Stream& events_stream);

/// Advance `pop` by one synchronous step: every agent reads the time-t
/// opinions and writes time-t+1. `next` is scratch storage, resized as needed.
void synchronous_step(Population& pop, const Graph& graph, const ScenarioParams& params,
                      std::vector<double>& next);

/// Build the graph, initialize the population and run `iterations`
/// synchronous steps with per-iteration events. Fully deterministic in
/// (params, seed).
Trajectory run_scenario(const ScenarioParams& params, std::uint64_t seed);

inline Trajectory run_scenario(const ScenarioParams& params) {
    return run_scenario(params, params.seed);
}

}  // namespace opinionsim
