#include "opinionsim/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "opinionsim/clustering.hpp"
#include "opinionsim/errors.hpp"

namespace opinionsim {

const char* to_string(Category c) {
    switch (c) {
        case Category::Nin: return "nin";
        case Category::Ninl: return "ninl";
        case Category::Nil: return "nil";
    }
    return "?";
}

std::optional<Category> category_from_string(std::string_view s) {
    if (s == "nin" || s == "NIN") return Category::Nin;
    if (s == "ninl" || s == "NINL") return Category::Ninl;
    if (s == "nil" || s == "NIL") return Category::Nil;
    return std::nullopt;
}

void EventConfig::validate() const {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw ConfigError("events.probability must lie in [0, 1]");
    }
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ConfigError("events.fraction must lie in [0, 1]");
    }
    if (!(amplitude >= 0.0)) {
        throw ConfigError("events.amplitude must be >= 0");
    }
}

void ScenarioParams::validate() const {
    if (group_size < 2) {
        throw ConfigError("group_size must be >= 2, got " + std::to_string(group_size));
    }
    if (iterations < 0) {
        throw ConfigError("iterations must be >= 0, got " + std::to_string(iterations));
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ConfigError("threshold must lie in [0, 1], got " + std::to_string(threshold));
    }
    for (double p : {pro_nin, pro_ninl, pro_nil}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("category proportions must lie in [0, 1]");
        }
    }
    const double sum = pro_nin + pro_ninl + pro_nil;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("pro_nin + pro_ninl + pro_nil must equal 1 (got " +
                          std::to_string(sum) + ")");
    }
    if (!(x_llm >= -1.0 && x_llm <= 1.0)) {
        throw ConfigError("x_llm must lie in [-1, 1], got " + std::to_string(x_llm));
    }
    if (!(llm_authority >= 0.0)) {
        throw ConfigError("llm_authority must be >= 0");
    }
    if (!agent_thresholds.empty() &&
        agent_thresholds.size() != static_cast<std::size_t>(group_size)) {
        throw ConfigError("agent_thresholds must be empty or have group_size entries");
    }
    for (double e : agent_thresholds) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw ConfigError("agent_thresholds entries must lie in [0, 1]");
        }
    }
    events.validate();
    GraphConfig g = graph;
    g.n = group_size;
    g.validate();
}

AgentState Population::agent(int i) const {
    return AgentState{i, category[i], opinion[i], stubbornness[i], threshold[i], authority[i]};
}

std::vector<AgentState> Population::agents() const {
    std::vector<AgentState> out;
    out.reserve(opinion.size());
    for (int i = 0; i < size(); ++i) out.push_back(agent(i));
    return out;
}

std::array<int, 3> category_counts(double pro_nin, double pro_ninl, double pro_nil, int n) {
    const std::array<double, 3> pro{pro_nin, pro_ninl, pro_nil};
    std::array<int, 3> counts{};
    std::array<double, 3> frac{};
    int assigned = 0;
    for (int k = 0; k < 3; ++k) {
        const double exact = pro[k] * n;
        counts[k] = static_cast<int>(std::floor(exact));
        frac[k] = exact - counts[k];
        assigned += counts[k];
    }
    int remainder = n - assigned;
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac[a] > frac[b]; });
    for (int r = 0; r < remainder; ++r) counts[order[r % 3]] += 1;
    return counts;
}

Population init_population(const ScenarioParams& params, const Graph& graph, std::uint64_t seed) {
    params.validate();
    const int n = params.group_size;
    if (graph.size() != n) {
        throw ConfigError("graph size " + std::to_string(graph.size()) +
                          " does not match group_size " + std::to_string(n));
    }

    Population pop;
    pop.opinion.resize(n);
    pop.stubbornness.resize(n);
    pop.threshold.resize(n);
    pop.authority.resize(n);
    pop.category.resize(n);

    rng::Stream opinions(rng::derive(seed, rng::kOpinions));
    for (int i = 0; i < n; ++i) pop.opinion[i] = opinions.uniform(-1.0, 1.0);
    if (params.negate_initial_opinions) {
        for (double& x : pop.opinion) x = -x;
    }

    rng::Stream stubborn(rng::derive(seed, rng::kStubbornness));
    for (int i = 0; i < n; ++i) pop.stubbornness[i] = stubborn.uniform(0.0, 1.0);

    if (params.agent_thresholds.empty()) {
        std::fill(pop.threshold.begin(), pop.threshold.end(), params.threshold);
    } else {
        pop.threshold = params.agent_thresholds;
    }

    const auto counts = category_counts(params.pro_nin, params.pro_ninl, params.pro_nil, n);
    std::vector<Category> labels;
    labels.reserve(n);
    labels.insert(labels.end(), counts[0], Category::Nin);
    labels.insert(labels.end(), counts[1], Category::Ninl);
    labels.insert(labels.end(), counts[2], Category::Nil);
    rng::Stream perm(rng::derive(seed, rng::kCategoryPerm));
    perm.shuffle(labels);
    pop.category = std::move(labels);

    for (int i = 0; i < n; ++i) pop.authority[i] = graph.authority(i);
    return pop;
}

std::vector<int> confidence_set(int j, const Population& pop, const Graph& graph) {
    std::vector<int> out;
    const double xj = pop.opinion[j];
    const double eps = pop.threshold[j];
    for (int i : graph.neighbors(j)) {
        if (std::abs(pop.opinion[i] - xj) <= eps) out.push_back(i);
    }
    return out;
}

namespace {

struct NeighborSums {
    double weighted = 0.0;  // sum of au_i * x_i over the confidence set
    double authority = 0.0; // sum of au_i
    double plain = 0.0;     // sum of x_i
    int count = 0;
};

inline NeighborSums confidence_sums(int j, const Population& pop, const Graph& graph) {
    NeighborSums s;
    const double xj = pop.opinion[j];
    const double eps = pop.threshold[j];
    for (int i : graph.neighbors(j)) {
        const double xi = pop.opinion[i];
        if (std::abs(xi - xj) <= eps) {
            s.weighted += pop.authority[i] * xi;
            s.authority += pop.authority[i];
            s.plain += xi;
            ++s.count;
        }
    }
    return s;
}

// Authority-weighted mean over the confidence set, falling back to the
// unweighted mean when every in-set authority is zero.
inline double neighbor_mean(const NeighborSums& s) {
    return s.authority > 0.0 ? s.weighted / s.authority : s.plain / s.count;
}

inline double blend(double own, double stubbornness, double pull) {
    return own * stubbornness + pull * (1.0 - stubbornness);
}

}  // namespace

double update_agent(int j, const Population& pop, const Graph& graph,
                    const ScenarioParams& params) {
    const double xj = pop.opinion[j];
    switch (pop.category[j]) {
        case Category::Nil:
            return params.x_llm;
        case Category::Nin: {
            const NeighborSums s = confidence_sums(j, pop, graph);
            if (s.count == 0) return xj;
            return blend(xj, pop.stubbornness[j], neighbor_mean(s));
        }
        case Category::Ninl: {
            const bool llm_in_range = std::abs(xj - params.x_llm) <= pop.threshold[j];
            const NeighborSums s = confidence_sums(j, pop, graph);
            if (!llm_in_range) {
                if (s.count == 0) return xj;
                return blend(xj, pop.stubbornness[j], neighbor_mean(s));
            }
            const double pull = (s.weighted + params.llm_authority * params.x_llm) /
                                (s.authority + params.llm_authority);
            return blend(xj, pop.stubbornness[j], pull);
        }
    }
    return xj;
}

double update_classic_hk(int j, const Population& pop, const Graph& graph) {
    const double xj = pop.opinion[j];
    const double eps = pop.threshold[j];
    double sum = xj;  // the classic rule includes the agent itself
    int count = 1;
    for (int i : graph.neighbors(j)) {
        const double xi = pop.opinion[i];
        if (std::abs(xi - xj) <= eps) {
            sum += xi;
            ++count;
        }
    }
    return sum / count;
}

void apply_random_event(Population& pop, const EventConfig& config, rng::Stream& events_stream) {
    if (!config.enabled) return;
    const int n = pop.size();
    const int affected = static_cast<int>(std::floor(config.fraction * n));
    if (events_stream.uniform01() >= config.probability) return;
    if (affected <= 0) return;

    // Uniform k-subset via partial Fisher-Yates over the index range.
    std::vector<int> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    for (int k = 0; k < affected; ++k) {
        const std::size_t pick =
            k + static_cast<std::size_t>(events_stream.below(static_cast<std::uint64_t>(n - k)));
        std::swap(indices[k], indices[pick]);
        const int agent = indices[k];
        const double delta = events_stream.uniform(-config.amplitude, config.amplitude);
        if (pop.category[agent] != Category::Nil) {
            pop.opinion[agent] = std::clamp(pop.opinion[agent] + delta, -1.0, 1.0);
        }
    }
}

void synchronous_step(Population& pop, const Graph& graph, const ScenarioParams& params,
                      std::vector<double>& next) {
    const int n = pop.size();
    next.resize(n);
    if (params.classic_hk) {
        for (int j = 0; j < n; ++j) next[j] = update_classic_hk(j, pop, graph);
    } else {
        for (int j = 0; j < n; ++j) next[j] = update_agent(j, pop, graph, params);
    }
    pop.opinion.swap(next);
}

namespace {

struct SeriesAccumulator {
    void record(const Population& pop, const std::vector<double>* previous, Trajectory& out,
                bool with_clusters) {
        const int n = pop.size();
        double sum = 0.0;
        for (double x : pop.opinion) sum += x;
        const double mean = sum / n;
        out.mean_opinion.push_back(mean);

        double change = 0.0;
        if (previous != nullptr) {
            for (int i = 0; i < n; ++i) change += std::abs(pop.opinion[i] - (*previous)[i]);
            change /= n;
        }
        out.mean_abs_change.push_back(change);

        const auto [lo, hi] = std::minmax_element(pop.opinion.begin(), pop.opinion.end());
        if (*lo == *hi) {
            out.std_dev.push_back(0.0);
        } else {
            double ss = 0.0;
            for (double x : pop.opinion) {
                const double d = x - mean;
                ss += d * d;
            }
            out.std_dev.push_back(n > 1 ? std::sqrt(ss / (n - 1)) : 0.0);
        }

        if (with_clusters) {
            out.cluster_count.push_back(
                static_cast<double>(sorted_gap_cluster_count(pop.opinion, kCut)));
        }
    }

    static constexpr double kCut = 0.2;
};

}  // namespace

Trajectory run_scenario(const ScenarioParams& params, std::uint64_t seed) {
    params.validate();

    GraphConfig graph_config = params.graph;
    graph_config.n = params.group_size;
    graph_config.seed = rng::derive(seed, rng::kGraph);
    const Graph graph = generate_er(graph_config);

    Population pop = init_population(params, graph, seed);
    rng::Stream events(rng::derive(seed, rng::kEvents));

    const int n = params.group_size;
    const int steps = params.iterations;

    Trajectory out;
    out.agents = n;
    out.steps = steps;
    out.category = pop.category;
    out.opinions.reserve(static_cast<std::size_t>(steps + 1) * n);
    out.mean_opinion.reserve(steps + 1);
    out.mean_abs_change.reserve(steps + 1);
    out.std_dev.reserve(steps + 1);
    if (params.record_cluster_series) out.cluster_count.reserve(steps + 1);

    SeriesAccumulator series;
    out.opinions.insert(out.opinions.end(), pop.opinion.begin(), pop.opinion.end());
    series.record(pop, nullptr, out, params.record_cluster_series);

    std::vector<double> scratch(n);
    std::vector<double> previous(n);
    for (int t = 1; t <= steps; ++t) {
        previous = pop.opinion;
        synchronous_step(pop, graph, params, scratch);
        apply_random_event(pop, params.events, events);
        out.opinions.insert(out.opinions.end(), pop.opinion.begin(), pop.opinion.end());
        series.record(pop, &previous, out, params.record_cluster_series);
    }
    return out;
}

}  // namespace opinionsim
