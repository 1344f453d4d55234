#include "opinionsim/interventions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "opinionsim/analysis.hpp"
#include "opinionsim/errors.hpp"
#include "opinionsim/sweep.hpp"

namespace opinionsim {

const char* to_string(InterventionKind k) {
    switch (k) {
        case InterventionKind::None: return "none";
        case InterventionKind::Opposite: return "opposite";
        case InterventionKind::Neutral: return "neutral";
        case InterventionKind::Random: return "random";
    }
    return "?";
}

std::optional<InterventionKind> intervention_kind_from_string(std::string_view s) {
    if (s == "none") return InterventionKind::None;
    if (s == "opposite") return InterventionKind::Opposite;
    if (s == "neutral") return InterventionKind::Neutral;
    if (s == "random") return InterventionKind::Random;
    return std::nullopt;
}

int InterventionSpec::resolved_count(int n) const {
    if (kind == InterventionKind::None) return 0;
    if (count >= 0) return count;
    return static_cast<int>(std::ceil(0.1 * n));
}

void InterventionSpec::validate() const {
    if (time < 0) throw ConfigError("intervention time must be >= 0");
    if (stubbornness.has_value() && !(*stubbornness >= 0.0 && *stubbornness <= 1.0)) {
        throw ConfigError("intervention stubbornness must lie in [0, 1]");
    }
}

void inject_agents(Population& pop, Graph& graph, const InterventionSpec& spec, double x_llm,
                   double edge_prob, double threshold, std::uint64_t seed) {
    spec.validate();
    const int count = spec.resolved_count(pop.size());
    if (count == 0) return;

    graph = extend_er(graph, count, edge_prob, rng::derive(seed, rng::kInjectWiring));

    rng::Stream opinion_stream(rng::derive(seed, rng::kInjectOpinions));
    rng::Stream stubborn_stream(rng::derive(seed, rng::kInjectStubbornness));
    for (int m = 0; m < count; ++m) {
        double opinion = 0.0;
        switch (spec.kind) {
            case InterventionKind::Opposite: opinion = -x_llm; break;
            case InterventionKind::Neutral: opinion = 0.0; break;
            case InterventionKind::Random: opinion = opinion_stream.uniform(-1.0, 1.0); break;
            case InterventionKind::None: break;
        }
        pop.opinion.push_back(opinion);
        pop.stubbornness.push_back(spec.stubbornness.has_value()
                                       ? *spec.stubbornness
                                       : stubborn_stream.uniform(0.0, 1.0));
        pop.threshold.push_back(threshold);
        pop.category.push_back(spec.category);
        pop.authority.push_back(0.0);
    }
    // Degrees changed for everyone the new agents touched.
    pop.authority.resize(graph.size());
    for (int i = 0; i < graph.size(); ++i) pop.authority[i] = graph.authority(i);
}

double run_with_injection(const ScenarioParams& base, const InterventionSpec& spec,
                          std::uint64_t seed) {
    base.validate();
    spec.validate();
    if (spec.time > base.iterations) {
        throw ConfigError("intervention time " + std::to_string(spec.time) +
                          " exceeds iteration count " + std::to_string(base.iterations));
    }

    GraphConfig graph_config = base.graph;
    graph_config.n = base.group_size;
    graph_config.seed = rng::derive(seed, rng::kGraph);
    Graph graph = generate_er(graph_config);

    Population pop = init_population(base, graph, seed);
    rng::Stream events(rng::derive(seed, rng::kEvents));

    ScenarioParams params = base;
    std::vector<double> scratch;
    for (int t = 0; t <= params.iterations; ++t) {
        if (t == spec.time && spec.kind != InterventionKind::None) {
            inject_agents(pop, graph, spec, params.x_llm, graph_config.edge_prob,
                          params.threshold, seed);
        }
        if (t == params.iterations) break;
        synchronous_step(pop, graph, params, scratch);
        apply_random_event(pop, params.events, events);
    }

    double sum = 0.0;
    for (double x : pop.opinion) sum += x;
    return sum / pop.size();
}

InterventionStudy run_intervention_study(const ScenarioParams& base,
                                         const std::vector<InterventionKind>& kinds,
                                         const InterventionSpec& spec_template, int repeats,
                                         std::uint64_t seed, unsigned workers) {
    if (repeats < 1) throw ConfigError("intervention repeats must be >= 1");

    std::vector<InterventionKind> order{InterventionKind::None};
    for (auto k : kinds) {
        if (k != InterventionKind::None &&
            std::find(order.begin(), order.end(), k) == order.end()) {
            order.push_back(k);
        }
    }

    InterventionStudy study;
    study.base = base;
    study.spec_template = spec_template;
    study.repeats = repeats;
    study.outcomes.resize(order.size());
    for (auto& outcome : study.outcomes) {
        outcome.final_mean_opinion.resize(repeats);
    }

    // Matched seeds across kinds: repeat r uses the same base streams for
    // every kind, so differences are attributable to the injection alone.
    parallel_for_indexed(order.size() * static_cast<std::size_t>(repeats), workers,
                         [&](std::size_t task) {
                             const std::size_t kind_index = task / repeats;
                             const int r = static_cast<int>(task % repeats);
                             InterventionSpec spec = spec_template;
                             spec.kind = order[kind_index];
                             study.outcomes[kind_index].final_mean_opinion[r] =
                                 run_with_injection(base, spec, rng::derive(seed, r));
                         });

    for (std::size_t k = 0; k < order.size(); ++k) {
        InterventionOutcome& outcome = study.outcomes[k];
        outcome.kind = order[k];
        const auto& v = outcome.final_mean_opinion;
        outcome.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        outcome.min = *std::min_element(v.begin(), v.end());
        outcome.max = *std::max_element(v.begin(), v.end());
        outcome.span = outcome.max - outcome.min;
        double ss = 0.0;
        for (double x : v) ss += (x - outcome.mean) * (x - outcome.mean);
        outcome.std_dev = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
        if (k > 0) {
            outcome.p_vs_none = paired_sign_test_p(v, study.outcomes[0].final_mean_opinion);
        }
    }
    return study;
}

}  // namespace opinionsim
