#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "opinionsim/model.hpp"

namespace opinionsim {

enum class InterventionKind : std::uint8_t { None = 0, Opposite, Neutral, Random };

const char* to_string(InterventionKind k);
std::optional<InterventionKind> intervention_kind_from_string(std::string_view s);

/// How extra agents are added to a running scenario. Opinions are -x_llm
/// (opposite), 0 (neutral) or U[-1,1] (random).
struct InterventionSpec {
    InterventionKind kind = InterventionKind::None;
    int count = -1;  // -1 = default ceil(0.1 * N)
    Category category = Category::Nin;
    int time = 0;  // injection step, in [0, T]

    /// Fixed stubbornness for the injected agents; unset means U[0,1].
    std::optional<double> stubbornness;

    int resolved_count(int n) const;
    void validate() const;
};

/// Append the injected agents to (pop, graph): fresh edges at `edge_prob`,
/// authorities recomputed over the enlarged graph for everyone. `threshold`
/// is the confidence threshold given to the new agents.
void inject_agents(Population& pop, Graph& graph, const InterventionSpec& spec, double x_llm,
                   double edge_prob, double threshold, std::uint64_t seed);

/// One simulated run with an injection at spec.time; returns the mean final
/// opinion over all agents present at the end.
double run_with_injection(const ScenarioParams& base, const InterventionSpec& spec,
                          std::uint64_t seed);

/// Distribution of the final collective mean opinion over repeats, for one
/// intervention kind.
struct InterventionOutcome {
    InterventionKind kind = InterventionKind::None;
    std::vector<double> final_mean_opinion;  // one per repeat
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double span = 0.0;
    double std_dev = 0.0;

    /// One-sided paired sign test against the matched baseline runs
    /// (H1: this kind shifts the final mean opinion upward). Unset for the
    /// baseline itself.
    std::optional<double> p_vs_none;
};

struct InterventionStudy {
    ScenarioParams base;
    InterventionSpec spec_template;
    int repeats = 0;
    std::vector<InterventionOutcome> outcomes;  // baseline first
};

/// Run S seeded repeats per kind (always including the no-intervention
/// baseline) with matched seeds, so that a zero-count injection reproduces
/// the baseline exactly.
InterventionStudy run_intervention_study(const ScenarioParams& base,
                                         const std::vector<InterventionKind>& kinds,
                                         const InterventionSpec& spec_template, int repeats,
                                         std::uint64_t seed, unsigned workers = 0);

}  // namespace opinionsim
