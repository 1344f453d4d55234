#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "opinionsim/model.hpp"

namespace opinionsim {

/// Which agents an indicator is computed over: one category, or everyone.
enum class CategoryGroup : std::uint8_t { Nin = 0, Ninl = 1, Nil = 2, All = 3 };

inline constexpr std::array<CategoryGroup, 4> kCategoryGroups = {
    CategoryGroup::Nin, CategoryGroup::Ninl, CategoryGroup::Nil, CategoryGroup::All};

const char* to_string(CategoryGroup g);
std::optional<CategoryGroup> category_group_from_string(std::string_view s);

/// Default convergence tolerance (|x_i(t) - x_i(t-1)| <= tau) and dendrogram
/// cut height (one tenth of the opinion value range).
inline constexpr double kConvergenceTau = 0.005;
inline constexpr double kClusterCut = 0.2;

/// Single-run indicator values. A missing value marks an indicator that is
/// undefined for the run (empty group; fewer than two members for the
/// standard deviation). Never silently zero.
struct RunIndicators {
    std::optional<double> diff;
    std::optional<double> conv;
    std::optional<double> sd;
    std::optional<double> clus;
};

/// Indicator values for one (scenario, group) pair, averaged over repeats.
struct IndicatorSet {
    CategoryGroup group = CategoryGroup::All;
    int repeats = 0;
    std::optional<double> node_diff;
    std::optional<double> node_conv;
    std::optional<double> node_sd;
    std::optional<double> node_clus;
};

/// One row of a sweep summary table: the scenario parameters plus the
/// averaged indicators of one group.
struct SummaryRow {
    int group_size = 0;
    int iterations = 0;
    double epsilon = 0.0;
    double pro_nin = 0.0;
    double pro_ninl = 0.0;
    double pro_nil = 0.0;
    double x_llm = 0.0;
    CategoryGroup group = CategoryGroup::All;
    std::optional<double> node_diff;
    std::optional<double> node_conv;
    std::optional<double> node_sd;
    std::optional<double> node_clus;
    int repeats = 0;
};

/// All four indicators of one run for one group.
///   diff: mean of x_i(T) - x_i(0) over members.
///   conv: first t >= 1 with every member change <= tau, else T.
///   sd:   sample standard deviation (n-1) of final member opinions.
///   clus: cluster count of final member opinions at the given cut.
RunIndicators run_indicators(const Trajectory& trajectory, CategoryGroup group,
                             double tau = kConvergenceTau, double cut = kClusterCut);

/// Average per-run values into an IndicatorSet. Every run must agree on
/// which indicators are defined (group membership is deterministic per
/// scenario, so this holds by construction).
IndicatorSet aggregate_indicators(CategoryGroup group, std::span<const RunIndicators> runs);

std::optional<double> node_diff(std::span<const Trajectory> runs, CategoryGroup group);
std::optional<double> node_conv(std::span<const Trajectory> runs, CategoryGroup group,
                                double tau = kConvergenceTau);
std::optional<double> node_sd(std::span<const Trajectory> runs, CategoryGroup group);
std::optional<double> node_clus(std::span<const Trajectory> runs, CategoryGroup group,
                                double cut = kClusterCut);

}  // namespace opinionsim
