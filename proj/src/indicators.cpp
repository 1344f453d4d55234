#include "opinionsim/indicators.hpp"

#include <cmath>
#include <stdexcept>

#include "opinionsim/clustering.hpp"
#include "opinionsim/errors.hpp"

namespace opinionsim {

const char* to_string(CategoryGroup g) {
    switch (g) {
        case CategoryGroup::Nin: return "nin";
        case CategoryGroup::Ninl: return "ninl";
        case CategoryGroup::Nil: return "nil";
        case CategoryGroup::All: return "all";
    }
    return "?";
}

std::optional<CategoryGroup> category_group_from_string(std::string_view s) {
    if (s == "nin" || s == "NIN") return CategoryGroup::Nin;
    if (s == "ninl" || s == "NINL") return CategoryGroup::Ninl;
    if (s == "nil" || s == "NIL") return CategoryGroup::Nil;
    if (s == "all" || s == "ALL") return CategoryGroup::All;
    return std::nullopt;
}

namespace {

bool in_group(Category c, CategoryGroup g) {
    return g == CategoryGroup::All || static_cast<std::uint8_t>(c) == static_cast<std::uint8_t>(g);
}

std::vector<int> group_members(const Trajectory& trajectory, CategoryGroup group) {
    std::vector<int> members;
    for (int i = 0; i < trajectory.agents; ++i) {
        if (in_group(trajectory.category[i], group)) members.push_back(i);
    }
    return members;
}

}  // namespace

RunIndicators run_indicators(const Trajectory& trajectory, CategoryGroup group, double tau,
                             double cut) {
    RunIndicators out;
    const auto members = group_members(trajectory, group);
    if (members.empty()) return out;  // undefined, never zero

    const auto first = trajectory.row(0);
    const auto last = trajectory.row(trajectory.steps);

    double diff_sum = 0.0;
    for (int i : members) diff_sum += last[i] - first[i];
    out.diff = diff_sum / static_cast<double>(members.size());

    // First t (from 1, change needs two time points) at which every member
    // moved by at most tau; T when that never happens.
    int conv = trajectory.steps;
    for (int t = 1; t <= trajectory.steps; ++t) {
        const auto cur = trajectory.row(t);
        const auto prev = trajectory.row(t - 1);
        bool settled = true;
        for (int i : members) {
            if (std::abs(cur[i] - prev[i]) > tau) {
                settled = false;
                break;
            }
        }
        if (settled) {
            conv = t;
            break;
        }
    }
    out.conv = static_cast<double>(conv);

    if (members.size() >= 2) {
        double lo = last[members.front()], hi = lo;
        double mean = 0.0;
        for (int i : members) {
            mean += last[i];
            lo = std::min(lo, last[i]);
            hi = std::max(hi, last[i]);
        }
        if (lo == hi) {
            out.sd = 0.0;  // identical finals: exactly zero, no rounding residue
        } else {
            mean /= static_cast<double>(members.size());
            double ss = 0.0;
            for (int i : members) {
                const double d = last[i] - mean;
                ss += d * d;
            }
            out.sd = std::sqrt(ss / static_cast<double>(members.size() - 1));
        }
    }

    std::vector<double> finals;
    finals.reserve(members.size());
    for (int i : members) finals.push_back(last[i]);
    out.clus = static_cast<double>(sorted_gap_cluster_count(finals, cut));

    return out;
}

namespace {

std::optional<double> mean_of(std::span<const RunIndicators> runs,
                              std::optional<double> RunIndicators::*field) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& r : runs) {
        if ((r.*field).has_value()) {
            sum += *(r.*field);
            ++defined;
        }
    }
    if (defined == 0) return std::nullopt;
    if (defined != runs.size()) {
        throw AnalysisError("indicator defined in only part of the repeats");
    }
    return sum / static_cast<double>(defined);
}

}  // namespace

IndicatorSet aggregate_indicators(CategoryGroup group, std::span<const RunIndicators> runs) {
    IndicatorSet set;
    set.group = group;
    set.repeats = static_cast<int>(runs.size());
    if (runs.empty()) return set;
    set.node_diff = mean_of(runs, &RunIndicators::diff);
    set.node_conv = mean_of(runs, &RunIndicators::conv);
    set.node_sd = mean_of(runs, &RunIndicators::sd);
    set.node_clus = mean_of(runs, &RunIndicators::clus);
    return set;
}

namespace {

IndicatorSet over_runs(std::span<const Trajectory> runs, CategoryGroup group, double tau,
                       double cut) {
    std::vector<RunIndicators> per_run;
    per_run.reserve(runs.size());
    for (const auto& t : runs) per_run.push_back(run_indicators(t, group, tau, cut));
    return aggregate_indicators(group, per_run);
}

}  // namespace

std::optional<double> node_diff(std::span<const Trajectory> runs, CategoryGroup group) {
    return over_runs(runs, group, kConvergenceTau, kClusterCut).node_diff;
}

std::optional<double> node_conv(std::span<const Trajectory> runs, CategoryGroup group,
                                double tau) {
    return over_runs(runs, group, tau, kClusterCut).node_conv;
}

std::optional<double> node_sd(std::span<const Trajectory> runs, CategoryGroup group) {
    return over_runs(runs, group, kConvergenceTau, kClusterCut).node_sd;
}

std::optional<double> node_clus(std::span<const Trajectory> runs, CategoryGroup group,
                                double cut) {
    return over_runs(runs, group, kConvergenceTau, cut).node_clus;
}

}  // namespace opinionsim
