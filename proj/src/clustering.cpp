#include "opinionsim/clustering.hpp"

#include <algorithm>
#include <cmath>

namespace opinionsim {

namespace {

// Active cluster during agglomeration. Clusters of scalar values are fully
// described by their value interval: the single-linkage distance between two
// clusters is the gap between their intervals (0 when they touch/overlap).
struct ActiveCluster {
    int id;
    double lo;
    double hi;
};

double interval_distance(const ActiveCluster& a, const ActiveCluster& b) {
    const double gap = std::max(a.lo, b.lo) - std::min(a.hi, b.hi);
    return gap > 0.0 ? gap : 0.0;
}

}  // namespace

Dendrogram single_linkage(std::span<const double> values) {
    Dendrogram d;
    d.leaves = static_cast<int>(values.size());
    d.values.assign(values.begin(), values.end());
    if (d.leaves <= 1) return d;

    std::vector<ActiveCluster> active;
    active.reserve(values.size());
    for (int i = 0; i < d.leaves; ++i) {
        active.push_back({i, values[i], values[i]});
    }

    d.merges.reserve(values.size() - 1);
    int next_id = d.leaves;
    while (active.size() > 1) {
        // The active list stays sorted by cluster id, so scanning pairs in
        // order and keeping the first minimum realizes the lowest-id-pair
        // tie break.
        std::size_t best_a = 0, best_b = 1;
        double best = interval_distance(active[0], active[1]);
        for (std::size_t a = 0; a < active.size(); ++a) {
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                const double dist = interval_distance(active[a], active[b]);
                if (dist < best) {
                    best = dist;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        const ActiveCluster left = active[best_a];
        const ActiveCluster right = active[best_b];
        d.merges.push_back({std::min(left.id, right.id), std::max(left.id, right.id), best});
        active.erase(active.begin() + best_b);
        active.erase(active.begin() + best_a);
        active.push_back({next_id++, std::min(left.lo, right.lo), std::max(left.hi, right.hi)});
    }
    return d;
}

int count_clusters(const Dendrogram& dendrogram, double cut) {
    if (dendrogram.leaves == 0) return 0;
    int refused = 0;
    // Merge distances are non-decreasing, so everything past the first
    // refused merge is refused too.
    for (std::size_t k = dendrogram.merges.size(); k > 0; --k) {
        if (dendrogram.merges[k - 1].distance > cut) {
            ++refused;
        } else {
            break;
        }
    }
    return 1 + refused;
}

int sorted_gap_cluster_count(std::span<const double> values, double cut) {
    if (values.empty()) return 0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    int clusters = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] > cut) ++clusters;
    }
    return clusters;
}

}  // namespace opinionsim
