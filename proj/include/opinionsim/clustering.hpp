#pragma once

#include <span>
#include <vector>

namespace opinionsim {

/// One agglomeration step. Cluster ids follow the usual convention: leaves
/// are 0..n-1, the cluster created by merge k gets id n+k.
struct Merge {
    int left = 0;   // smaller cluster id
    int right = 0;  // larger cluster id
    double distance = 0.0;
};

struct Dendrogram {
    int leaves = 0;
    std::vector<double> values;  // leaf values, original order
    std::vector<Merge> merges;   // n-1 entries, non-decreasing distance
};

/// Bottom-up single-linkage clustering of scalar values. Every value starts
/// as its own cluster; the pair of clusters at minimal distance is merged
/// repeatedly, where cluster distance is the smallest absolute difference
/// between member values. Ties are broken by the lowest cluster-id pair.
Dendrogram single_linkage(std::span<const double> values);

/// Number of clusters left when refusing all merges with distance > cut,
/// i.e. 1 + |merges above the cut|. A gap exactly equal to the cut does not
/// split.
int count_clusters(const Dendrogram& dendrogram, double cut);

/// Independent route to the same count: sort the values and count adjacent
/// gaps strictly greater than the cut, plus one. For scalar single linkage
/// this equals count_clusters exactly; it is also the O(n log n) path used
/// in production.
int sorted_gap_cluster_count(std::span<const double> values, double cut);

}  // namespace opinionsim
