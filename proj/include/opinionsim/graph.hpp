#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace opinionsim {

struct GraphConfig {
    int n = 100;
    double edge_prob = 0.1;
    bool enforce_connected = true;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Undirected simple graph (no self-loops) in CSR form. Immutable after
/// construction; safe to share read-only across workers.
class Graph {
  public:
    Graph() = default;

    /// Build from an edge list of unordered pairs. Duplicates and self-loops
    /// are rejected.
    Graph(int n, const std::vector<std::pair<int, int>>& edge_list);

    int size() const { return n_; }

    int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }

    std::span<const int> neighbors(int i) const {
        return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
    }

    std::size_t edge_count() const { return adj_.size() / 2; }

    bool has_edge(int i, int j) const;

    bool is_connected() const;

    /// Influence weight of node i: degree(i) / (n - 1).
    double authority(int i) const {
        return static_cast<double>(degree(i)) / static_cast<double>(n_ - 1);
    }

    /// Unordered edge pairs (i < j), sorted.
    std::vector<std::pair<int, int>> edges() const;

    /// One "i j" pair per line.
    void dump_edge_list(std::ostream& out) const;

  private:
    int n_ = 0;
    std::vector<int> offsets_{0};
    std::vector<int> adj_;
};

/// Sample G(n, p): each unordered pair is independently an edge. If
/// `enforce_connected` is set and the sample is disconnected, re-sample with
/// a deterministically derived sub-seed (up to 1000 attempts).
Graph generate_er(const GraphConfig& config);

/// Append `extra` nodes to `g`, wiring each new node to every other node
/// (existing and previously appended) independently with probability
/// `edge_prob`. Used when injecting agents into a running scenario.
Graph extend_er(const Graph& g, int extra, double edge_prob, std::uint64_t seed);

}  // namespace opinionsim
