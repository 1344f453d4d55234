#include "opinionsim/graph.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "opinionsim/errors.hpp"
#include "opinionsim/rng.hpp"

namespace opinionsim {

void GraphConfig::validate() const {
    if (n < 2) {
        throw ConfigError("graph.n must be >= 2, got " + std::to_string(n));
    }
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw ConfigError("graph.edge_prob must lie in [0, 1], got " +
                          std::to_string(edge_prob));
    }
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list) : n_(n) {
    std::vector<int> deg(n, 0);
    for (auto [i, j] : edge_list) {
        if (i == j) throw ConfigError("self-loop (" + std::to_string(i) + ") in edge list");
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw ConfigError("edge endpoint out of range in edge list");
        }
        ++deg[i];
        ++deg[j];
    }
    offsets_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    adj_.resize(offsets_[n]);
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [i, j] : edge_list) {
        adj_[cursor[i]++] = j;
        adj_[cursor[j]++] = i;
    }
    for (int i = 0; i < n; ++i) {
        auto begin = adj_.begin() + offsets_[i];
        auto end = adj_.begin() + offsets_[i + 1];
        std::sort(begin, end);
        if (std::adjacent_find(begin, end) != end) {
            throw ConfigError("duplicate edge at node " + std::to_string(i));
        }
    }
}

bool Graph::has_edge(int i, int j) const {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return visited == n_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int i = 0; i < n_; ++i) {
        for (int j : neighbors(i)) {
            if (i < j) out.emplace_back(i, j);
        }
    }
    return out;
}

void Graph::dump_edge_list(std::ostream& out) const {
    for (auto [i, j] : edges()) {
        out << i << ' ' << j << '\n';
    }
}

namespace {

Graph sample_er_once(int n, double p, std::uint64_t seed) {
    rng::Stream stream(seed);
    std::vector<std::pair<int, int>> edge_list;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (stream.uniform01() < p) edge_list.emplace_back(i, j);
        }
    }
    return Graph(n, edge_list);
}

}  // namespace

Graph generate_er(const GraphConfig& config) {
    config.validate();
    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const std::uint64_t sub_seed =
            attempt == 0 ? config.seed
                         : rng::derive(config.seed, rng::kGraphAttempt, static_cast<std::uint64_t>(attempt));
        Graph g = sample_er_once(config.n, config.edge_prob, sub_seed);
        if (!config.enforce_connected || g.is_connected()) return g;
    }
    throw GraphGenerationError("no connected G(n, p) sample after 1000 attempts (n=" +
                               std::to_string(config.n) +
                               ", edge_prob=" + std::to_string(config.edge_prob) + ")");
}

Graph extend_er(const Graph& g, int extra, double edge_prob, std::uint64_t seed) {
    if (extra < 0) throw ConfigError("extend_er: extra must be >= 0");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw ConfigError("extend_er: edge_prob must lie in [0, 1]");
    }
    if (extra == 0) return g;
    const int n = g.size();
    auto edge_list = g.edges();
    rng::Stream stream(seed);
    for (int m = 0; m < extra; ++m) {
        const int v = n + m;
        for (int u = 0; u < v; ++u) {
            if (stream.uniform01() < edge_prob) edge_list.emplace_back(u, v);
        }
    }
    return Graph(n + extra, edge_list);
}

}  // namespace opinionsim
