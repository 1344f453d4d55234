#include <numeric>
#include <sstream>

#include "doctest.h"
#include "opinionsim/errors.hpp"
#include "opinionsim/graph.hpp"
#include "opinionsim/rng.hpp"

using namespace opinionsim;

TEST_CASE("p = 1 yields the complete graph") {
    GraphConfig config{3, 1.0, false, 123};
    const Graph g = generate_er(config);
    CHECK(g.edge_count() == 3);
    for (int i = 0; i < 3; ++i) CHECK(g.degree(i) == 2);
}

TEST_CASE("p = 0 yields the empty graph") {
    GraphConfig config{5, 0.0, false, 123};
    const Graph g = generate_er(config);
    CHECK(g.edge_count() == 0);
    CHECK_FALSE(g.is_connected());
}

TEST_CASE("equal seeds regenerate the identical edge set") {
    GraphConfig config{100, 0.1, true, 20240501};
    const Graph a = generate_er(config);
    const Graph b = generate_er(config);
    CHECK(a.edges() == b.edges());
}

TEST_CASE("authority is degree over n-1") {
    // A star over 100 nodes: the hub sees everyone, leaves see only the hub.
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < 100; ++i) edges.emplace_back(0, i);
    // Wire node 1 to 32 extra leaves so its degree lands on 33.
    for (int i = 2; i <= 33; ++i) edges.emplace_back(1, i);
    const Graph g(100, edges);
    CHECK(g.degree(1) == 33);
    CHECK(g.authority(1) == doctest::Approx(33.0 / 99.0));
    CHECK(g.authority(0) == doctest::Approx(1.0));
}

TEST_CASE("complete-graph authority is 1, isolated authority is 0") {
    const Graph complete(3, {{0, 1}, {0, 2}, {1, 2}});
    for (int i = 0; i < 3; ++i) CHECK(complete.authority(i) == doctest::Approx(1.0));
    const Graph with_isolated(3, {{0, 1}});
    CHECK(with_isolated.authority(2) == 0.0);
}

TEST_CASE("degree sum is even and authorities stay in [0, 1]") {
    rng::Stream stream(3);
    for (int it = 0; it < 25; ++it) {
        GraphConfig config;
        config.n = 10 + static_cast<int>(stream.below(80));
        config.edge_prob = stream.uniform01();
        config.enforce_connected = false;
        config.seed = stream.raw();
        const Graph g = generate_er(config);
        std::size_t degree_sum = 0;
        for (int i = 0; i < g.size(); ++i) {
            degree_sum += g.degree(i);
            CHECK(g.authority(i) >= 0.0);
            CHECK(g.authority(i) <= 1.0);
            CHECK((g.authority(i) == 1.0) == (g.degree(i) == g.size() - 1));
        }
        CHECK(degree_sum % 2 == 0);
        CHECK(degree_sum == 2 * g.edge_count());
    }
}

TEST_CASE("connectivity enforcement produces one component") {
    GraphConfig config{40, 0.08, true, 1};
    for (int it = 0; it < 10; ++it) {
        config.seed = 1000 + it;
        CHECK(generate_er(config).is_connected());
    }
}

TEST_CASE("unsatisfiable connectivity fails with a telling error") {
    GraphConfig config{5, 0.0, true, 9};
    CHECK_THROWS_WITH_AS(generate_er(config),
                         doctest::Contains("edge_prob=0.000000"), GraphGenerationError);
    try {
        generate_er(config);
    } catch (const GraphGenerationError& e) {
        CHECK(std::string(e.what()).find("n=5") != std::string::npos);
    }
}

TEST_CASE("config validation rejects bad values") {
    CHECK_THROWS_AS(generate_er(GraphConfig{1, 0.5, false, 0}), ConfigError);
    CHECK_THROWS_AS(generate_er(GraphConfig{10, 1.5, false, 0}), ConfigError);
    CHECK_THROWS_AS(generate_er(GraphConfig{10, -0.1, false, 0}), ConfigError);
}

TEST_CASE("edge list dump is one pair per line") {
    const Graph g(3, {{0, 1}, {1, 2}});
    std::ostringstream out;
    g.dump_edge_list(out);
    CHECK(out.str() == "0 1\n1 2\n");
}

TEST_CASE("extend_er keeps old edges and recounts degrees") {
    GraphConfig config{30, 0.2, false, 5};
    const Graph g = generate_er(config);
    const Graph bigger = extend_er(g, 3, 0.5, 77);
    CHECK(bigger.size() == 33);
    for (auto [i, j] : g.edges()) CHECK(bigger.has_edge(i, j));
    CHECK(bigger.edge_count() >= g.edge_count());
    // Zero growth is the identity.
    const Graph same = extend_er(g, 0, 0.5, 77);
    CHECK(same.edges() == g.edges());
}
