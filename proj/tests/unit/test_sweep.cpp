#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "opinionsim/errors.hpp"
#include "opinionsim/io.hpp"
#include "opinionsim/sweep.hpp"

using namespace opinionsim;

namespace {

ParameterGrid tiny_grid() {
    ParameterGrid grid;
    grid.epsilon_values = {0.2, 0.6};
    grid.x_llm_values = {-1.0, 1.0};
    grid.proportion_step = 0.5;
    grid.group_size = 30;
    grid.iterations = 20;
    grid.repeats = 2;
    grid.seed = 7;
    return grid;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("reference grid has exactly 7986 combinations") {
    const auto combos = enumerate_grid(ParameterGrid::reference_defaults());
    CHECK(combos.size() == 7986);
    CHECK(proportion_triples(0.1).size() == 66);
}

TEST_CASE("small grids multiply out as expected") {
    ParameterGrid grid;
    grid.epsilon_values = {0.1, 0.5, 0.9};
    grid.x_llm_values = {-1.0, 0.0, 1.0};
    grid.proportion_step = 0.5;  // 6 triples
    CHECK(proportion_triples(0.5).size() == 6);
    CHECK(enumerate_grid(grid).size() == 54);
}

TEST_CASE("fixed proportions pin the triple set") {
    ParameterGrid grid;
    grid.epsilon_values = {0.4};
    grid.x_llm_values = {-1.0};
    grid.fixed_proportions = {{1.0, 0.0, 0.0}};
    const auto combos = enumerate_grid(grid);
    REQUIRE(combos.size() == 1);
    CHECK(combos[0].pro_nin == 1.0);
}

TEST_CASE("a non-dividing proportion step is rejected") {
    ParameterGrid grid = tiny_grid();
    grid.proportion_step = 0.3;
    CHECK_THROWS_AS(enumerate_grid(grid), ConfigError);
}

TEST_CASE("grid enumeration is lexicographic and proportions sum to one") {
    const auto combos = enumerate_grid(tiny_grid());
    REQUIRE(combos.size() == 2 * 2 * 6);
    CHECK(combos.front().threshold == 0.2);
    CHECK(combos.back().threshold == 0.6);
    for (const auto& c : combos) {
        CHECK(std::abs(c.pro_nin + c.pro_ninl + c.pro_nil - 1.0) <= 1e-9);
    }
    // epsilon is the slowest axis, the proportion triple the fastest.
    CHECK(combos[0].x_llm == -1.0);
    CHECK(combos[6].x_llm == 1.0);
}

TEST_CASE("single-combo sweep equals a direct run") {
    ParameterGrid grid;
    grid.epsilon_values = {0.4};
    grid.x_llm_values = {-1.0};
    grid.fixed_proportions = {{0.6, 0.2, 0.2}};
    grid.group_size = 40;
    grid.iterations = 15;
    grid.repeats = 1;
    grid.seed = 5;

    const auto results = run_sweep(grid);
    REQUIRE(results.size() == 1);

    ScenarioParams params = enumerate_grid(grid)[0];
    const Trajectory tr = run_scenario(params, run_seed(grid.seed, 0, 0));
    for (auto group : kCategoryGroups) {
        const auto direct = run_indicators(tr, group);
        const auto& set = results[0].group(group);
        CHECK(set.node_diff == direct.diff);
        CHECK(set.node_conv == direct.conv);
        CHECK(set.node_sd == direct.sd);
        CHECK(set.node_clus == direct.clus);
    }
}

TEST_CASE("sweep results do not depend on the worker count") {
    const ParameterGrid grid = tiny_grid();
    SweepOptions one;
    one.workers = 1;
    SweepOptions four;
    four.workers = 4;
    const auto a = run_sweep(grid, one);
    const auto b = run_sweep(grid, four);
    REQUIRE(a.size() == b.size());
    const auto rows_a = to_summary_rows(a);
    const auto rows_b = to_summary_rows(b);
    for (std::size_t i = 0; i < rows_a.size(); ++i) {
        CHECK(rows_a[i].node_diff == rows_b[i].node_diff);
        CHECK(rows_a[i].node_conv == rows_b[i].node_conv);
        CHECK(rows_a[i].node_sd == rows_b[i].node_sd);
        CHECK(rows_a[i].node_clus == rows_b[i].node_clus);
    }
}

TEST_CASE("full-reliance rows collapse to zero spread and one cluster") {
    ParameterGrid grid;
    grid.epsilon_values = {0.0, 0.5, 1.0};
    grid.x_llm_values = {-1.0, 0.2};
    grid.fixed_proportions = {{0.0, 0.0, 1.0}};
    grid.group_size = 25;
    grid.iterations = 10;
    grid.repeats = 2;
    const auto results = run_sweep(grid);
    for (const auto& res : results) {
        CHECK(*res.group(CategoryGroup::All).node_sd == 0.0);
        CHECK(*res.group(CategoryGroup::All).node_clus == 1.0);
        CHECK(*res.group(CategoryGroup::All).node_conv <= 2.0);
    }
}

TEST_CASE("interrupted progress files resume to identical results") {
    namespace fs = std::filesystem;
    const ParameterGrid grid = tiny_grid();
    const auto dir = fs::temp_directory_path() / "opinionsim_resume_test";
    fs::create_directories(dir);
    const std::string progress = (dir / "sweep.progress").string();

    SweepOptions options;
    options.workers = 2;
    options.progress_path = progress;
    const auto full = run_sweep(grid, options);

    // Simulate a crash by truncating the progress file to a few combos
    // (plus a torn final line), then resume.
    {
        std::ifstream in(progress);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        REQUIRE(lines.size() > 5);
        std::ofstream out(progress, std::ios::trunc);
        for (std::size_t i = 0; i < 5; ++i) out << lines[i] << '\n';
        out << lines[5].substr(0, lines[5].size() / 2);  // torn write
    }

    SweepOptions resume;
    resume.workers = 2;
    resume.progress_path = progress;
    resume.resume = true;
    const auto resumed = run_sweep(grid, resume);

    const auto rows_full = to_summary_rows(full);
    const auto rows_resumed = to_summary_rows(resumed);
    REQUIRE(rows_full.size() == rows_resumed.size());
    OutputMeta meta{grid_config_hash(grid), grid.seed, ""};
    const std::string path_a = (dir / "a.csv").string();
    const std::string path_b = (dir / "b.csv").string();
    write_summary_csv(path_a, rows_full, meta);
    write_summary_csv(path_b, rows_resumed, meta);
    CHECK(slurp(path_a) == slurp(path_b));

    // A progress file from a different grid is refused.
    ParameterGrid other = grid;
    other.seed = grid.seed + 1;
    SweepOptions mismatch;
    mismatch.progress_path = progress;
    mismatch.resume = true;
    CHECK_THROWS_AS(run_sweep(other, mismatch), ConfigError);

    fs::remove_all(dir);
}

TEST_CASE("the named presets carry the documented parameters") {
    const auto presets = scenario_presets();
    REQUIRE(presets.size() == 8);

    const auto benchmark = find_preset("benchmark");
    REQUIRE(benchmark.has_value());
    CHECK(benchmark->group_size == 100);
    CHECK(benchmark->iterations == 100);
    CHECK(benchmark->threshold == 0.4);
    CHECK(benchmark->pro_nin == 0.6);
    CHECK(benchmark->pro_ninl == 0.2);
    CHECK(benchmark->pro_nil == 0.2);
    CHECK(benchmark->x_llm == -1.0);
    CHECK_FALSE(benchmark->classic_hk);

    const auto g1 = find_preset("G1");
    REQUIRE(g1.has_value());
    CHECK(g1->classic_hk);
    CHECK(g1->group_size == 100);
    CHECK(g1->iterations == 100);
    CHECK(g1->threshold == 0.4);

    const auto positive = find_preset("x_LLM=1");
    REQUIRE(positive.has_value());
    CHECK(positive->x_llm == 1.0);
    CHECK(positive->pro_nin == 0.6);

    CHECK_FALSE(find_preset("no-such-preset").has_value());
}

TEST_CASE("parallel_for propagates the first failure") {
    CHECK_THROWS_AS(parallel_for_indexed(100, 4,
                                         [](std::size_t i) {
                                             if (i == 17) throw AnalysisError("boom");
                                         }),
                    AnalysisError);
}
