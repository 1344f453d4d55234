#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "opinionsim/analysis.hpp"
#include "opinionsim/clustering.hpp"
#include "opinionsim/errors.hpp"
#include "opinionsim/indicators.hpp"
#include "opinionsim/interventions.hpp"
#include "opinionsim/io.hpp"
#include "opinionsim/model.hpp"
#include "opinionsim/sweep.hpp"
#include "opinionsim/version.hpp"

namespace py = pybind11;
using namespace opinionsim;

namespace {

std::vector<std::vector<double>> opinion_matrix(const Trajectory& tr) {
    std::vector<std::vector<double>> rows;
    rows.reserve(tr.steps + 1);
    for (int t = 0; t <= tr.steps; ++t) {
        const auto row = tr.row(t);
        rows.emplace_back(row.begin(), row.end());
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Agent-based opinion dynamics with LLM-influenced usage strategies";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<GraphGenerationError>(m, "GraphGenerationError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_RuntimeError);

    py::enum_<Category>(m, "Category")
        .value("NIN", Category::Nin)
        .value("NINL", Category::Ninl)
        .value("NIL", Category::Nil);

    py::enum_<CategoryGroup>(m, "CategoryGroup")
        .value("NIN", CategoryGroup::Nin)
        .value("NINL", CategoryGroup::Ninl)
        .value("NIL", CategoryGroup::Nil)
        .value("ALL", CategoryGroup::All);

    py::enum_<InterventionKind>(m, "InterventionKind")
        .value("NONE", InterventionKind::None)
        .value("OPPOSITE", InterventionKind::Opposite)
        .value("NEUTRAL", InterventionKind::Neutral)
        .value("RANDOM", InterventionKind::Random);

    py::enum_<ExtremeTarget>(m, "ExtremeTarget")
        .value("MIN", ExtremeTarget::Min)
        .value("MAX", ExtremeTarget::Max)
        .value("POLARIZATION", ExtremeTarget::Polarization);

    py::class_<GraphConfig>(m, "GraphConfig")
        .def(py::init<>())
        .def_readwrite("n", &GraphConfig::n)
        .def_readwrite("edge_prob", &GraphConfig::edge_prob)
        .def_readwrite("enforce_connected", &GraphConfig::enforce_connected)
        .def_readwrite("seed", &GraphConfig::seed);

    py::class_<Graph>(m, "Graph")
        .def("size", &Graph::size)
        .def("degree", &Graph::degree)
        .def("authority", &Graph::authority)
        .def("edge_count", &Graph::edge_count)
        .def("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("is_connected", &Graph::is_connected);

    py::class_<EventConfig>(m, "EventConfig")
        .def(py::init<>())
        .def_readwrite("enabled", &EventConfig::enabled)
        .def_readwrite("probability", &EventConfig::probability)
        .def_readwrite("fraction", &EventConfig::fraction)
        .def_readwrite("amplitude", &EventConfig::amplitude);

    py::class_<ScenarioParams>(m, "ScenarioParams")
        .def(py::init<>())
        .def_readwrite("group_size", &ScenarioParams::group_size)
        .def_readwrite("iterations", &ScenarioParams::iterations)
        .def_readwrite("threshold", &ScenarioParams::threshold)
        .def_readwrite("pro_nin", &ScenarioParams::pro_nin)
        .def_readwrite("pro_ninl", &ScenarioParams::pro_ninl)
        .def_readwrite("pro_nil", &ScenarioParams::pro_nil)
        .def_readwrite("x_llm", &ScenarioParams::x_llm)
        .def_readwrite("llm_authority", &ScenarioParams::llm_authority)
        .def_readwrite("classic_hk", &ScenarioParams::classic_hk)
        .def_readwrite("negate_initial_opinions", &ScenarioParams::negate_initial_opinions)
        .def_readwrite("events", &ScenarioParams::events)
        .def_readwrite("graph", &ScenarioParams::graph)
        .def_readwrite("agent_thresholds", &ScenarioParams::agent_thresholds)
        .def_readwrite("record_cluster_series", &ScenarioParams::record_cluster_series)
        .def_readwrite("seed", &ScenarioParams::seed)
        .def("validate", &ScenarioParams::validate);

    py::class_<AgentState>(m, "AgentState")
        .def_readonly("id", &AgentState::id)
        .def_readonly("category", &AgentState::category)
        .def_readonly("opinion", &AgentState::opinion)
        .def_readonly("stubbornness", &AgentState::stubbornness)
        .def_readonly("threshold", &AgentState::threshold)
        .def_readonly("authority", &AgentState::authority);

    py::class_<Population>(m, "Population")
        .def("size", &Population::size)
        .def("agent", &Population::agent)
        .def("agents", &Population::agents)
        .def_readonly("opinion", &Population::opinion)
        .def_readonly("category", &Population::category);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("agents", &Trajectory::agents)
        .def_readonly("steps", &Trajectory::steps)
        .def_readonly("category", &Trajectory::category)
        .def_readonly("mean_opinion", &Trajectory::mean_opinion)
        .def_readonly("mean_abs_change", &Trajectory::mean_abs_change)
        .def_readonly("std_dev", &Trajectory::std_dev)
        .def_readonly("cluster_count", &Trajectory::cluster_count)
        .def("opinion_at", &Trajectory::opinion_at)
        .def("opinions", &opinion_matrix, "Opinion matrix as rows[t][agent]");

    py::class_<RunIndicators>(m, "RunIndicators")
        .def_readonly("diff", &RunIndicators::diff)
        .def_readonly("conv", &RunIndicators::conv)
        .def_readonly("sd", &RunIndicators::sd)
        .def_readonly("clus", &RunIndicators::clus);

    py::class_<IndicatorSet>(m, "IndicatorSet")
        .def_readonly("group", &IndicatorSet::group)
        .def_readonly("repeats", &IndicatorSet::repeats)
        .def_readonly("node_diff", &IndicatorSet::node_diff)
        .def_readonly("node_conv", &IndicatorSet::node_conv)
        .def_readonly("node_sd", &IndicatorSet::node_sd)
        .def_readonly("node_clus", &IndicatorSet::node_clus);

    py::class_<ParameterGrid>(m, "ParameterGrid")
        .def(py::init<>())
        .def_static("reference_defaults", &ParameterGrid::reference_defaults)
        .def_readwrite("epsilon_values", &ParameterGrid::epsilon_values)
        .def_readwrite("x_llm_values", &ParameterGrid::x_llm_values)
        .def_readwrite("proportion_step", &ParameterGrid::proportion_step)
        .def_readwrite("fixed_proportions", &ParameterGrid::fixed_proportions)
        .def_readwrite("group_size", &ParameterGrid::group_size)
        .def_readwrite("iterations", &ParameterGrid::iterations)
        .def_readwrite("repeats", &ParameterGrid::repeats)
        .def_readwrite("seed", &ParameterGrid::seed)
        .def_readwrite("events", &ParameterGrid::events)
        .def_readwrite("graph", &ParameterGrid::graph);

    py::class_<ComboResult>(m, "ComboResult")
        .def_readonly("params", &ComboResult::params)
        .def_readonly("repeats", &ComboResult::repeats)
        .def("group", &ComboResult::group, py::return_value_policy::copy);

    py::class_<SummaryRow>(m, "SummaryRow")
        .def_readonly("group_size", &SummaryRow::group_size)
        .def_readonly("iterations", &SummaryRow::iterations)
        .def_readonly("epsilon", &SummaryRow::epsilon)
        .def_readonly("pro_nin", &SummaryRow::pro_nin)
        .def_readonly("pro_ninl", &SummaryRow::pro_ninl)
        .def_readonly("pro_nil", &SummaryRow::pro_nil)
        .def_readonly("x_llm", &SummaryRow::x_llm)
        .def_readonly("group", &SummaryRow::group)
        .def_readonly("node_diff", &SummaryRow::node_diff)
        .def_readonly("node_conv", &SummaryRow::node_conv)
        .def_readonly("node_sd", &SummaryRow::node_sd)
        .def_readonly("node_clus", &SummaryRow::node_clus)
        .def_readonly("repeats", &SummaryRow::repeats);

    py::class_<CorrelationCell>(m, "CorrelationCell")
        .def_readonly("parameter", &CorrelationCell::parameter)
        .def_readonly("indicator", &CorrelationCell::indicator)
        .def_readonly("group", &CorrelationCell::group)
        .def_readonly("r", &CorrelationCell::r)
        .def_readonly("p", &CorrelationCell::p)
        .def_readonly("stars", &CorrelationCell::stars)
        .def_readonly("missing", &CorrelationCell::missing)
        .def_readonly("n", &CorrelationCell::n);

    py::class_<ExtremeReport>(m, "ExtremeReport")
        .def_readonly("indicator", &ExtremeReport::indicator)
        .def_readonly("target", &ExtremeReport::target)
        .def_readonly("group", &ExtremeReport::group)
        .def_readonly("epsilon", &ExtremeReport::epsilon)
        .def_readonly("pro_nin", &ExtremeReport::pro_nin)
        .def_readonly("pro_ninl", &ExtremeReport::pro_ninl)
        .def_readonly("pro_nil", &ExtremeReport::pro_nil)
        .def_readonly("x_llm", &ExtremeReport::x_llm)
        .def_readonly("combos_averaged", &ExtremeReport::combos_averaged);

    py::class_<StrategyFamilyStats>(m, "StrategyFamilyStats")
        .def_readonly("family", &StrategyFamilyStats::family)
        .def_readonly("cells", &StrategyFamilyStats::cells)
        .def_readonly("mean_node_sd", &StrategyFamilyStats::mean_node_sd)
        .def_readonly("mean_node_clus", &StrategyFamilyStats::mean_node_clus)
        .def_readonly("welch_p_sd_vs_none", &StrategyFamilyStats::welch_p_sd_vs_none)
        .def_readonly("welch_p_clus_vs_none", &StrategyFamilyStats::welch_p_clus_vs_none);

    py::class_<ExtremeStrategyReport>(m, "ExtremeStrategyReport")
        .def_readonly("families", &ExtremeStrategyReport::families)
        .def_readonly("sd_ratio_partial_over_none",
                      &ExtremeStrategyReport::sd_ratio_partial_over_none);

    py::class_<InterventionSpec>(m, "InterventionSpec")
        .def(py::init<>())
        .def_readwrite("kind", &InterventionSpec::kind)
        .def_readwrite("count", &InterventionSpec::count)
        .def_readwrite("category", &InterventionSpec::category)
        .def_readwrite("time", &InterventionSpec::time)
        .def_readwrite("stubbornness", &InterventionSpec::stubbornness)
        .def("resolved_count", &InterventionSpec::resolved_count);

    py::class_<InterventionOutcome>(m, "InterventionOutcome")
        .def_readonly("kind", &InterventionOutcome::kind)
        .def_readonly("final_mean_opinion", &InterventionOutcome::final_mean_opinion)
        .def_readonly("mean", &InterventionOutcome::mean)
        .def_readonly("min", &InterventionOutcome::min)
        .def_readonly("max", &InterventionOutcome::max)
        .def_readonly("span", &InterventionOutcome::span)
        .def_readonly("std_dev", &InterventionOutcome::std_dev)
        .def_readonly("p_vs_none", &InterventionOutcome::p_vs_none);

    py::class_<InterventionStudy>(m, "InterventionStudy")
        .def_readonly("base", &InterventionStudy::base)
        .def_readonly("repeats", &InterventionStudy::repeats)
        .def_readonly("outcomes", &InterventionStudy::outcomes);

    // graph
    m.def("generate_er", &generate_er, py::arg("config"));

    // model
    m.def("init_population", &init_population, py::arg("params"), py::arg("graph"),
          py::arg("seed"));
    m.def("confidence_set", &confidence_set, py::arg("j"), py::arg("population"),
          py::arg("graph"));
    m.def("update_agent", &update_agent, py::arg("j"), py::arg("population"), py::arg("graph"),
          py::arg("params"));
    m.def("update_classic_hk", &update_classic_hk, py::arg("j"), py::arg("population"),
          py::arg("graph"));
    m.def(
        "run_scenario",
        [](const ScenarioParams& params, std::uint64_t seed) {
            py::gil_scoped_release release;
            return run_scenario(params, seed);
        },
        py::arg("params"), py::arg("seed"));

    // clustering
    m.def("sorted_gap_cluster_count",
          [](const std::vector<double>& values, double cut) {
              return sorted_gap_cluster_count(values, cut);
          },
          py::arg("values"), py::arg("cut"));
    m.def("count_clusters", &count_clusters, py::arg("dendrogram"), py::arg("cut"));
    m.def("single_linkage",
          [](const std::vector<double>& values) { return single_linkage(values); },
          py::arg("values"));

    py::class_<Merge>(m, "Merge")
        .def_readonly("left", &Merge::left)
        .def_readonly("right", &Merge::right)
        .def_readonly("distance", &Merge::distance);

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("leaves", &Dendrogram::leaves)
        .def_readonly("values", &Dendrogram::values)
        .def_readonly("merges", &Dendrogram::merges);

    // indicators
    m.def("run_indicators", &run_indicators, py::arg("trajectory"), py::arg("group"),
          py::arg("tau") = kConvergenceTau, py::arg("cut") = kClusterCut);
    m.def(
        "indicators_over_runs",
        [](const std::vector<Trajectory>& runs, CategoryGroup group, double tau, double cut) {
            std::vector<RunIndicators> per_run;
            per_run.reserve(runs.size());
            for (const auto& tr : runs) per_run.push_back(run_indicators(tr, group, tau, cut));
            return aggregate_indicators(group, per_run);
        },
        py::arg("runs"), py::arg("group"), py::arg("tau") = kConvergenceTau,
        py::arg("cut") = kClusterCut);

    // sweep
    m.def("enumerate_grid", &enumerate_grid, py::arg("grid"));
    m.def("proportion_triples", &proportion_triples, py::arg("step"));
    m.def("run_seed", &run_seed, py::arg("master_seed"), py::arg("combo_index"),
          py::arg("repeat"));
    m.def(
        "run_sweep",
        [](const ParameterGrid& grid, unsigned workers) {
            py::gil_scoped_release release;
            SweepOptions options;
            options.workers = workers;
            return run_sweep(grid, options);
        },
        py::arg("grid"), py::arg("workers") = 0);
    m.def("to_summary_rows",
          [](const std::vector<ComboResult>& results) { return to_summary_rows(results); },
          py::arg("results"));
    m.def("scenario_presets", [] {
        py::dict out;
        for (const auto& [name, params] : scenario_presets()) out[name.c_str()] = params;
        return out;
    });
    m.def("find_preset", &find_preset, py::arg("name"));

    // analysis
    m.def("pearson_r",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              return pearson_r(x, y);
          },
          py::arg("x"), py::arg("y"));
    m.def("t_test_p", &t_test_p, py::arg("r"), py::arg("n"));
    m.def("student_t_cdf", &student_t_cdf, py::arg("t"), py::arg("dof"));
    m.def("regularized_incomplete_beta", &regularized_incomplete_beta, py::arg("a"),
          py::arg("b"), py::arg("x"));
    m.def("welch_t_test_p",
          [](const std::vector<double>& a, const std::vector<double>& b, bool one_sided) {
              return welch_t_test_p(a, b, one_sided);
          },
          py::arg("a"), py::arg("b"), py::arg("one_sided") = false);
    m.def("paired_sign_test_p",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return paired_sign_test_p(a, b);
          },
          py::arg("a"), py::arg("b"));
    m.def("correlation_matrix",
          [](const std::vector<SummaryRow>& rows) { return correlation_matrix(rows); },
          py::arg("rows"));
    m.def("extremal_combos",
          [](const std::vector<SummaryRow>& rows, const std::string& indicator,
             ExtremeTarget target, int k, CategoryGroup group) {
              return extremal_combos(rows, indicator, target, k, group);
          },
          py::arg("rows"), py::arg("indicator"), py::arg("target"), py::arg("k") = 10,
          py::arg("group") = CategoryGroup::All);
    m.def("compare_extreme_strategies",
          [](const std::vector<SummaryRow>& rows) { return compare_extreme_strategies(rows); },
          py::arg("rows"));

    // interventions
    m.def(
        "run_intervention_study",
        [](const ScenarioParams& base, const std::vector<InterventionKind>& kinds,
           const InterventionSpec& spec, int repeats, std::uint64_t seed, unsigned workers) {
            py::gil_scoped_release release;
            return run_intervention_study(base, kinds, spec, repeats, seed, workers);
        },
        py::arg("base"), py::arg("kinds"), py::arg("spec") = InterventionSpec{},
        py::arg("repeats") = 100, py::arg("seed") = 0, py::arg("workers") = 0);
    m.def("run_with_injection", &run_with_injection, py::arg("base"), py::arg("spec"),
          py::arg("seed"));

    // io
    m.def("read_summary_csv", &read_summary_csv, py::arg("path"));
    m.def("write_summary_csv",
          [](const std::string& path, const std::vector<SummaryRow>& rows,
             std::uint64_t config_hash, std::uint64_t seed) {
              write_summary_csv(path, rows, OutputMeta{config_hash, seed, ""});
          },
          py::arg("path"), py::arg("rows"), py::arg("config_hash") = 0, py::arg("seed") = 0);
}
