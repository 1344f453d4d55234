"""End-to-end smoke tests of the Python surface over the C++ core."""

import math

import pytest

import opinionsim as osim


def test_version_string():
    assert osim.__version__.count(".") == 2


def test_presets_cover_the_reference_scenarios():
    presets = osim.scenario_presets()
    assert set(presets) == {
        "G1", "benchmark", "N=300", "T=300", "eps=0.8",
        "pro_NINL=0.6", "pro_NIL=0.6", "x_LLM=1",
    }
    bench = presets["benchmark"]
    assert (bench.group_size, bench.iterations) == (100, 100)
    assert (bench.threshold, bench.pro_nin, bench.pro_ninl, bench.pro_nil) == (0.4, 0.6, 0.2, 0.2)
    assert bench.x_llm == -1.0
    assert presets["G1"].classic_hk


def test_reference_grid_cardinality():
    grid = osim.ParameterGrid.reference_defaults()
    assert len(osim.enumerate_grid(grid)) == 7986
    assert len(osim.proportion_triples(0.1)) == 66


def test_run_scenario_is_deterministic_and_bounded():
    params = osim.find_preset("benchmark")
    a = osim.run_scenario(params, 42)
    b = osim.run_scenario(params, 42)
    assert a.opinions() == b.opinions()
    assert all(-1.0 <= x <= 1.0 for row in a.opinions() for x in row)
    assert len(a.mean_opinion) == params.iterations + 1


def test_full_reliance_pins_opinions():
    params = osim.ScenarioParams()
    params.pro_nin = 0.0
    params.pro_ninl = 0.0
    params.pro_nil = 1.0
    params.x_llm = 0.25
    params.iterations = 5
    tr = osim.run_scenario(params, 7)
    assert all(x == 0.25 for x in tr.opinions()[-1])
    ind = osim.run_indicators(tr, osim.CategoryGroup.ALL)
    assert ind.sd == 0.0
    assert ind.clus == 1.0


def test_invalid_proportions_raise():
    params = osim.ScenarioParams()
    params.pro_nin = 0.9
    params.pro_ninl = 0.9
    params.pro_nil = 0.9
    with pytest.raises(ValueError):
        params.validate()


def test_cluster_count_matches_gap_oracle():
    import random

    rng = random.Random(3)
    for _ in range(50):
        values = [rng.uniform(-1, 1) for _ in range(rng.randint(1, 80))]
        cut = rng.uniform(0.01, 1.5)
        dend = osim.single_linkage(values)
        assert osim.count_clusters(dend, cut) == osim.sorted_gap_cluster_count(values, cut)


def test_pearson_and_significance():
    r = osim.pearson_r([1.0, 2.0, 3.0], [1.0, 3.0, 2.0])
    assert r == pytest.approx(0.5)
    assert osim.pearson_r([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) is None
    assert osim.t_test_p(0.5, 30) == pytest.approx(0.0049, abs=2e-4)


def test_small_sweep_and_analysis_pipeline(tmp_path):
    grid = osim.ParameterGrid()
    grid.epsilon_values = [0.2, 0.8]
    grid.x_llm_values = [-1.0, 1.0]
    grid.proportion_step = 0.5
    grid.group_size = 30
    grid.iterations = 15
    grid.repeats = 2
    grid.seed = 11

    results = osim.run_sweep(grid, workers=2)
    assert len(results) == 2 * 2 * 6
    rows = osim.to_summary_rows(results)
    assert len(rows) == len(results) * 4

    path = str(tmp_path / "summary.csv")
    osim.write_summary_csv(path, rows, 1, 11)
    parsed = osim.read_summary_csv(path)
    assert len(parsed) == len(rows)

    cells = osim.correlation_matrix(rows)
    assert len(cells) == 5 * 4 * 4

    report = osim.extremal_combos(rows, "node_diff", osim.ExtremeTarget.MAX, k=3)
    assert report.combos_averaged >= 1
    assert -1.0 <= report.x_llm <= 1.0


def test_intervention_study_matched_baseline():
    base = osim.find_preset("benchmark")
    base.group_size = 30
    base.iterations = 15
    spec = osim.InterventionSpec()
    spec.count = 0
    study = osim.run_intervention_study(
        base, [osim.InterventionKind.NEUTRAL], spec, repeats=4, seed=5, workers=2
    )
    assert study.outcomes[0].kind == osim.InterventionKind.NONE
    assert study.outcomes[1].final_mean_opinion == study.outcomes[0].final_mean_opinion
