"""Agent-based opinion dynamics with LLM-influenced usage strategies.

Thin Python surface over the C++ core: scenario simulation, parameter
sweeps, outcome indicators, correlation/extremes analysis and agent
injection studies.
"""

from ._core import (  # noqa: F401
    AgentState,
    AnalysisError,
    Category,
    CategoryGroup,
    ComboResult,
    ConfigError,
    CorrelationCell,
    Dendrogram,
    EventConfig,
    ExtremeReport,
    ExtremeStrategyReport,
    ExtremeTarget,
    Graph,
    GraphConfig,
    GraphGenerationError,
    IndicatorSet,
    InputError,
    InterventionKind,
    InterventionOutcome,
    InterventionSpec,
    InterventionStudy,
    Merge,
    ParameterGrid,
    Population,
    RunIndicators,
    ScenarioParams,
    StrategyFamilyStats,
    SummaryRow,
    Trajectory,
    __version__,
    compare_extreme_strategies,
    confidence_set,
    correlation_matrix,
    count_clusters,
    enumerate_grid,
    extremal_combos,
    find_preset,
    generate_er,
    indicators_over_runs,
    init_population,
    paired_sign_test_p,
    pearson_r,
    proportion_triples,
    read_summary_csv,
    regularized_incomplete_beta,
    run_indicators,
    run_intervention_study,
    run_scenario,
    run_seed,
    run_sweep,
    run_with_injection,
    scenario_presets,
    single_linkage,
    sorted_gap_cluster_count,
    student_t_cdf,
    t_test_p,
    to_summary_rows,
    update_agent,
    update_classic_hk,
    welch_t_test_p,
    write_summary_csv,
)
