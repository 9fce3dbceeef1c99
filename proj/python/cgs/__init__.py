"""Constraint-graph sampling: enumeration, pruning, conditional sampling, search."""

from ._core import (
    BudgetMode,
    ConstraintGraph,
    CoverageConfig,
    CoverageReport,
    FeasReport,
    GenerateConfig,
    GraphError,
    RewardConfig,
    Rng,
    RunReport,
    SampleAttemptResult,
    SampleRecord,
    SolverConfig,
    Strategy,
    Transition,
    TransitionTable,
    TransitionTally,
    VariableCoverage,
    WarmstartStore,
    apply_values,
    build_counting_graph,
    build_scenario,
    build_two_link_ik,
    builtin_expert_names,
    builtin_expert_steps,
    conditional_sample,
    evaluate_feasibility,
    expert_strategy,
    generate,
    load_graph_file,
    parse_graph,
    parse_samples,
    projected_coverage,
    random_strategy,
    serialize_samples,
    tree_strategy,
    tree_warm_strategy,
)

__all__ = [
    "BudgetMode",
    "ConstraintGraph",
    "CoverageConfig",
    "CoverageReport",
    "FeasReport",
    "GenerateConfig",
    "GraphError",
    "RewardConfig",
    "Rng",
    "RunReport",
    "SampleAttemptResult",
    "SampleRecord",
    "SolverConfig",
    "Strategy",
    "Transition",
    "TransitionTable",
    "TransitionTally",
    "VariableCoverage",
    "WarmstartStore",
    "apply_values",
    "build_counting_graph",
    "build_scenario",
    "build_two_link_ik",
    "builtin_expert_names",
    "builtin_expert_steps",
    "conditional_sample",
    "evaluate_feasibility",
    "expert_strategy",
    "generate",
    "load_graph_file",
    "parse_graph",
    "parse_samples",
    "projected_coverage",
    "random_strategy",
    "serialize_samples",
    "tree_strategy",
    "tree_warm_strategy",
]
