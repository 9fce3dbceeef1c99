import math

import pytest

import cgs


def test_enumeration_counts():
    g = cgs.build_scenario("pick_place", 0)
    t = cgs.TransitionTable.build_pruned(g)
    assert t.total == 19
    assert t.surviving == 8
    assert t.pruning_ratio == pytest.approx(11 / 19)
    assert t.pruned_count("zero_probability") == 5
    assert t.pruned_count("cond_independence") == 2
    assert t.pruned_count("dead_end") == 4
    assert t.pruned_count("unreachable") == 0


def test_counting_graph_families():
    for family, total in [("pick_place", 19), ("handover", 2059), ("banana", 19171)]:
        g = cgs.build_counting_graph(family)
        t = cgs.TransitionTable.enumerate_transitions(g)
        assert t.total == total


def test_graph_roundtrip():
    g = cgs.build_scenario("handover", 3)
    text = g.serialize()
    g2 = cgs.parse_graph(text)
    assert g2.name == g.name
    assert g2.variable_ids == g.variable_ids
    assert g2.serialize() == text


def test_witness_feasible():
    g = cgs.build_scenario("banana", 5)
    assert g.has_witness()
    rep = cgs.evaluate_feasibility(g, g.witness(), g.full_mask())
    assert rep.feasible(1e-6, 1e-8)


def test_conditional_sample_and_recheck():
    g = cgs.build_two_link_ik()
    t = cgs.TransitionTable.build_pruned(g)
    assert t.surviving == 1
    rng = cgs.Rng(42)
    cfg = cgs.SolverConfig()
    hits = 0
    for _ in range(20):
        r = cgs.conditional_sample(g, 0, [0.0] * g.ambient_dim, g.full_mask(), cfg, rng)
        if r.feasible:
            hits += 1
            x = cgs.apply_values(g, g.full_mask(), r.values, [0.0] * g.ambient_dim)
            assert cgs.evaluate_feasibility(g, x, g.full_mask()).feasible(1e-6, 1e-8)
    assert hits > 0


def test_generate_deterministic_under_proxy_budget():
    g = cgs.build_scenario("pick_place", 1)
    t = cgs.TransitionTable.build_pruned(g)
    cfg = cgs.GenerateConfig()
    cfg.budget_mode = cgs.BudgetMode.CostProxy
    cfg.budget = 1e5
    reports = [cgs.generate(g, t, cgs.tree_strategy(), cfg, 9) for _ in range(2)]
    assert reports[0].samples
    assert reports[0].attempts == reports[1].attempts
    assert [s.values for s in reports[0].samples] == [s.values for s in reports[1].samples]
    text = cgs.serialize_samples(g, reports[0].samples)
    back = cgs.parse_samples(g, text)
    assert len(back) == len(reports[0].samples)


def test_expert_strategy_and_coverage():
    g = cgs.build_scenario("pick_place", 0)
    t = cgs.TransitionTable.build_pruned(g)
    steps = cgs.builtin_expert_steps("pick_place", 0)
    strat = cgs.expert_strategy(g, t, "expert1", steps)
    cfg = cgs.GenerateConfig()
    cfg.budget_mode = cgs.BudgetMode.CostProxy
    cfg.budget = 1e5
    rep = cgs.generate(g, t, strat, cfg, 3)
    assert rep.strategy_name == "expert1"
    cov = cgs.projected_coverage(rep.samples, g, cgs.CoverageConfig())
    assert cov.sample_count == len(rep.samples)
    assert cov.occupied("t") > 0


def test_error_types():
    with pytest.raises(cgs.GraphError):
        cgs.parse_graph("var x dim=0")
    with pytest.raises(cgs.GraphError):
        cgs.build_scenario("pick_place", 99)
