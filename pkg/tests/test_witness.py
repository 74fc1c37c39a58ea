import pytest

from nonconformist.analysis.sweeps import Family, SweepError
from nonconformist.analysis.witness import find_witness
from nonconformist.engine import run_to_cycle
from nonconformist.textformat import parse_system


def test_period_four_loopless_minority():
    res = find_witness(4, Family(nmax=3, v1_rules="minority"))
    assert res.found
    assert res.config.n == 2 and res.config.graph.edges == ((1, 2),)
    assert res.report.period == 4


def test_period_three_absent_without_loops():
    res = find_witness(3, Family(nmax=4, v1_rules="count"))
    assert not res.found
    assert res.exhaustive


def test_period_three_with_loops():
    res = find_witness(3, Family(nmax=3, loops="all", v1_rules="minority"))
    assert res.found
    assert res.config.graph.loops
    doc = parse_system(res.to_dict()["system"])
    assert run_to_cycle(doc.config, doc.init).period == 3


def test_budget_cuts_search():
    res = find_witness(10, Family(nmax=5, v1_rules="minority"), budget=100)
    assert not res.found and not res.exhaustive
    assert res.configs_examined <= 100


def test_sampled_stage_beyond_sweep_size():
    # period 8 needs a loop; the random stage finds one on 8 to 9 vertices
    fam = Family(nmax=1, loops="all", v1_rules="minority", conformists="majority")
    res = find_witness(8, fam, budget=60_000, sample_n=(8, 9), seed=1, edge_p=0.35, loop_p=0.4, v1_loop=True)
    assert res.found and res.stage == "sampled"
    assert res.report.period == 8
    assert res.config.graph.has_loop(1)


def test_bad_arguments():
    with pytest.raises(SweepError):
        find_witness(0, Family(nmax=2))
    with pytest.raises(SweepError):
        find_witness(2, Family(nmax=2), budget=0)


def test_period_twelve_count_rule():
    from nonconformist.graph import v1_neighborhood_independent
    from nonconformist.rules import CountSet

    fam = Family(nmax=1, loops="all", v1_independent=True, v1_rules="count", conformists="majority")
    res = find_witness(
        12, fam, budget=20_000, sample_n=range(6, 14), seed=12, edge_p=(0.2, 0.3, 0.4), loop_p=0.0,
        v1_rule=CountSet({0, 2, 3, 4}), triangle_free=True, odd_degrees=True, min_v1_degree=4,
    )
    assert res.found and res.report.period == 12
    g = res.config.graph
    assert v1_neighborhood_independent(g)
    assert all(g.degree(i) % 2 for i in range(1, g.n + 1))
    assert res.config.rule(1).accepted <= {0, 2, 3, 4}
