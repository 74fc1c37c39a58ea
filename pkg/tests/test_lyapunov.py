import random

import pytest

from nonconformist.engine import CycleReport, State, run_to_cycle
from nonconformist.graph import build_graph, gen_preset
from nonconformist.lyapunov import (
    LyapunovError,
    check_settled_flips,
    s_vector,
    trace,
    z2_bound,
    z2_series,
)
from nonconformist.rules import AntiThreshold, SystemConfig, Threshold, make_config, minority_rule


def _brute_z2(config, prev, cur):
    """z doubled, straight from the definitions with sets."""
    g = config.graph
    thr = config.thresholds()
    n1 = g.neighbors(1)
    us_prev = State(config.n, prev).plus_star
    us_cur = State(config.n, cur).plus_star
    x = sum(len(g.neighbors(i) & us_prev) for i in us_cur)

    def y2(us):
        return sum(2 * thr[i] - 2 if i in n1 else 2 * thr[i] - 1 for i in us)

    return 2 * x - y2(us_cur) - y2(us_prev)


def test_s_vector_examples(single_edge):
    assert s_vector(single_edge) == {2: 0}
    path = SystemConfig(build_graph(3, [(1, 2), (2, 3)]), (minority_rule(1), Threshold(1), Threshold(1)))
    assert s_vector(path)[3] == 1  # s_3 = 1/2, doubled
    bad = SystemConfig(build_graph(2, [(1, 2)]), (Threshold(1), AntiThreshold(1)))
    with pytest.raises(LyapunovError):
        s_vector(bad)


def test_fixed_point_trace():
    cfg = make_config(gen_preset("k33"))
    tr = trace(cfg, State.from_set(6, range(1, 7)), 6)
    assert len(set(tr.z2)) == 1
    assert tr.settlement_index == 1


def test_single_edge_trace_monotone(single_edge):
    for s in ("++", "+-", "-+", "--"):
        tr = trace(single_edge, State.from_string(s), 12)
        assert tr.is_monotone()
        assert all(isinstance(z, int) for z in tr.z2)


def test_trace_csv(single_edge):
    csv = trace(single_edge, State.from_string("++"), 3).to_csv().splitlines()
    assert csv[0] == "t,x,2y,2z"
    assert len(csv) == 3


def test_trace_needs_two_states(single_edge):
    with pytest.raises(LyapunovError):
        trace(single_edge, State.from_string("++"), 1)


def test_z2_matches_set_definition():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(2, 6)
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < 0.5]
        loops = [i for i in range(1, n + 1) if rng.random() < 0.3]
        g = build_graph(n, edges, loops)
        rules = [minority_rule(g.degree(1))] + [Threshold(rng.randint(0, g.degree(i) + 1)) for i in range(2, n + 1)]
        cfg = SystemConfig(g, tuple(rules))
        words = [rng.randrange(1 << n) for _ in range(4)]
        for (x, y2, z2), prev, cur in zip(z2_series(cfg, words), words, words[1:]):
            assert z2 == _brute_z2(cfg, prev, cur)
            assert abs(z2) <= z2_bound(n)


def test_single_edge_flips(single_edge):
    rep = run_to_cycle(single_edge, State.from_string("++"))
    assert check_settled_flips(single_edge, rep) == []


def test_flip_check_rejects_fake_cycle(single_edge):
    fake = CycleReport(0, 2, (State.from_string("++"), State.from_string("--")))
    with pytest.raises(LyapunovError):
        check_settled_flips(single_edge, fake)


def test_flip_check_reports_violation_outside_theorem():
    # anti-threshold conformist: period-2 flip far from v1 is not allowed by the theorem,
    # so feeding a non-threshold regime must be refused rather than silently checked
    g = build_graph(3, [(2, 3)])
    cfg = SystemConfig(g, (Threshold(0), AntiThreshold(1), Threshold(1)))
    rep = run_to_cycle(cfg, State.from_string("+--"))
    with pytest.raises(LyapunovError):
        check_settled_flips(cfg, rep)


@pytest.mark.slow
def test_settled_flips_exhaustive_minority():
    from helpers import family_cycles
    from nonconformist.analysis.sweeps import Family

    n_cycles = 0
    for cfg, rep in family_cycles(Family(nmax=4, loops="all", v1_rules="minority")):
        assert check_settled_flips(cfg, rep) == [], (cfg, rep)
        n_cycles += 1
    assert n_cycles > 1000
