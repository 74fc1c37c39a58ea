import pytest

from nonconformist.engine import (
    CycleReport,
    EngineError,
    State,
    cycle_from,
    recurrent_states,
    run_to_cycle,
    step,
    successor_map,
    trajectory,
)
from nonconformist.graph import build_graph, gen_preset
from nonconformist.kernels import get_backend
from nonconformist.rules import SystemConfig, Threshold, make_config

# hand-computed transition map of the single edge, minority at v1, majority at v2;
# v1 becomes the negation of v2, v2 copies v1
SINGLE_EDGE_MAP = {"++": "-+", "-+": "--", "--": "+-", "+-": "++"}


def test_state_encoding():
    s = State.from_string("+-+")
    assert s.bits == 0b101
    assert s.opinions == (1, -1, 1)
    assert s.plus_set == {1, 3}
    assert s.plus_star == {3}
    assert str(s) == "+-+"
    assert State.from_set(3, {1, 3}) == s
    with pytest.raises(EngineError):
        State.from_string("+0")
    with pytest.raises(EngineError):
        State(2, 4)


def test_single_edge_step_map(single_edge):
    for a, b in SINGLE_EDGE_MAP.items():
        assert str(step(single_edge, State.from_string(a))) == b


def test_single_edge_cycle(single_edge):
    rep = run_to_cycle(single_edge, State.from_string("++"))
    assert (rep.transient, rep.period) == (0, 4)
    assert [str(s) for s in rep.cycle_states] == ["++", "-+", "--", "+-"]
    assert rep.c_sequence == (1, -1, -1, 1)


def test_fixed_point_of_full_threshold_system():
    g = gen_preset("k33")
    cfg = make_config(g)
    s = State.from_set(6, range(1, 7))
    assert step(cfg, s) == s
    assert run_to_cycle(cfg, s).period == 1


def test_k33_parts_swap():
    cfg = make_config(gen_preset("k33"))
    s = State.from_set(6, {1, 2, 3})
    assert step(cfg, s) == State.from_set(6, {4, 5, 6})
    assert run_to_cycle(cfg, s).period == 2


def test_gk2_period_five():
    from nonconformist.analysis.constructions import gk_system

    cfg, s0 = gk_system(2)
    assert s0.plus_set == {1, 7, 8, 9}
    assert run_to_cycle(cfg, s0).period == 5


def test_transient_is_exact():
    # path 1-2-3 with v1 fixed at +1 via Threshold(0): +1 spreads one step at a time
    g = build_graph(3, [(1, 2), (2, 3)])
    cfg = SystemConfig(g, (Threshold(0), Threshold(1), Threshold(1)))
    rep = run_to_cycle(cfg, State.from_string("---"))
    # --- -> +-- -> ++- -> +++, then fixed
    assert rep.period == 1
    assert rep.cycle_states[0] == State.from_string("+++")
    assert rep.transient == 3


def test_cap_and_dimension_errors(single_edge):
    with pytest.raises(EngineError):
        run_to_cycle(single_edge, State.from_string("++"), cap=2)
    with pytest.raises(EngineError):
        run_to_cycle(single_edge, State.from_string("+++"))
    with pytest.raises(EngineError):
        trajectory(single_edge, State.from_string("+"), 3)


def test_trajectory(single_edge):
    traj = trajectory(single_edge, State.from_string("++"), 4)
    assert [str(s) for s in traj] == ["++", "-+", "--", "+-", "++"]


def test_successor_map_single_edge(single_edge, backend):
    succ = successor_map(single_edge, backend)
    for a, b in SINGLE_EDGE_MAP.items():
        assert succ[State.from_string(a).bits] == State.from_string(b).bits
    assert recurrent_states(succ).all()


def test_successor_map_constant_vertex(backend):
    cfg = SystemConfig(build_graph(1), (Threshold(0),))
    assert list(successor_map(cfg, backend)) == [1, 1]


def test_recurrent_states_match_attractors(backend):
    cfg = make_config(gen_preset("cube3"))
    succ = successor_map(cfg, backend)
    cycle_of, cmin, clen = get_backend(backend).attractors(succ)
    rec = recurrent_states(succ)
    on_cycle = set()
    for start, length in zip(cmin.tolist(), clen.tolist()):
        on_cycle |= {s.bits for s in cycle_from(cfg, start, length)}
    assert on_cycle == set(map(int, rec.nonzero()[0]))
    assert set(clen.tolist()) <= {1, 2}


def test_cycle_from_rejects_wrong_period(single_edge):
    with pytest.raises(EngineError):
        cycle_from(single_edge, 0, 3)


def test_report_dict(single_edge):
    d = run_to_cycle(single_edge, State.from_string("--")).to_dict()
    assert d["period"] == 4 and d["cycle_states"][0] == "--"
    assert isinstance(run_to_cycle(single_edge, State.from_string("--")), CycleReport)
