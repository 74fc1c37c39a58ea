"""Property tests over random systems."""
from hypothesis import given, settings, strategies as st

from nonconformist.analysis.patterns import classify_pattern
from nonconformist.analysis.spectrum import period_spectrum
from nonconformist.engine import State, recurrent_states, run_to_cycle, step, successor_map
from nonconformist.graph import Graph, build_graph
from nonconformist.lyapunov import check_settled_flips, trace, z2_bound
from nonconformist.rules import AntiThreshold, CountSet, SystemConfig, Threshold, eval_rule
from nonconformist.textformat import parse_system, render_system


@st.composite
def graphs(draw, max_n=6, loops=True):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges = [p for p in pairs if draw(st.booleans())]
    lp = [i for i in range(1, n + 1) if loops and draw(st.booleans())]
    return build_graph(n, edges, lp)


@st.composite
def systems(draw, max_n=6, loops=True, v1="any", conformists="threshold"):
    g = draw(graphs(max_n, loops))
    d1 = g.degree(1)
    if v1 == "anti":
        r1 = AntiThreshold(draw(st.integers(0, d1 + 1)))
    elif v1 == "threshold":
        r1 = Threshold(draw(st.integers(0, d1 + 1)))
    else:
        r1 = CountSet(draw(st.sets(st.integers(0, d1))))
    rest = []
    for i in range(2, g.n + 1):
        r = draw(st.integers(0, g.degree(i) + 1))
        rest.append(Threshold(r) if conformists == "threshold" or draw(st.booleans()) else AntiThreshold(r))
    return SystemConfig(g, (r1, *rest))


def states_for(cfg):
    return st.integers(0, (1 << cfg.n) - 1).map(lambda b: State(cfg.n, b))


@given(graphs())
def test_graph_symmetry(g):
    for i in range(1, g.n + 1):
        for j in g.neighbors(i):
            assert i in g.neighbors(j)
    assert Graph(g.n, g.masks) == g


@given(st.integers(0, 8), st.data())
def test_threshold_monotone(deg, data):
    r = data.draw(st.integers(0, deg + 1))
    a = data.draw(st.sets(st.integers(1, max(deg, 1))))
    b = a | data.draw(st.sets(st.integers(1, max(deg, 1))))
    assert eval_rule(Threshold(r), a) <= eval_rule(Threshold(r), b)
    assert eval_rule(AntiThreshold(r), a) >= eval_rule(AntiThreshold(r), b)


@given(st.data())
def test_step_is_synchronous(data):
    cfg = data.draw(systems(conformists="mixed"))
    s = data.draw(states_for(cfg))
    nxt = step(cfg, s)
    for i in range(1, cfg.n + 1):
        active = cfg.graph.neighbors(i) & s.plus_set
        assert nxt.opinion(i) == eval_rule(cfg.rule(i), active)


@given(st.data())
def test_cycle_report_valid(data):
    cfg = data.draw(systems(conformists="mixed"))
    s = data.draw(states_for(cfg))
    rep = run_to_cycle(cfg, s)
    states = rep.cycle_states
    assert len(set(states)) == rep.period
    for j, x in enumerate(states):
        assert step(cfg, x) == states[(j + 1) % rep.period]
    assert rep == run_to_cycle(cfg, s)
    walk = s
    for _ in range(rep.transient):
        walk = step(cfg, walk)
    assert walk == states[0]


@given(st.data())
def test_pure_threshold_period_at_most_two(data):
    cfg = data.draw(systems(v1="threshold"))
    s = data.draw(states_for(cfg))
    assert run_to_cycle(cfg, s).period in (1, 2)


@given(st.data())
@settings(max_examples=60)
def test_spectrum_conservation_and_recurrence(data):
    cfg = data.draw(systems(conformists="mixed"))
    spec = period_spectrum(cfg)
    assert sum(spec.counts.values()) == 1 << cfg.n
    assert {c.period for c in spec.cycles} <= spec.periods
    rec = set(map(int, recurrent_states(successor_map(cfg)).nonzero()[0]))
    assert rec == {s.bits for c in spec.cycles for s in c.cycle_states}


@given(st.data())
def test_lyapunov_monotone_and_settled(data):
    cfg = data.draw(systems())
    s = data.draw(states_for(cfg))
    rep = run_to_cycle(cfg, s)
    tr = trace(cfg, s, rep.transient + 2 * rep.period + 3)
    z = tr.z2
    assert all(isinstance(v, int) for v in z)
    assert all(a <= b for a, b in zip(z, z[1:]))
    assert all(abs(v) <= z2_bound(cfg.n) for v in z)
    # z is constant once the orbit is on its cycle
    assert len(set(z[rep.transient + 1 :])) <= 1
    assert check_settled_flips(cfg, rep) == []


@given(st.data())
def test_strict_increase_localised(data):
    cfg = data.draw(systems())
    s = data.draw(states_for(cfg))
    cur = s
    traj = [s]
    for _ in range(12):
        cur = step(cfg, cur)
        traj.append(cur)
    tr = trace(cfg, s, len(traj))
    n1 = cfg.graph.neighbors(1)
    for t in range(1, len(tr.entries)):
        if tr.entries[t].z2 == tr.entries[t - 1].z2:
            # entries[t] is time t+1; compare U* at t+2 and t
            changed = traj[t + 1].plus_star ^ traj[t - 1].plus_star
            assert changed <= n1, (t, changed)


@given(st.data())
def test_anti_v1_cycles_always_classified(data):
    cfg = data.draw(systems(max_n=5, v1="anti"))
    s = data.draw(states_for(cfg))
    rep = run_to_cycle(cfg, s)
    cls = classify_pattern(rep.c_sequence)
    assert cls is not None and rep.period in cls.periods


@given(st.data())
def test_text_round_trip(data):
    cfg = data.draw(systems(conformists="mixed"))
    inits = data.draw(st.lists(states_for(cfg), max_size=3))
    doc = parse_system(render_system(cfg, inits))
    assert doc.config == cfg and doc.inits == inits
