"""Compiled and pure-Python kernels must agree bit for bit."""
import random

import numpy as np
import pytest

from nonconformist.analysis.sweeps import (
    Family,
    independent_masks,
    run_sweep,
    sample_masks,
    threshold_bounds,
    v1_rule_tables,
)
from nonconformist.engine import compile_config, run_to_cycle, State, successor_map
from nonconformist.graph import iter_graph_masks
from nonconformist.kernels import compiled_available, get_backend
from nonconformist.rules import CountSet, SubsetSystem, make_config
from nonconformist.graph import Graph

needs_compiled = pytest.mark.skipif(not compiled_available(), reason="compiled kernels not built")


def _random_config(rng, n):
    masks = sample_masks(n, "all", False, rng)
    g = Graph(n, masks)
    nbrs = sorted(g.neighbors(1))
    if rng.random() < 0.5:
        rule = CountSet(c for c in range(len(nbrs) + 1) if rng.random() < 0.5)
    else:
        from itertools import combinations

        subsets = [a for k in range(len(nbrs) + 1) for a in combinations(nbrs, k)]
        rule = SubsetSystem(a for a in subsets if rng.random() < 0.5)
    return make_config(g, rule)


@needs_compiled
def test_successor_and_attractors_agree():
    rng = random.Random(7)
    py, cy = get_backend("python"), get_backend("cython")
    for _ in range(60):
        cfg = _random_config(rng, rng.randint(1, 9))
        a = successor_map(cfg, "python")
        b = successor_map(cfg, "cython")
        assert np.array_equal(a, b)
        for x, y in zip(py.attractors(a), cy.attractors(b)):
            assert np.array_equal(np.asarray(x), np.asarray(y))


def test_successor_map_matches_engine_step(backend):
    rng = random.Random(11)
    for _ in range(20):
        cfg = _random_config(rng, rng.randint(1, 6))
        succ = successor_map(cfg, backend)
        cc = compile_config(cfg)
        from nonconformist.engine import step_bits

        assert [int(x) for x in succ] == [step_bits(cc, s) for s in range(1 << cfg.n)]


def test_attractor_periods_match_run_to_cycle(backend):
    rng = random.Random(5)
    k = get_backend(backend)
    for _ in range(20):
        cfg = _random_config(rng, rng.randint(1, 6))
        cycle_of, _, clen = k.attractors(successor_map(cfg, backend))
        for s in range(1 << cfg.n):
            assert clen[cycle_of[s]] == run_to_cycle(cfg, State(cfg.n, s)).period


@needs_compiled
@pytest.mark.parametrize("mode,loops", [("auto", "all"), ("anti", "none"), ("count", "not_v1"), ("threshold", "all")])
def test_sweep_graph_agrees(mode, loops):
    fam = Family(nmax=4, loops=loops, v1_rules=mode)
    py, cy = get_backend("python"), get_backend("cython")
    rng = random.Random(3)
    graphs = [m for m in iter_graph_masks(4, loops)]
    for masks in rng.sample(graphs, 25):
        subset, tables = v1_rule_tables(mode, masks[0].bit_count())
        lo, hi = threshold_bounds(fam, masks)
        ra = py.sweep_graph(4, masks, lo, hi, subset, tables)
        rb = cy.sweep_graph(4, masks, lo, hi, subset, tables)
        assert np.array_equal(ra[0], rb[0])
        assert np.array_equal(ra[1], rb[1])
        assert {(int(a), int(b)) for a, b in ra[2]} == {(int(a), int(b)) for a, b in rb[2]}
        assert int(ra[3]) == int(rb[3])


@needs_compiled
def test_run_sweep_backends_agree():
    fam = Family(nmax=3, loops="all", v1_independent=True, v1_rules="auto")
    a = run_sweep(fam, backend="python")
    b = run_sweep(fam, backend="cython")
    assert a.histogram == b.histogram
    assert a.first == b.first
    assert (a.n_graphs, a.n_configs, a.n_tuples) == (b.n_graphs, b.n_configs, b.n_tuples)


def test_sweep_histogram_counts_every_tuple(backend):
    fam = Family(nmax=3, v1_rules="count")
    res = run_sweep(fam, backend=backend)
    assert sum(res.histogram.values()) == res.n_tuples


def test_independent_masks_filter():
    for masks in iter_graph_masks(4, "all"):
        g = Graph(4, masks)
        from nonconformist.graph import v1_neighborhood_independent

        assert independent_masks(masks) == v1_neighborhood_independent(g)


def test_unknown_backend():
    with pytest.raises(ValueError):
        get_backend("fortran")
