"""Search for a system and initial state whose orbit ends on a cycle of a given period."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .. import kernels
from .._pykernels import SWEEP_MAX_N
from ..engine import CycleReport, State, run_to_cycle, successor_map
from ..graph import Graph
from ..rules import CountSet, SystemConfig, Threshold
from ..textformat import render_system
from .sweeps import (
    Family,
    SweepError,
    build_config,
    configs_per_graph,
    decode_assignment,
    family_graphs,
    sample_tuple_spec,
    threshold_bounds,
    v1_rule_tables,
)


@dataclass(frozen=True)
class WitnessResult:
    target: int
    found: bool
    config: Optional[SystemConfig]
    state: Optional[State]
    report: Optional[CycleReport]
    exhaustive: bool
    configs_examined: int
    stage: str

    def to_dict(self) -> dict:
        out = {
            "schema": "nonconformist.witness/1",
            "target": self.target,
            "found": self.found,
            "exhaustive": self.exhaustive,
            "configs_examined": self.configs_examined,
            "stage": self.stage,
        }
        if self.found:
            out["report"] = self.report.to_dict()
            out["system"] = render_system(self.config, [self.state])
        return out


def _fixed_v1_config(family: Family, masks, thresholds, rule: CountSet) -> SystemConfig:
    g = Graph(len(masks), tuple(masks))
    deg = g.degree(1)
    v1 = CountSet(c for c in rule.accepted if c <= deg)
    return SystemConfig(g, (v1, *(Threshold(r) for r in thresholds)))


def _hit(config: SystemConfig, state, target, examined, stage) -> WitnessResult:
    st = State(config.n, state)
    rep = run_to_cycle(config, st)
    if rep.period != target:
        raise AssertionError(f"kernel reported period {target}, engine found {rep.period}")
    return WitnessResult(target, True, config, st, rep, False, examined, stage)


def find_witness(
    target: int,
    family: Family,
    budget: int = 1_000_000,
    sample_n: Union[int, Sequence[int], None] = None,
    seed: int = 0,
    edge_p: Union[float, Sequence[float]] = 0.5,
    loop_p: float = 0.5,
    v1_loop: Optional[bool] = None,
    v1_rule: Optional[CountSet] = None,
    backend: Optional[str] = None,
    **graph_kw,
) -> WitnessResult:
    """Exhaustive pass over ``family`` (n = nmin..nmax) in enumeration order, then
    random systems with ``sample_n`` vertices until ``budget`` configurations
    have been tried.

    The random stage draws graphs from the family's loop mode and constraint
    with edge density picked from ``edge_p``; ``v1_loop`` pins the loop at v1.
    ``graph_kw`` passes further shape options (``triangle_free``,
    ``odd_degrees``, ``min_v1_degree``) to the graph sampler. ``v1_rule``
    fixes a count rule at v1 for the random stage, dropping counts above
    deg(v1). Systems above the sweep-kernel size, and all systems with a fixed
    ``v1_rule``, go through the full successor map.
    A negative result with ``exhaustive=True`` means the whole exhaustive
    family was covered without a hit; it says nothing about larger n.
    """
    if target < 1:
        raise SweepError("target period must be >= 1")
    if budget < 1:
        raise SweepError("budget must be >= 1")
    k = kernels.get_backend(backend)
    examined = 0
    complete = True
    fam = family.replace(samples=0) if not family.exhaustive else family
    for masks in family_graphs(fam):
        cost = configs_per_graph(fam, masks)
        if examined + cost > budget:
            complete = False
            break
        subset, tables = v1_rule_tables(fam.v1_rules, masks[0].bit_count())
        lo, hi = threshold_bounds(fam, masks)
        hist, first, _, nconf = k.sweep_graph(len(masks), masks, lo, hi, subset, tables)
        examined += int(nconf)
        if target < len(hist) and hist[target]:
            a_idx, row, s = (int(x) for x in first[target])
            config = build_config(fam, masks, decode_assignment(lo, hi, a_idx), row)
            return _hit(config, s, target, examined, "exhaustive")

    if sample_n is not None:
        sizes = (sample_n,) if isinstance(sample_n, int) else tuple(sample_n)
        densities = (edge_p,) if isinstance(edge_p, float) else tuple(edge_p)
        rng = random.Random(seed)
        while examined < budget:
            n = rng.choice(sizes)
            masks, thresholds, row = sample_tuple_spec(
                fam, rng, n, edge_p=rng.choice(densities), loop_p=loop_p, v1_loop=v1_loop, **graph_kw
            )
            examined += 1
            if v1_rule is None and n <= SWEEP_MAX_N:
                subset, tables = v1_rule_tables(fam.v1_rules, masks[0].bit_count())
                fixed = [0, *thresholds]
                hist, first, _, _ = k.sweep_graph(n, masks, fixed, fixed, subset, tables[row : row + 1])
                if target < len(hist) and hist[target]:
                    config = build_config(fam, masks, thresholds, row)
                    return _hit(config, int(first[target][2]), target, examined, "sampled")
                continue
            if v1_rule is None:
                config = build_config(fam, masks, thresholds, row)
            else:
                config = _fixed_v1_config(fam, masks, thresholds, v1_rule)
            _, cmin, clen = k.attractors(successor_map(config, backend))
            hits = np.flatnonzero(clen == target)
            if hits.size:
                return _hit(config, int(cmin[hits[0]]), target, examined, "sampled")
    return WitnessResult(target, False, None, None, None, complete, examined, "none")
