"""Exhaustive and seeded-random sweeps over families of systems.

A family fixes the vertex-count range, which loops are allowed, an optional
graph constraint (no edge inside N_1), where v1's rule comes from and how the
conformist thresholds range. Every (graph, rules, initial state) tuple in the
family is evaluated by the kernel; reports are JSON-ready.
"""
from __future__ import annotations

import datetime as _dt
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .. import kernels
from ..engine import State, run_to_cycle, successor_map
from ..graph import Graph, iter_bits, iter_graph_masks
from ..rules import (
    AntiThreshold,
    CountSet,
    FULL_MODE_MAX_DEG,
    Rule,
    SystemConfig,
    Threshold,
    majority_rule,
    minority_rule,
    subset_rule_from_table,
)
from ..textformat import render_system
from .patterns import (
    LOOPLESS_CLASSES,
    PatternKind,
    c_sequence_from_bits,
    classify_pattern,
    pattern_consistent,
)

SCHEMA = "nonconformist.verify/1"
V1_RULE_MODES = ("threshold", "anti", "minority", "majority", "count", "full", "auto")
EXHAUSTIVE_MAX_N = {"none": 6, "all": 5, "not_v1": 5}
SAMPLE_MAX_N = 6


class SweepError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    nmax: int
    nmin: int = 1
    loops: str = "none"
    v1_independent: bool = False
    v1_rules: str = "auto"
    conformists: str = "all"
    samples: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.loops not in EXHAUSTIVE_MAX_N:
            raise SweepError(f"loops must be one of {sorted(EXHAUSTIVE_MAX_N)}, got {self.loops!r}")
        if self.v1_rules not in V1_RULE_MODES:
            raise SweepError(f"v1_rules must be one of {V1_RULE_MODES}, got {self.v1_rules!r}")
        if self.conformists not in ("all", "majority"):
            raise SweepError(f"conformists must be 'all' or 'majority', got {self.conformists!r}")
        if not 1 <= self.nmin <= self.nmax:
            raise SweepError(f"need 1 <= nmin <= nmax, got {self.nmin}..{self.nmax}")
        if self.samples < 0:
            raise SweepError("samples must be >= 0")
        if self.samples:
            cap = SAMPLE_MAX_N
        elif self.conformists == "majority":
            cap = EXHAUSTIVE_MAX_N["none"]
        else:
            cap = EXHAUSTIVE_MAX_N[self.loops]
        if self.nmax > cap:
            kind = "sampled" if self.samples else f"exhaustive (loops={self.loops})"
            raise SweepError(f"{kind} sweeps are capped at n <= {cap}, got nmax={self.nmax}")

    @property
    def exhaustive(self) -> bool:
        return self.samples == 0

    def replace(self, **kw) -> "Family":
        return Family(**{**asdict(self), **kw})


def mode_for_degree(mode: str, deg: int) -> str:
    if mode == "auto":
        return "full" if deg <= FULL_MODE_MAX_DEG else "count"
    if mode == "full" and deg > FULL_MODE_MAX_DEG:
        raise SweepError(f"full subset-system rules at v1 are capped at degree {FULL_MODE_MAX_DEG}, got {deg}")
    return mode


@lru_cache(maxsize=None)
def v1_rule_tables(mode: str, deg: int) -> tuple[bool, np.ndarray]:
    """(indexed_by_subset, table rows) enumerating v1's rules for a neighbourhood size."""
    mode = mode_for_degree(mode, deg)
    counts = np.arange(deg + 1)
    if mode == "threshold":
        rows = [counts >= r for r in range(deg + 2)]
    elif mode == "anti":
        rows = [counts < r for r in range(deg + 2)]
    elif mode == "minority":
        rows = [counts < minority_rule(deg).r]
    elif mode == "majority":
        rows = [counts >= majority_rule(deg).r]
    elif mode == "count":
        rows = [(m >> counts) & 1 for m in range(1 << (deg + 1))]
    else:
        idx = np.arange(1 << deg)
        rows = [(m >> idx) & 1 for m in range(1 << (1 << deg))]
        return True, np.asarray(rows, dtype=np.uint8)
    return False, np.asarray(rows, dtype=np.uint8)


def v1_rule_at(mode: str, deg: int, row: int, nbrs) -> Rule:
    mode = mode_for_degree(mode, deg)
    if mode == "threshold":
        return Threshold(row)
    if mode == "anti":
        return AntiThreshold(row)
    if mode == "minority":
        return minority_rule(deg)
    if mode == "majority":
        return majority_rule(deg)
    if mode == "count":
        return CountSet(c for c in range(deg + 1) if row >> c & 1)
    return subset_rule_from_table(row, nbrs)


def independent_masks(masks: tuple[int, ...]) -> bool:
    nbrs = masks[0] & ~1
    return all(not masks[j] & nbrs & ~(1 << j) for j in iter_bits(nbrs))


def threshold_bounds(family: Family, masks: tuple[int, ...]) -> tuple[list[int], list[int]]:
    lo, hi = [0], [0]
    for m in masks[1:]:
        d = m.bit_count()
        if family.conformists == "all":
            lo.append(0)
            hi.append(d + 1)
        else:
            r = majority_rule(d).r
            lo.append(r)
            hi.append(r)
    return lo, hi


def decode_assignment(lo: list[int], hi: list[int], idx: int) -> tuple[int, ...]:
    out = []
    for a, b in zip(lo[1:], hi[1:]):
        radix = b - a + 1
        out.append(a + idx % radix)
        idx //= radix
    return tuple(out)


def build_config(family: Family, masks: tuple[int, ...], thresholds, row: int) -> SystemConfig:
    g = Graph(len(masks), tuple(masks))
    rule1 = v1_rule_at(family.v1_rules, masks[0].bit_count(), row, g.neighbors(1))
    return SystemConfig(g, (rule1,) + tuple(Threshold(r) for r in thresholds))


def family_graphs(family: Family) -> Iterator[tuple[int, ...]]:
    for n in range(family.nmin, family.nmax + 1):
        for masks in iter_graph_masks(n, family.loops):
            if not family.v1_independent or independent_masks(masks):
                yield masks


def configs_per_graph(family: Family, masks: tuple[int, ...]) -> int:
    lo, hi = threshold_bounds(family, masks)
    _, tables = v1_rule_tables(family.v1_rules, masks[0].bit_count())
    return int(np.prod([b - a + 1 for a, b in zip(lo[1:], hi[1:])], dtype=np.int64)) * len(tables)


@dataclass(frozen=True)
class SweepTuple:
    """One fully specified (system, initial state) tuple, kept as raw words."""

    masks: tuple[int, ...]
    thresholds: tuple[int, ...]
    row: int
    state: int

    def config(self, family: Family) -> SystemConfig:
        return build_config(family, self.masks, self.thresholds, self.row)


@dataclass
class SweepResult:
    histogram: dict[int, int] = field(default_factory=dict)
    first: dict[int, SweepTuple] = field(default_factory=dict)
    patterns: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    patterns_no_v1_loop: set = field(default_factory=set)
    periods_no_v1_loop: set = field(default_factory=set)
    n_graphs: int = 0
    n_configs: int = 0
    n_tuples: int = 0

    def merge(self, other: "SweepResult") -> "SweepResult":
        for p, c in other.histogram.items():
            self.histogram[p] = self.histogram.get(p, 0) + c
        for p, t in other.first.items():
            self.first.setdefault(p, t)
        for k, m in other.patterns.items():
            self.patterns.setdefault(k, m)
        self.patterns_no_v1_loop |= other.patterns_no_v1_loop
        self.periods_no_v1_loop |= other.periods_no_v1_loop
        self.n_graphs += other.n_graphs
        self.n_configs += other.n_configs
        self.n_tuples += other.n_tuples
        return self


def _absorb(res: SweepResult, masks, hist, first, patterns, nconf, decode) -> None:
    n = len(masks)
    res.n_graphs += 1
    res.n_configs += int(nconf)
    res.n_tuples += int(nconf) << n
    v1_loop = bool(masks[0] & 1)
    for p in np.flatnonzero(hist):
        p = int(p)
        res.histogram[p] = res.histogram.get(p, 0) + int(hist[p])
        if p not in res.first:
            a_idx, row, s = (int(x) for x in first[p])
            thresholds, row = decode(a_idx, row)
            res.first[p] = SweepTuple(tuple(masks), thresholds, row, s)
        if not v1_loop:
            res.periods_no_v1_loop.add(p)
    for key in patterns:
        key = (int(key[0]), int(key[1]))
        res.patterns.setdefault(key, tuple(masks))
        if not v1_loop:
            res.patterns_no_v1_loop.add(key)


def sweep_one_graph(family: Family, masks: tuple[int, ...], res: SweepResult, backend=None) -> None:
    k = kernels.get_backend(backend)
    subset, tables = v1_rule_tables(family.v1_rules, masks[0].bit_count())
    lo, hi = threshold_bounds(family, masks)
    hist, first, patterns, nconf = k.sweep_graph(len(masks), masks, lo, hi, subset, tables)
    _absorb(res, masks, hist, first, patterns, nconf, lambda a, row: (decode_assignment(lo, hi, a), row))


def _sweep_chunk(args) -> SweepResult:
    family, chunk, backend = args
    res = SweepResult()
    for masks in chunk:
        sweep_one_graph(family, masks, res, backend)
    return res


def v1_rule_count(mode: str, deg: int) -> int:
    mode = mode_for_degree(mode, deg)
    return {
        "threshold": deg + 2,
        "anti": deg + 2,
        "minority": 1,
        "majority": 1,
        "count": 1 << (deg + 1),
        "full": 1 << (1 << deg),
    }[mode]


def sample_masks(
    n: int,
    loops: str,
    v1_independent: bool,
    rng: random.Random,
    edge_p: float = 0.5,
    loop_p: float = 0.5,
    v1_loop: Optional[bool] = None,
    triangle_free: bool = False,
    odd_degrees: bool = False,
    min_v1_degree: int = 0,
) -> tuple[int, ...]:
    """Random labelled graph by rejection on the family constraint.

    ``v1_loop`` forces (True) or forbids (False) a loop at vertex 1 when the
    loop mode permits one; ``None`` leaves it to ``loop_p``. With
    ``triangle_free`` edges are offered in random order and kept only if they
    close no triangle. ``odd_degrees`` then toggles loops so that every
    neighbourhood has odd size, which needs ``loops="all"``.
    """
    if odd_degrees and loops != "all":
        raise SweepError("odd_degrees adjusts loops, so it needs loops='all'")
    pairs = list(itertools.combinations(range(n), 2))
    for _ in range(10_000):
        masks = [0] * n
        if triangle_free:
            rng.shuffle(pairs)
        for i, j in pairs:
            if rng.random() < edge_p and not (triangle_free and masks[i] & masks[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
        for i in range(n):
            allowed = loops == "all" or (loops == "not_v1" and i > 0)
            if not allowed:
                continue
            if i == 0 and v1_loop is not None:
                on = v1_loop
            else:
                on = rng.random() < loop_p
            if on:
                masks[i] |= 1 << i
        if odd_degrees:
            for i in range(n):
                if not masks[i].bit_count() % 2:
                    masks[i] ^= 1 << i
        masks = tuple(masks)
        if (masks[0] & ~1).bit_count() < min_v1_degree:
            continue
        if not v1_independent or independent_masks(masks):
            return masks
    raise SweepError("could not sample a graph satisfying the family constraint")


def sample_tuple_spec(family: Family, rng: random.Random, n: Optional[int] = None, **graph_kw):
    """Random (masks, thresholds, v1 rule row) from the family."""
    if n is None:
        n = rng.randint(family.nmin, family.nmax)
    masks = sample_masks(n, family.loops, family.v1_independent, rng, **graph_kw)
    lo, hi = threshold_bounds(family, masks)
    thresholds = tuple(rng.randint(a, b) for a, b in zip(lo[1:], hi[1:]))
    return masks, thresholds, rng.randrange(v1_rule_count(family.v1_rules, masks[0].bit_count()))


def sample_system(family: Family, rng: random.Random) -> SystemConfig:
    masks, thresholds, row = sample_tuple_spec(family, rng)
    return build_config(family, masks, thresholds, row)


def run_sweep(family: Family, workers: int = 1, backend: Optional[str] = None) -> SweepResult:
    """Evaluate every tuple of an exhaustive family, or ``samples`` random systems
    (each over all 2^n initial states) drawn with ``seed``."""
    if not family.exhaustive:
        k = kernels.get_backend(backend)
        rng = random.Random(family.seed)
        res = SweepResult()
        for _ in range(family.samples):
            masks, thresholds, row = sample_tuple_spec(family, rng)
            subset, tables = v1_rule_tables(family.v1_rules, masks[0].bit_count())
            fixed = [0, *thresholds]
            hist, first, patterns, nconf = k.sweep_graph(
                len(masks), masks, fixed, fixed, subset, tables[row : row + 1]
            )
            _absorb(res, masks, hist, first, patterns, nconf, lambda a, r, t=thresholds, w=row: (t, w))
        return res
    graphs = list(family_graphs(family))
    if workers <= 1:
        return _sweep_chunk((family, graphs, backend))
    size = max(1, len(graphs) // (workers * 8))
    chunks = [graphs[i : i + size] for i in range(0, len(graphs), size)]
    res = SweepResult()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_chunk, [(family, c, backend) for c in chunks]):
            res.merge(part)
    return res


@dataclass
class VerificationReport:
    name: str
    family: Family
    passed: bool
    observed: dict[int, int]
    expected: Optional[frozenset[int]] = None
    forbidden: frozenset[int] = frozenset()
    n_graphs: int = 0
    n_configs: int = 0
    n_tuples: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def observed_periods(self) -> set[int]:
        return set(self.observed)

    def to_dict(self, timestamp: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "check": self.name,
            "family": asdict(self.family),
            "exhaustive": self.family.exhaustive,
            "expected": sorted(self.expected) if self.expected is not None else None,
            "forbidden": sorted(self.forbidden),
            "observed_periods": sorted(self.observed),
            "histogram": {str(p): c for p, c in sorted(self.observed.items())},
            "graphs": self.n_graphs,
            "configs": self.n_configs,
            "tuples": self.n_tuples,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
            "details": self.details,
        }
        if timestamp:
            out["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return out


def _counterexample(family: Family, t: SweepTuple, why: str) -> dict:
    config = t.config(family)
    st = State(config.n, t.state)
    rep = run_to_cycle(config, st)
    return {
        "reason": why,
        "period": rep.period,
        "system": render_system(config, [st], comment=why),
    }


def verify_period_set(
    family: Family,
    expected: Optional[set[int]] = None,
    forbidden: set[int] = frozenset(),
    name: str = "period-set",
    result: Optional[SweepResult] = None,
    workers: int = 1,
    backend: Optional[str] = None,
) -> VerificationReport:
    """Every period reached in the family lies in ``expected`` and outside ``forbidden``."""
    res = result if result is not None else run_sweep(family, workers, backend)
    observed = set(res.histogram)
    bad = set()
    if expected is not None:
        bad |= observed - set(expected)
    bad |= observed & set(forbidden)
    cex = [_counterexample(family, res.first[p], f"period {p} outside the allowed set") for p in sorted(bad)]
    return VerificationReport(
        name=name,
        family=family,
        passed=not bad,
        observed=dict(sorted(res.histogram.items())),
        expected=frozenset(expected) if expected is not None else None,
        forbidden=frozenset(forbidden),
        n_graphs=res.n_graphs,
        n_configs=res.n_configs,
        n_tuples=res.n_tuples,
        counterexamples=cex,
    )


def locate_pattern(family: Family, masks: tuple[int, ...], key: tuple[int, int], backend=None) -> Optional[SweepTuple]:
    """A concrete tuple on graph ``masks`` whose cycle has the given (v1 bits, period)."""
    k = kernels.get_backend(backend)
    subset, tables = v1_rule_tables(family.v1_rules, masks[0].bit_count())
    lo, hi = threshold_bounds(family, masks)
    for thresholds in itertools.product(*[range(a, b + 1) for a, b in zip(lo[1:], hi[1:])]):
        fixed = [0, *thresholds]
        for row in range(len(tables)):
            _, _, patterns, _ = k.sweep_graph(len(masks), masks, fixed, fixed, subset, tables[row : row + 1])
            if key in {(int(a), int(b)) for a, b in patterns}:
                cfg = build_config(family, masks, thresholds, row)
                succ = successor_map(cfg, backend)
                _, cmin, clen = k.attractors(succ)
                for start, length in zip(cmin.tolist(), clen.tolist()):
                    bits, s = 0, start
                    for j in range(length):
                        bits |= (s & 1) << j
                        s = int(succ[s])
                    if (bits, length) == key:
                        return SweepTuple(tuple(masks), tuple(thresholds), row, start)
    return None


def verify_pattern_period_consistency(
    family: Family,
    name: str = "pattern-period",
    result: Optional[SweepResult] = None,
    workers: int = 1,
    backend: Optional[str] = None,
) -> VerificationReport:
    """Every recurrent cycle's v1 sequence falls in one class, with a period the class
    allows; loopless families realise only the first six classes, and the last two
    never occur without a loop at v1."""
    if family.v1_rules not in ("anti", "minority"):
        raise SweepError("pattern classification needs an anti-threshold rule at v1")
    res = result if result is not None else run_sweep(family, workers, backend)
    loopless = family.loops == "none"
    by_class: dict[str, dict] = {}
    bad: list[tuple[tuple[int, int], str]] = []
    for key in sorted(res.patterns):
        cbits, period = key
        cls = classify_pattern(c_sequence_from_bits(cbits, period))
        if cls is None:
            bad.append((key, "unclassified v1 sequence"))
            continue
        entry = by_class.setdefault(cls.roman, {"cycles": 0, "periods": set()})
        entry["cycles"] += 1
        entry["periods"].add(period)
        if not pattern_consistent(cls, period, loopless):
            bad.append((key, f"class {cls} with period {period}"))
        elif key in res.patterns_no_v1_loop and cls.kind not in LOOPLESS_CLASSES:
            bad.append((key, f"class {cls} without a loop at v1"))
    cex = []
    for key, why in bad:
        t = locate_pattern(family, res.patterns[key], key, backend)
        if t is not None:
            cex.append(_counterexample(family, t, why))
        else:
            cex.append({"reason": why, "pattern": list(c_sequence_from_bits(*key)), "system": None})
    order = [k.value for k in PatternKind]
    details = {
        "classes": {
            r: {"distinct_patterns": by_class[r]["cycles"], "periods": sorted(by_class[r]["periods"])}
            for r in order
            if r in by_class
        },
        "distinct_patterns": len(res.patterns),
    }
    return VerificationReport(
        name=name,
        family=family,
        passed=not bad,
        observed=dict(sorted(res.histogram.items())),
        n_graphs=res.n_graphs,
        n_configs=res.n_configs,
        n_tuples=res.n_tuples,
        counterexamples=cex,
        details=details,
    )


@dataclass(frozen=True)
class TheoremCheck:
    family: Family
    expected: Optional[frozenset[int]]
    forbidden: frozenset[int] = frozenset()
    patterns: bool = False
    description: str = ""


THEOREMS: dict[str, TheoremCheck] = {
    "baseline": TheoremCheck(
        Family(nmax=5, v1_rules="threshold"),
        frozenset({1, 2}),
        description="pure threshold networks: periods 1 and 2 only",
    ),
    "tfree": TheoremCheck(
        Family(nmax=5, v1_independent=True, v1_rules="auto"),
        frozenset({1, 2, 4}),
        description="independent N_1, no loops, any rule at v1: periods 1, 2, 4",
    ),
    "tfree-n6": TheoremCheck(
        Family(nmax=6, nmin=6, v1_independent=True, v1_rules="auto", samples=20_000, seed=2016),
        frozenset({1, 2, 4}),
        description="independent N_1, no loops, n = 6 sampled",
    ),
    "loops": TheoremCheck(
        Family(nmax=4, loops="all", v1_independent=True, v1_rules="auto"),
        frozenset({1, 2, 3, 4, 6, 8, 10, 12}),
        description="independent N_1 with loops, any rule at v1",
    ),
    "loops-n5": TheoremCheck(
        Family(nmax=5, nmin=5, loops="all", v1_independent=True, v1_rules="auto", samples=20_000, seed=2016),
        frozenset({1, 2, 3, 4, 6, 8, 10, 12}),
        description="independent N_1 with loops, n = 5 sampled",
    ),
    "mingame": TheoremCheck(
        Family(nmax=5, v1_rules="anti"),
        frozenset({1, 2, 4, 5, 6, 10}),
        patterns=True,
        description="anti-threshold v1, arbitrary loopless graphs",
    ),
    "mingame-loops": TheoremCheck(
        Family(nmax=4, loops="all", v1_rules="anti"),
        frozenset({1, 2, 3, 4, 5, 6, 8, 10}),
        patterns=True,
        description="anti-threshold v1, arbitrary graphs with loops",
    ),
    "prop": TheoremCheck(
        Family(nmax=4, loops="not_v1", v1_rules="count"),
        None,
        forbidden=frozenset({3}),
        description="no loop at v1, any count rule at v1: no period 3",
    ),
}


def verify_theorem(
    name: str, family: Optional[Family] = None, workers: int = 1, backend: Optional[str] = None
) -> list[VerificationReport]:
    """Period-set report, plus the pattern report for anti-threshold families."""
    try:
        check = THEOREMS[name]
    except KeyError:
        raise SweepError(f"unknown theorem {name!r}; choose from {sorted(THEOREMS)}") from None
    fam = family or check.family
    res = run_sweep(fam, workers, backend)
    out = [verify_period_set(fam, check.expected, check.forbidden, name, res)]
    if check.patterns:
        out.append(verify_pattern_period_consistency(fam, f"{name}:patterns", res))
    return out


__all__ = [
    "Family",
    "SweepError",
    "SweepResult",
    "THEOREMS",
    "TheoremCheck",
    "VerificationReport",
    "build_config",
    "family_graphs",
    "run_sweep",
    "sample_system",
    "verify_pattern_period_consistency",
    "verify_period_set",
    "verify_theorem",
]
