"""Vertex update rules and the system configuration that binds them to a graph."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .graph import Graph

COUNT_MODE_MAX_DEG = 30
FULL_MODE_MAX_DEG = 3


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Threshold:
    """+1 iff at least ``r`` neighbours hold +1."""

    r: int


@dataclass(frozen=True)
class AntiThreshold:
    """+1 iff fewer than ``r`` neighbours hold +1."""

    r: int


@dataclass(frozen=True)
class CountSet:
    """+1 iff the number of +1 neighbours lies in ``accepted``."""

    accepted: frozenset[int]

    def __init__(self, accepted: Iterable[int]):
        object.__setattr__(self, "accepted", frozenset(accepted))


@dataclass(frozen=True)
class SubsetSystem:
    """+1 iff the exact set of +1 neighbours (1-based labels) is accepted."""

    accepted: frozenset[frozenset[int]]

    def __init__(self, accepted: Iterable[Iterable[int]]):
        object.__setattr__(self, "accepted", frozenset(frozenset(a) for a in accepted))


Rule = Union[Threshold, AntiThreshold, CountSet, SubsetSystem]


def eval_rule(rule: Rule, active: Iterable[int], neighborhood: Iterable[int] | None = None) -> int:
    """Opinion (+1/-1) produced by ``rule`` given the +1 members of the neighbourhood."""
    active = frozenset(active)
    if neighborhood is not None and not active <= frozenset(neighborhood):
        raise RuleError(f"active set {sorted(active)} is not inside N_i = {sorted(neighborhood)}")
    c = len(active)
    if isinstance(rule, Threshold):
        ok = c >= rule.r
    elif isinstance(rule, AntiThreshold):
        ok = c < rule.r
    elif isinstance(rule, CountSet):
        ok = c in rule.accepted
    elif isinstance(rule, SubsetSystem):
        ok = active in rule.accepted
    else:
        raise RuleError(f"not a rule: {rule!r}")
    return 1 if ok else -1


def majority_rule(deg: int) -> Threshold:
    # even degree: a tie gives -1
    return Threshold((deg + 2) // 2)


def minority_rule(deg: int) -> AntiThreshold:
    return AntiThreshold((deg + 2) // 2)


def validate_rule(rule: Rule, nbrs: frozenset[int], vertex: int = 0) -> None:
    deg = len(nbrs)
    where = f" at vertex {vertex}" if vertex else ""
    if isinstance(rule, (Threshold, AntiThreshold)):
        if not 0 <= rule.r <= deg + 1:
            raise RuleError(f"threshold {rule.r}{where} outside 0..{deg + 1}")
    elif isinstance(rule, CountSet):
        bad = [c for c in rule.accepted if not 0 <= c <= deg]
        if bad:
            raise RuleError(f"accepted counts {sorted(bad)}{where} outside 0..{deg}")
    elif isinstance(rule, SubsetSystem):
        for a in rule.accepted:
            if not a <= nbrs:
                raise RuleError(f"accepted set {sorted(a)}{where} is not a subset of N = {sorted(nbrs)}")
    else:
        raise RuleError(f"not a rule: {rule!r}")


def count_mask(rule: Rule, deg: int) -> int:
    """Bit c set iff the rule gives +1 on c active neighbours (count-based rules only)."""
    if isinstance(rule, Threshold):
        return sum(1 << c for c in range(deg + 1) if c >= rule.r)
    if isinstance(rule, AntiThreshold):
        return sum(1 << c for c in range(deg + 1) if c < rule.r)
    if isinstance(rule, CountSet):
        return sum(1 << c for c in rule.accepted if c <= deg)
    raise RuleError(f"{type(rule).__name__} is not count-based")


def subset_table(rule: Rule, nbrs: Iterable[int]) -> list[int]:
    """0/1 table indexed by the compressed neighbourhood pattern.

    Bit j of the index is the opinion of the j-th smallest neighbour.
    """
    order = sorted(nbrs)
    table = []
    for idx in range(1 << len(order)):
        active = frozenset(v for j, v in enumerate(order) if idx >> j & 1)
        table.append(1 if eval_rule(rule, active) == 1 else 0)
    return table


def enumerate_v1_rules(deg: int, mode: str = "count") -> Iterator[Rule]:
    """Every rule at v1 of the given kind.

    ``count`` yields all 2^(deg+1) CountSet rules (bitmask order over counts);
    ``full`` yields all 2^(2^deg) SubsetSystem rules over neighbours labelled
    2..deg+1 (bitmask order over compressed patterns). Callers relabel via
    :func:`subset_rule_from_table` when the real neighbourhood differs.
    """
    if mode in ("count", "count_based"):
        if deg > COUNT_MODE_MAX_DEG:
            raise RuleError(f"count-based enumeration capped at degree {COUNT_MODE_MAX_DEG}")
        for m in range(1 << (deg + 1)):
            yield CountSet(c for c in range(deg + 1) if m >> c & 1)
    elif mode in ("full", "full_subset_system"):
        if deg > FULL_MODE_MAX_DEG:
            raise RuleError(f"full subset-system enumeration capped at degree {FULL_MODE_MAX_DEG}")
        nbrs = list(range(2, deg + 2))
        for m in range(1 << (1 << deg)):
            yield subset_rule_from_table(m, nbrs)
    else:
        raise RuleError(f"unknown rule mode {mode!r}")


def subset_rule_from_table(bits: int, nbrs: Iterable[int]) -> SubsetSystem:
    order = sorted(nbrs)
    accepted = []
    for idx in range(1 << len(order)):
        if bits >> idx & 1:
            accepted.append([v for j, v in enumerate(order) if idx >> j & 1])
    return SubsetSystem(accepted)


@dataclass(frozen=True)
class SystemConfig:
    graph: Graph
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if len(self.rules) != self.graph.n:
            raise RuleError(f"{len(self.rules)} rules for {self.graph.n} vertices")
        for i, rule in enumerate(self.rules, start=1):
            validate_rule(rule, self.graph.neighbors(i), i)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def conformist_regime(self) -> bool:
        """All vertices except v1 carry threshold rules."""
        return all(isinstance(r, Threshold) for r in self.rules[1:])

    def rule(self, i: int) -> Rule:
        return self.rules[i - 1]

    def thresholds(self) -> dict[int, int]:
        """r_i for every conformist; raises outside the threshold regime."""
        if not self.conformist_regime:
            bad = [i for i, r in enumerate(self.rules[1:], start=2) if not isinstance(r, Threshold)]
            raise RuleError(f"vertices {bad} do not carry threshold rules")
        return {i: r.r for i, r in enumerate(self.rules[1:], start=2)}


def make_config(graph: Graph, v1_rule: Rule | None = None, overrides: dict[int, Rule] | None = None) -> SystemConfig:
    """Majority everywhere, ``v1_rule`` at vertex 1, ``overrides`` on top."""
    rules = [majority_rule(graph.degree(i)) for i in range(1, graph.n + 1)]
    if v1_rule is not None:
        rules[0] = v1_rule
    for i, r in (overrides or {}).items():
        rules[i - 1] = r
    return SystemConfig(graph, tuple(rules))


def threshold_ranges(graph: Graph, vertices: Iterable[int]) -> list[range]:
    return [range(0, graph.degree(i) + 2) for i in vertices]


def all_threshold_assignments(graph: Graph) -> Iterator[tuple[int, ...]]:
    """Every (r_2, ..., r_n) with r_i in 0..deg(i)+1."""
    return itertools.product(*threshold_ranges(graph, range(2, graph.n + 1)))


def compile_rule(rule: Rule, graph: Graph, vertex: int) -> tuple[int, int, list[int] | None]:
    """(kind, count_mask, table) for the kernels: kind 0 is count-based, 1 subset-based."""
    nbrs = graph.neighbors(vertex)
    if isinstance(rule, SubsetSystem):
        return 1, 0, subset_table(rule, nbrs)
    return 0, count_mask(rule, len(nbrs)), None


__all__ = [
    "AntiThreshold",
    "CountSet",
    "Rule",
    "RuleError",
    "SubsetSystem",
    "SystemConfig",
    "Threshold",
    "all_threshold_assignments",
    "compile_rule",
    "count_mask",
    "enumerate_v1_rules",
    "eval_rule",
    "majority_rule",
    "make_config",
    "minority_rule",
    "subset_rule_from_table",
    "subset_table",
    "validate_rule",
]
