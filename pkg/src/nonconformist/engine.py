"""Exact synchronous dynamics on a SystemConfig.

States are n-bit words: vertex i occupies bit i-1 and a set bit means +1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .graph import iter_bits
from .rules import SystemConfig, compile_rule

SUCCESSOR_MAX_N = 24


class EngineError(ValueError):
    pass


@dataclass(frozen=True)
class State:
    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < 1 << self.n:
            raise EngineError(f"state word {self.bits} does not fit {self.n} vertices")

    @classmethod
    def from_opinions(cls, opinions: Iterable[int]) -> "State":
        ops = list(opinions)
        bits = 0
        for i, o in enumerate(ops):
            if o not in (1, -1):
                raise EngineError(f"opinion {o!r} at vertex {i + 1} is not +1/-1")
            if o == 1:
                bits |= 1 << i
        return cls(len(ops), bits)

    @classmethod
    def from_string(cls, text: str) -> "State":
        text = text.strip()
        if not text or set(text) - {"+", "-"}:
            raise EngineError(f"state string {text!r} must consist of '+' and '-'")
        return cls.from_opinions(1 if ch == "+" else -1 for ch in text)

    @classmethod
    def from_set(cls, n: int, plus: Iterable[int]) -> "State":
        bits = 0
        for v in plus:
            if not 1 <= v <= n:
                raise EngineError(f"vertex {v} out of range 1..{n}")
            bits |= 1 << (v - 1)
        return cls(n, bits)

    @property
    def opinions(self) -> tuple[int, ...]:
        return tuple(1 if self.bits >> i & 1 else -1 for i in range(self.n))

    def opinion(self, i: int) -> int:
        return 1 if self.bits >> (i - 1) & 1 else -1

    @property
    def plus_set(self) -> frozenset[int]:
        """U: vertices holding +1."""
        return frozenset(i + 1 for i in iter_bits(self.bits))

    @property
    def plus_star(self) -> frozenset[int]:
        """U*: conformists holding +1 (U without vertex 1)."""
        return frozenset(i + 1 for i in iter_bits(self.bits & ~1))

    def __str__(self) -> str:
        return "".join("+" if self.bits >> i & 1 else "-" for i in range(self.n))


@dataclass(frozen=True)
class CycleReport:
    transient: int
    period: int
    cycle_states: tuple[State, ...]

    @property
    def c_sequence(self) -> tuple[int, ...]:
        """Opinion of v1 in each cycle state."""
        return tuple(s.opinion(1) for s in self.cycle_states)

    def to_dict(self) -> dict:
        return {
            "transient": self.transient,
            "period": self.period,
            "cycle_states": [str(s) for s in self.cycle_states],
            "c_sequence": list(self.c_sequence),
        }


@dataclass(frozen=True)
class _Compiled:
    n: int
    masks: tuple[int, ...]
    kinds: tuple[int, ...]
    cmasks: tuple[int, ...]
    offsets: tuple[int, ...]
    table: tuple[int, ...]


@lru_cache(maxsize=4096)
def compile_config(config: SystemConfig) -> _Compiled:
    kinds, cmasks, offsets, table = [], [], [], []
    for i in range(1, config.n + 1):
        kind, cm, tab = compile_rule(config.rule(i), config.graph, i)
        kinds.append(kind)
        cmasks.append(cm)
        offsets.append(len(table))
        if tab is not None:
            table.extend(tab)
    return _Compiled(config.n, config.graph.masks, tuple(kinds), tuple(cmasks), tuple(offsets), tuple(table))


def _compress(s: int, mask: int) -> int:
    out, j = 0, 0
    for b in iter_bits(mask):
        out |= (s >> b & 1) << j
        j += 1
    return out


def step_bits(cc: _Compiled, s: int) -> int:
    nxt = 0
    for i in range(cc.n):
        m = cc.masks[i]
        if cc.kinds[i] == 0:
            on = cc.cmasks[i] >> (s & m).bit_count() & 1
        else:
            on = cc.table[cc.offsets[i] + _compress(s, m)]
        if on:
            nxt |= 1 << i
    return nxt


def step(config: SystemConfig, s: State) -> State:
    if s.n != config.n:
        raise EngineError(f"state has {s.n} vertices, system has {config.n}")
    return State(config.n, step_bits(compile_config(config), s.bits))


def trajectory(config: SystemConfig, s0: State, steps: int) -> list[State]:
    """s0 followed by ``steps`` successors."""
    if s0.n != config.n:
        raise EngineError(f"state has {s0.n} vertices, system has {config.n}")
    cc = compile_config(config)
    out = [s0.bits]
    for _ in range(steps):
        out.append(step_bits(cc, out[-1]))
    return [State(config.n, b) for b in out]


def run_to_cycle(config: SystemConfig, s0: State, cap: Optional[int] = None) -> CycleReport:
    """Iterate until a state repeats; exact transient and period via a first-visit table."""
    if s0.n != config.n:
        raise EngineError(f"state has {s0.n} vertices, system has {config.n}")
    if cap is None:
        cap = (1 << config.n) + 1
    if cap < 1:
        raise EngineError("cap must be >= 1")
    cc = compile_config(config)
    first_visit: dict[int, int] = {}
    order: list[int] = []
    s = s0.bits
    for t in range(cap + 1):
        if s in first_visit:
            rho = first_visit[s]
            cycle = order[rho:]
            return CycleReport(rho, t - rho, tuple(State(config.n, b) for b in cycle))
        first_visit[s] = t
        order.append(s)
        s = step_bits(cc, s)
    raise EngineError(f"no repeated state within {cap} steps")


def successor_map(config: SystemConfig, backend: Optional[str] = None) -> np.ndarray:
    """Successor word of every one of the 2^n states (uint32 array)."""
    if config.n > SUCCESSOR_MAX_N:
        raise EngineError(f"full successor map is capped at n <= {SUCCESSOR_MAX_N}, got {config.n}")
    cc = compile_config(config)
    k = kernels.get_backend(backend)
    return k.successor_table(cc.n, cc.masks, cc.kinds, cc.cmasks, cc.offsets, cc.table)


def recurrent_states(succ: np.ndarray) -> np.ndarray:
    """Boolean mask of states lying on a cycle, found by peeling in-degree-0 states."""
    succ = np.asarray(succ, dtype=np.int64)
    indeg = np.bincount(succ, minlength=len(succ))
    alive = np.ones(len(succ), dtype=bool)
    frontier = np.flatnonzero(indeg == 0)
    while frontier.size:
        alive[frontier] = False
        targets = succ[frontier]
        np.subtract.at(indeg, targets, 1)
        cand = np.unique(targets)
        frontier = cand[(indeg[cand] == 0) & alive[cand]]
    return alive


def cycle_from(config: SystemConfig, start_bits: int, period: int) -> tuple[State, ...]:
    cc = compile_config(config)
    out, s = [], start_bits
    for _ in range(period):
        out.append(State(config.n, s))
        s = step_bits(cc, s)
    if s != start_bits:
        raise EngineError("start state is not on a cycle of the given period")
    return tuple(out)
