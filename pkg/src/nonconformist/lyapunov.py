"""The modified Lyapunov operator for threshold networks with one free vertex.

Everything is exact integer arithmetic: half-integers are stored doubled
(``y2 = 2*y``, ``z2 = 2*z``). U* is the +1 set without vertex 1, and the
neighbour counts in x(t) likewise exclude vertex 1.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .engine import CycleReport, State, compile_config, step_bits
from .graph import iter_bits
from .rules import RuleError, SystemConfig


class LyapunovError(ValueError):
    pass


@dataclass(frozen=True)
class TraceEntry:
    t: int
    x: int
    y2: int
    z2: int


@dataclass(frozen=True)
class LyapunovTrace:
    entries: tuple[TraceEntry, ...]
    settlement_index: int

    @property
    def z2(self) -> list[int]:
        return [e.z2 for e in self.entries]

    def is_monotone(self) -> bool:
        z = self.z2
        return all(a <= b for a, b in zip(z, z[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "x", "2y", "2z"])
        for e in self.entries:
            w.writerow([e.t, e.x, e.y2, e.z2])
        return buf.getvalue()


def _thresholds(config: SystemConfig) -> dict[int, int]:
    try:
        return config.thresholds()
    except RuleError as exc:
        raise LyapunovError(str(exc)) from None


def s_vector(config: SystemConfig) -> dict[int, int]:
    """2*s_i for every conformist: 2r_i - 2 next to vertex 1, 2r_i - 1 otherwise."""
    thr = _thresholds(config)
    n1 = config.graph.neighbors(1)
    return {i: 2 * r - 2 if i in n1 else 2 * r - 1 for i, r in thr.items()}


def _y2(s2: list[int], bits: int) -> int:
    return sum(s2[i] for i in iter_bits(bits & ~1))


def _x(masks: tuple[int, ...], cur: int, prev: int) -> int:
    # pairs (i, j): i in U*_t, j in U*_{t-1} and j in N_i
    prev_star = prev & ~1
    return sum((masks[i] & prev_star).bit_count() for i in iter_bits(cur & ~1))


def z2_series(config: SystemConfig, states: list[int]) -> list[tuple[int, int, int]]:
    """(x, y2, z2) for t = 1..len(states)-1 over a list of state words."""
    sv = s_vector(config)
    s2 = [0] * config.n
    for i, v in sv.items():
        s2[i - 1] = v
    masks = config.graph.masks
    ys = [_y2(s2, b) for b in states]
    out = []
    for t in range(1, len(states)):
        x = _x(masks, states[t], states[t - 1])
        out.append((x, ys[t], 2 * x - ys[t] - ys[t - 1]))
    return out


def trace(config: SystemConfig, s0: State, T: int) -> LyapunovTrace:
    """Trajectory of T states from s0 with x, 2y and 2z at t = 1..T-1."""
    if T < 2:
        raise LyapunovError("a trace needs T >= 2 states")
    if s0.n != config.n:
        raise LyapunovError(f"state has {s0.n} vertices, system has {config.n}")
    _thresholds(config)
    cc = compile_config(config)
    states = [s0.bits]
    for _ in range(T - 1):
        states.append(step_bits(cc, states[-1]))
    series = z2_series(config, states)
    entries = tuple(TraceEntry(t, x, y2, z2) for t, (x, y2, z2) in enumerate(series, start=1))
    settle = len(entries)
    while settle > 1 and entries[settle - 2].z2 == entries[-1].z2:
        settle -= 1
    return LyapunovTrace(entries, entries[settle - 1].t)


def z2_bound(n: int) -> int:
    return 2 * (n * n + 4 * n)


@dataclass(frozen=True)
class FlipViolation:
    position: int
    vertex: int
    reason: str


def check_settled_flips(config: SystemConfig, report: CycleReport) -> list[FlipViolation]:
    """Every conformist whose U* membership differs at t-1 and t+1 must neighbour
    vertex 1 and see exactly r_i - 1 conformist +1 neighbours at t."""
    thr = _thresholds(config)
    p = report.period
    states = [s.bits for s in report.cycle_states]
    if len(states) != p or p < 1:
        raise LyapunovError("cycle report is inconsistent with its period")
    cc = compile_config(config)
    for j in range(p):
        if step_bits(cc, states[j]) != states[(j + 1) % p]:
            raise LyapunovError(f"cycle report is not a cycle of this system (position {j})")
    n1 = config.graph.masks[0]
    masks = config.graph.masks
    out = []
    for t in range(p):
        prev, cur, nxt = states[(t - 1) % p], states[t], states[(t + 1) % p]
        for b in iter_bits((prev ^ nxt) & ~1):
            v = b + 1
            if not n1 >> b & 1:
                out.append(FlipViolation(t, v, "flipping vertex is not adjacent to vertex 1"))
                continue
            seen = (masks[b] & cur & ~1).bit_count()
            if seen != thr[v] - 1:
                out.append(FlipViolation(t, v, f"|N_i & U*_t| = {seen}, expected r_i - 1 = {thr[v] - 1}"))
    return out
