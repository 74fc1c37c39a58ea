"""Parity-wise behaviour of v1's neighbours on a cycle when N_1 is independent.

On a settled cycle every neighbour v of v1 obeys, at each parity of t, one of

    1. v is +1
    2. v has a loop and v_t = c_{t-1} OR v_{t-1}
    3. v has no loop and v_t = c_{t-1}
    4. v has a loop and v_t = c_{t-1} AND v_{t-1}
    5. v is -1

where c is v1's opinion. Odd cycles are doubled so that parity is well defined.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..engine import CycleReport, compile_config, step_bits
from ..graph import iter_bits, v1_neighborhood_independent
from ..rules import SystemConfig

# constant behaviours first, so a vertex that never changes at a parity is not
# counted as following v1
PRIORITY = (1, 5, 3, 2, 4)


class NeighborClassError(ValueError):
    pass


@dataclass(frozen=True)
class NeighborClass:
    """rule[(v, j)]: the governing behaviour of neighbour v at times t = j mod 2.

    ``candidates`` keeps every behaviour that fits, since on degenerate cycles
    (e.g. v1 constant at one parity) several can hold at once.
    """

    rule: dict[tuple[int, int], int]
    candidates: dict[tuple[int, int], tuple[int, ...]]
    length: int


def _parity_words(report: CycleReport) -> list[int]:
    words = [s.bits for s in report.cycle_states]
    return words * 2 if len(words) % 2 else words


def _fits(rule: int, looped: bool, cur: list[int], prev_self: list[int], prev_c: list[int]) -> bool:
    if rule == 1:
        return all(cur)
    if rule == 5:
        return not any(cur)
    if rule == 3:
        return not looped and cur == prev_c
    if rule == 2:
        return looped and all(a == (b | c) for a, b, c in zip(cur, prev_self, prev_c))
    if rule == 4:
        return looped and all(a == (b & c) for a, b, c in zip(cur, prev_self, prev_c))
    raise ValueError(rule)


def neighbor_parity_classes(config: SystemConfig, report: CycleReport) -> NeighborClass:
    g = config.graph
    if not v1_neighborhood_independent(g):
        raise NeighborClassError("neighbour classes need no two neighbours of vertex 1 to be adjacent")
    cc = compile_config(config)
    base = [s.bits for s in report.cycle_states]
    for j, w in enumerate(base):
        if step_bits(cc, w) != base[(j + 1) % len(base)]:
            raise NeighborClassError(f"cycle report is not a cycle of this system (position {j})")
    words = _parity_words(report)
    L = len(words)
    rule: dict[tuple[int, int], int] = {}
    candidates: dict[tuple[int, int], tuple[int, ...]] = {}
    for b in iter_bits(g.masks[0] & ~1):
        v = b + 1
        looped = g.has_loop(v)
        for par in (0, 1):
            ts = [t for t in range(L) if t % 2 == par]
            cur = [words[t] >> b & 1 for t in ts]
            prev_self = [words[(t - 1) % L] >> b & 1 for t in ts]
            prev_c = [words[(t - 1) % L] & 1 for t in ts]
            fits = tuple(r for r in PRIORITY if _fits(r, looped, cur, prev_self, prev_c))
            if not fits:
                raise NeighborClassError(
                    f"no behaviour 1-5 fits neighbour {v} at parity {par} on cycle "
                    + " ".join(str(s) for s in report.cycle_states)
                )
            rule[(v, par)] = fits[0]
            candidates[(v, par)] = tuple(sorted(fits))
    return NeighborClass(rule, candidates, L)


def xyz_sets(nc: NeighborClass) -> dict[str, frozenset[int]]:
    """X_j, Y_j, Z_j for j = 0, 1 built from the governing behaviours."""
    verts = sorted({v for v, _ in nc.rule})
    out = {}
    for j in (0, 1):
        here = {v: nc.rule[(v, j)] for v in verts}
        there = {v: nc.rule[(v, 1 - j)] for v in verts}
        out[f"X{j}"] = frozenset(v for v in verts if here[v] == 2 and there[v] == 4)
        out[f"Y{j}"] = frozenset(
            v
            for v in verts
            if here[v] == 3 or (here[v] == 2 and there[v] == 5) or (here[v] == 4 and there[v] == 1)
        )
        out[f"Z{j}"] = frozenset(v for v in verts if here[v] == 4 and there[v] == 2)
    return out


def check_monochromatic(config: SystemConfig, report: CycleReport) -> list[str]:
    """Violations of: at every cycle time t = j mod 2, each of X_j, Y_j, Z_j is
    monochromatic."""
    nc = neighbor_parity_classes(config, report)
    sets = xyz_sets(nc)
    words = _parity_words(report)
    out = []
    for t, w in enumerate(words):
        j = t % 2
        for name in ("X", "Y", "Z"):
            members = sets[f"{name}{j}"]
            colours = {w >> (v - 1) & 1 for v in members}
            if len(colours) > 1:
                out.append(f"{name}{j} not monochromatic at t={t}: {sorted(members)}")
    return out
