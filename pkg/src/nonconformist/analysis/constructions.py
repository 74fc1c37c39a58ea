"""Hand-built systems with known periods: the single edge, k33, cube3 and G_k."""
from __future__ import annotations

import itertools
from typing import Iterable, Optional

from ..engine import State, run_to_cycle
from ..graph import GK_ATTACH, bipartition, gen_gk, gen_preset
from ..rules import CountSet, SystemConfig, make_config, minority_rule


def gk_rule(k: int, odd: bool = True) -> CountSet:
    """v1 is +1 iff its +1 count lies in {0, 1, k+1, ..., 2k} (odd) or stops at 2k-1."""
    top = 2 * k if odd else 2 * k - 1
    return CountSet({0, 1, *range(k + 1, top + 1)})


def gk_initial(k: int) -> State:
    """U_0 = {v1} plus triangle A."""
    return State.from_set(2 * k + 8, {1, 2 * k + 3, 2 * k + 4, 2 * k + 5})


def gk_system(k: int, odd: bool = True, attach: tuple[int, int] = GK_ATTACH) -> tuple[SystemConfig, State]:
    """G_k with majority conformists; expected period 2k+1 if ``odd`` else 2k."""
    return make_config(gen_gk(k, attach), gk_rule(k, odd)), gk_initial(k)


def gk_periods(k: int, attach: tuple[int, int] = GK_ATTACH) -> tuple[int, int]:
    return tuple(run_to_cycle(*gk_system(k, odd, attach)).period for odd in (True, False))


def search_gk_wiring(ks: Iterable[int] = range(2, 9)) -> list[tuple[int, int]]:
    """Attachment choices (36 in all) under which every k gives periods (2k+1, 2k).

    The default wiring is tried first, so it leads the list whenever it works.
    """
    ks = list(ks)
    order = [GK_ATTACH] + [a for a in itertools.product(range(6), repeat=2) if a != GK_ATTACH]
    return [a for a in order if all(gk_periods(k, a) == (2 * k + 1, 2 * k) for k in ks)]


def preset_system(name: str, v1: str = "majority") -> SystemConfig:
    """Named graph with majority conformists; ``v1`` is 'majority' or 'minority'."""
    g = gen_preset(name)
    if v1 == "majority":
        return make_config(g)
    if v1 == "minority":
        return make_config(g, minority_rule(g.degree(1)))
    raise ValueError(f"v1 must be 'majority' or 'minority', got {v1!r}")


def preset_starts(config: SystemConfig) -> dict[str, State]:
    """All +1, all -1 and, for bipartite graphs, the two colour classes."""
    n = config.n
    out = {"all+": State.from_set(n, range(1, n + 1)), "all-": State.from_set(n, ())}
    parts: Optional[tuple] = bipartition(config.graph)
    if parts is not None:
        out["side0"] = State.from_set(n, parts[0])
        out["side1"] = State.from_set(n, parts[1])
    return out
