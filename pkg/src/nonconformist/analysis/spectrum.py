"""Exact period spectra over the whole state space."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import kernels
from ..engine import CycleReport, State, successor_map
from ..rules import SystemConfig


@dataclass(frozen=True)
class PeriodSpectrum:
    n: int
    counts: dict[int, int]
    cycles: tuple[CycleReport, ...]

    @property
    def periods(self) -> set[int]:
        return set(self.counts)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "counts": {str(p): c for p, c in sorted(self.counts.items())},
            "cycles": [[str(s) for s in cyc.cycle_states] for cyc in self.cycles],
        }


def period_spectrum(config: SystemConfig, backend: Optional[str] = None) -> PeriodSpectrum:
    """Period reached from each of the 2^n initial states, and every distinct cycle.

    Each cycle is listed once, rotated to start at its least state word.
    """
    succ = successor_map(config, backend)
    k = kernels.get_backend(backend)
    cycle_of, cyc_min, cyc_len = k.attractors(succ)
    per_state = np.asarray(cyc_len)[np.asarray(cycle_of)]
    counts = Counter(int(p) for p in per_state)
    cycles = []
    for start, length in sorted(zip(cyc_min.tolist(), cyc_len.tolist())):
        states, s = [], start
        for _ in range(length):
            states.append(State(config.n, s))
            s = int(succ[s])
        cycles.append(CycleReport(0, length, tuple(states)))
    return PeriodSpectrum(config.n, dict(sorted(counts.items())), tuple(cycles))
