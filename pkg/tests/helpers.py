"""Shared enumeration of recurrent cycles for the exhaustive proof-surface tests."""
import itertools

from nonconformist.analysis.sweeps import build_config, family_graphs, threshold_bounds, v1_rule_tables
from nonconformist.engine import CycleReport, cycle_from, successor_map
from nonconformist.kernels import get_backend


def family_cycles(family):
    """(config, cycle report) for every distinct cycle on every graph of the family.

    A cycle reached under several rule assignments on the same graph is
    yielded once, with the first assignment that produced it.
    """
    k = get_backend()
    for masks in family_graphs(family):
        lo, hi = threshold_bounds(family, masks)
        _, tables = v1_rule_tables(family.v1_rules, masks[0].bit_count())
        seen = set()
        for thresholds in itertools.product(*[range(a, b + 1) for a, b in zip(lo[1:], hi[1:])]):
            for row in range(len(tables)):
                cfg = build_config(family, masks, thresholds, row)
                _, cmin, clen = k.attractors(successor_map(cfg))
                for start, length in zip(cmin.tolist(), clen.tolist()):
                    states = cycle_from(cfg, start, length)
                    key = tuple(s.bits for s in states)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield cfg, CycleReport(0, length, states)


# one line per acceptance criterion, printed again in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line
