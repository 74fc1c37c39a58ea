"""Compiled versus pure-Python kernels on the three hot paths.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each row times one kernel call on the same inputs under both backends and
checks that the outputs agree.
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from nonconformist.analysis.constructions import gk_system
from nonconformist.analysis.sweeps import Family, family_graphs, threshold_bounds, v1_rule_tables
from nonconformist.engine import compile_config
from nonconformist.kernels import compiled_available, get_backend


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _successor_case(k: int):
    cc = compile_config(gk_system(k)[0])
    args = (cc.n, cc.masks, cc.kinds, cc.cmasks, cc.offsets, cc.table)
    return f"successor_table G_{k} (n={cc.n})", lambda m: m.successor_table(*args)


def _attractor_case(k: int):
    cc = compile_config(gk_system(k)[0])
    succ = get_backend("cython" if compiled_available() else "python").successor_table(
        cc.n, cc.masks, cc.kinds, cc.cmasks, cc.offsets, cc.table
    )
    return f"attractors G_{k} (n={cc.n})", lambda m: m.attractors(succ)


def _sweep_case(n: int, loops: str, mode: str, graphs: int):
    fam = Family(nmax=n, nmin=n, loops=loops, v1_rules=mode)
    jobs = []
    for masks in family_graphs(fam):
        subset, tables = v1_rule_tables(mode, masks[0].bit_count())
        lo, hi = threshold_bounds(fam, masks)
        jobs.append((n, masks, lo, hi, subset, tables))
        if len(jobs) == graphs:
            break

    def run(m):
        return [m.sweep_graph(*job)[0] for job in jobs]

    return f"sweep_graph n={n} loops={loops} v1={mode} ({graphs} graphs)", run


def _same(a, b) -> bool:
    if isinstance(a, (list, tuple)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    if not compiled_available():
        raise SystemExit("compiled kernels are not built; nothing to compare")
    cy, py = get_backend("cython"), get_backend("python")
    cases = [
        _successor_case(2),
        _successor_case(4),
        _attractor_case(4),
        _sweep_case(4, "all", "anti", 40),
        _sweep_case(5, "none", "count", 10),
    ]
    rows = []
    for name, fn in cases:
        tc, oc = _best(lambda: fn(cy), args.repeat)
        tp, op = _best(lambda: fn(py), 1)
        rows.append({"case": name, "cython_s": tc, "python_s": tp, "speedup": tp / tc, "agree": _same(oc, op)})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    width = max(len(r["case"]) for r in rows)
    print(f"{'case':<{width}}  {'cython':>10}  {'python':>10}  {'speedup':>8}  agree")
    for r in rows:
        print(
            f"{r['case']:<{width}}  {r['cython_s']:>9.4f}s  {r['python_s']:>9.3f}s  {r['speedup']:>7.0f}x  {r['agree']}"
        )


if __name__ == "__main__":
    main()
