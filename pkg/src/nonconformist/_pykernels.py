"""Pure-Python twin of ``_ckernels``; used when the extension is not built."""
from __future__ import annotations

import numpy as np

MAX_N = 24
SWEEP_MAX_N = 6


def _compress(s: int, mask: int) -> int:
    out = 0
    j = 0
    while mask:
        low = mask & -mask
        if s & low:
            out |= 1 << j
        j += 1
        mask ^= low
    return out


def successor_table(n, masks, kinds, cmasks, offsets, table):
    if n < 1 or n > MAX_N:
        raise ValueError(f"successor table supports 1 <= n <= {MAX_N}, got {n}")
    masks = [int(m) for m in masks]
    kinds = [int(k) for k in kinds]
    cmasks = [int(c) for c in cmasks]
    offsets = [int(o) for o in offsets]
    table = [int(t) for t in table]
    out = np.empty(1 << n, dtype=np.uint32)
    for s in range(1 << n):
        nxt = 0
        for i in range(n):
            if kinds[i] == 0:
                if cmasks[i] >> (s & masks[i]).bit_count() & 1:
                    nxt |= 1 << i
            elif table[offsets[i] + _compress(s, masks[i])]:
                nxt |= 1 << i
        out[s] = nxt
    return out


def _attractors(succ: list[int]):
    S = len(succ)
    cycle_of = [-1] * S
    mark = [-1] * S
    cyc_min: list[int] = []
    cyc_len: list[int] = []
    for s0 in range(S):
        if cycle_of[s0] >= 0:
            continue
        s = s0
        path = []
        while mark[s] == -1:
            mark[s] = s0
            path.append(s)
            s = succ[s]
        if cycle_of[s] < 0:
            cid = len(cyc_min)
            u, mn, length = s, s, 0
            while True:
                cycle_of[u] = cid
                length += 1
                mn = min(mn, u)
                u = succ[u]
                if u == s:
                    break
            cyc_min.append(mn)
            cyc_len.append(length)
        cid = cycle_of[s]
        for q in path:
            if cycle_of[q] < 0:
                cycle_of[q] = cid
    return cycle_of, cyc_min, cyc_len


def attractors(succ):
    """(cycle_of, cycle_min, cycle_len) of a functional graph given as a successor array."""
    cycle_of, cyc_min, cyc_len = _attractors([int(x) for x in succ])
    return (
        np.asarray(cycle_of, dtype=np.int32),
        np.asarray(cyc_min, dtype=np.uint32),
        np.asarray(cyc_len, dtype=np.int64),
    )


def sweep_graph(n, masks, thr_lo, thr_hi, v1_subset, tables):
    if n < 1 or n > SWEEP_MAX_N:
        raise ValueError(f"sweeps support 1 <= n <= {SWEEP_MAX_N}, got {n}")
    masks = [int(m) for m in masks]
    lo = [int(x) for x in thr_lo]
    hi = [int(x) for x in thr_hi]
    tables = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(tables, dtype=np.uint8))]
    S = 1 << n
    cnt = [[(s & masks[i]).bit_count() for s in range(S)] for i in range(n)]
    key = [_compress(s, masks[0]) if v1_subset else cnt[0][s] for s in range(S)]
    if tables and len(tables[0]) <= max(key):
        raise ValueError("v1 rule tables are too short for the neighbourhood")
    hist = np.zeros(S + 1, dtype=np.int64)
    first = np.full((S + 1, 3), -1, dtype=np.int64)
    patterns = set()
    if any(lo[i] > hi[i] for i in range(1, n)):
        return hist, first, patterns, 0

    r = list(lo)
    a_idx = 0
    nconf = 0
    while True:
        conf = [0] * S
        for s in range(S):
            u = 0
            for i in range(1, n):
                if cnt[i][s] >= r[i]:
                    u |= 1 << i
            conf[s] = u
        for rr, row in enumerate(tables):
            succ = [conf[s] | row[key[s]] for s in range(S)]
            cycle_of, cyc_min, cyc_len = _attractors(succ)
            nconf += 1
            for s in range(S):
                p = cyc_len[cycle_of[s]]
                hist[p] += 1
                if first[p, 0] < 0:
                    first[p] = (a_idx, rr, s)
            for u, length in zip(cyc_min, cyc_len):
                cbits = 0
                for p in range(length):
                    cbits |= (u & 1) << p
                    u = succ[u]
                patterns.add((cbits, length))
        i = 1
        while i < n:
            if r[i] < hi[i]:
                r[i] += 1
                break
            r[i] = lo[i]
            i += 1
        if i >= n:
            break
        a_idx += 1
    return hist, first, patterns, nconf
