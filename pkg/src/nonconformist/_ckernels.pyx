# cython: language_level=3
"""Compiled hot loops: successor tables, attractor extraction, per-graph sweeps.

Mirrors ``_pykernels`` function for function; both must return identical results.
"""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t, uint32_t, uint64_t

cnp.import_array()

DEF MAX_N = 24
DEF SWEEP_MAX_N = 6


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


cdef inline int popcount32(uint32_t x) nogil:
    return __builtin_popcount(x)


cdef inline uint32_t compress(uint32_t s, uint32_t mask) nogil:
    # gather the bits of s selected by mask into the low bits, ascending order
    cdef uint32_t out = 0
    cdef int j = 0
    while mask:
        if s & mask & (~mask + 1):
            out |= (<uint32_t>1) << j
        j += 1
        mask &= mask - 1
    return out


def successor_table(int n, masks, kinds, cmasks, offsets, table):
    if n < 1 or n > MAX_N:
        raise ValueError(f"successor table supports 1 <= n <= {MAX_N}, got {n}")
    cdef uint32_t[:] m = np.ascontiguousarray(masks, dtype=np.uint32)
    cdef cnp.int8_t[:] kv = np.ascontiguousarray(kinds, dtype=np.int8)
    cdef uint64_t[:] cm = np.ascontiguousarray(cmasks, dtype=np.uint64)
    cdef int64_t[:] off = np.ascontiguousarray(offsets, dtype=np.int64)
    tab_arr = np.ascontiguousarray(table, dtype=np.uint8)
    if tab_arr.size == 0:
        tab_arr = np.zeros(1, dtype=np.uint8)
    cdef uint8_t[:] tab = tab_arr
    cdef int64_t S = (<int64_t>1) << n
    out = np.empty(S, dtype=np.uint32)
    cdef uint32_t[:] o = out
    cdef int64_t s
    cdef int i
    cdef uint32_t nxt, sm
    with nogil:
        for s in range(S):
            nxt = 0
            for i in range(n):
                sm = (<uint32_t>s) & m[i]
                if kv[i] == 0:
                    if (cm[i] >> popcount32(sm)) & 1:
                        nxt |= (<uint32_t>1) << i
                else:
                    if tab[off[i] + compress(<uint32_t>s, m[i])]:
                        nxt |= (<uint32_t>1) << i
            o[s] = nxt
    return out



cdef int64_t _attractors(const uint32_t[:] succ, int64_t S, int32_t[:] cycle_of,
                         int64_t[:] mark, uint32_t[:] path,
                         uint32_t[:] cyc_min, int64_t[:] cyc_len) noexcept nogil:
    cdef int64_t s0, s, plen, q, ncyc = 0, L, cid
    cdef uint32_t mn, u
    for s0 in range(S):
        cycle_of[s0] = -1
        mark[s0] = -1
    for s0 in range(S):
        if cycle_of[s0] >= 0:
            continue
        s = s0
        plen = 0
        while mark[s] == -1:
            mark[s] = s0
            path[plen] = <uint32_t>s
            plen += 1
            s = succ[s]
        if cycle_of[s] < 0:
            # closed a new cycle inside this walk
            cid = ncyc
            ncyc += 1
            L = 0
            mn = <uint32_t>s
            u = <uint32_t>s
            while True:
                cycle_of[u] = <int32_t>cid
                L += 1
                if u < mn:
                    mn = u
                u = succ[u]
                if u == s:
                    break
            cyc_min[cid] = mn
            cyc_len[cid] = L
        cid = cycle_of[s]
        for q in range(plen):
            if cycle_of[path[q]] < 0:
                cycle_of[path[q]] = <int32_t>cid
    return ncyc


def attractors(succ):
    """(cycle_of, cycle_min, cycle_len) of a functional graph given as a successor array."""
    cdef const uint32_t[:] sv = np.ascontiguousarray(succ, dtype=np.uint32)
    cdef int64_t S = sv.shape[0]
    cycle_of = np.empty(S, dtype=np.int32)
    cyc_min = np.empty(S, dtype=np.uint32)
    cyc_len = np.empty(S, dtype=np.int64)
    mark = np.empty(S, dtype=np.int64)
    path = np.empty(S, dtype=np.uint32)
    cdef int64_t nc
    nc = _attractors(sv, S, cycle_of, mark, path, cyc_min, cyc_len)
    return cycle_of, cyc_min[:nc].copy(), cyc_len[:nc].copy()


def sweep_graph(int n, masks, thr_lo, thr_hi, bint v1_subset, tables):
    """Periods over every conformist threshold assignment x v1 rule x initial state.

    Vertex index 0 is v1 and takes its rule from ``tables`` (rows indexed by
    the count of +1 neighbours, or by the compressed pattern if ``v1_subset``).
    Conformist i ranges over thresholds thr_lo[i]..thr_hi[i]; the assignment
    index is mixed-radix with vertex 1 least significant.

    Returns (hist, first, patterns, n_configs): hist[p] counts (assignment,
    rule, state) tuples whose orbit ends on a p-cycle; first[p] is the first
    such (assignment index, rule index, state) or -1s; patterns is the set of
    (v1 opinion bits from the cycle's least state, period).
    """
    if n < 1 or n > SWEEP_MAX_N:
        raise ValueError(f"sweeps support 1 <= n <= {SWEEP_MAX_N}, got {n}")
    cdef uint32_t[:] m = np.ascontiguousarray(masks, dtype=np.uint32)
    cdef int64_t[:] lo = np.ascontiguousarray(thr_lo, dtype=np.int64)
    cdef int64_t[:] hi = np.ascontiguousarray(thr_hi, dtype=np.int64)
    cdef uint8_t[:, :] tab = np.ascontiguousarray(tables, dtype=np.uint8)
    cdef int64_t R = tab.shape[0]
    cdef int64_t S = (<int64_t>1) << n
    cdef int64_t s, i, rr, c, p, a_idx = 0, nconf = 0, nc
    cdef uint32_t u
    cdef uint64_t cbits
    cnt_arr = np.empty((n, S), dtype=np.int64)
    cdef int64_t[:, :] cnt = cnt_arr
    key_arr = np.empty(S, dtype=np.int64)
    cdef int64_t[:] key = key_arr
    for i in range(n):
        for s in range(S):
            cnt[i, s] = popcount32((<uint32_t>s) & m[i])
    for s in range(S):
        key[s] = compress(<uint32_t>s, m[0]) if v1_subset else cnt[0, s]
    if R > 0 and tab.shape[1] <= np.max(key_arr):
        raise ValueError("v1 rule tables are too short for the neighbourhood")

    r_arr = np.array(lo, dtype=np.int64)
    cdef int64_t[:] r = r_arr
    conf_arr = np.empty(S, dtype=np.uint32)
    cdef uint32_t[:] conf = conf_arr
    succ_arr = np.empty(S, dtype=np.uint32)
    cdef uint32_t[:] succ = succ_arr
    cycle_of = np.empty(S, dtype=np.int32)
    cdef int32_t[:] cof = cycle_of
    mark = np.empty(S, dtype=np.int64)
    path = np.empty(S, dtype=np.uint32)
    cmin_arr = np.empty(S, dtype=np.uint32)
    cdef uint32_t[:] cmin = cmin_arr
    clen_arr = np.empty(S, dtype=np.int64)
    cdef int64_t[:] clen = clen_arr
    hist_arr = np.zeros(S + 1, dtype=np.int64)
    cdef int64_t[:] hist = hist_arr
    first_arr = np.full((S + 1, 3), -1, dtype=np.int64)
    cdef int64_t[:, :] first = first_arr
    patterns = set()

    for i in range(1, n):
        if lo[i] > hi[i]:
            return hist_arr, first_arr, patterns, 0

    while True:
        for s in range(S):
            u = 0
            for i in range(1, n):
                if cnt[i, s] >= r[i]:
                    u |= (<uint32_t>1) << i
            conf[s] = u
        for rr in range(R):
            for s in range(S):
                succ[s] = conf[s] | tab[rr, key[s]]
            nc = _attractors(succ, S, cof, mark, path, cmin, clen)
            nconf += 1
            for s in range(S):
                p = clen[cof[s]]
                hist[p] += 1
                if first[p, 0] < 0:
                    first[p, 0] = a_idx
                    first[p, 1] = rr
                    first[p, 2] = s
            for c in range(nc):
                u = cmin[c]
                cbits = 0
                for p in range(clen[c]):
                    cbits |= (<uint64_t>(u & 1)) << p
                    u = succ[u]
                patterns.add((cbits, clen[c]))
        # odometer over conformist thresholds, vertex 1 fastest
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
    return hist_arr, first_arr, patterns, nconf
