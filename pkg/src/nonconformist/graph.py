"""Finite undirected graphs with optional loops.

Vertices are labelled 1..n externally; vertex 1 is always the nonconformist.
Internally each neighbourhood is an int bitmask with vertex ``i`` at bit ``i-1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

ENUMERATION_MAX_N = 6


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be >= 1, got {self.n}")
        if len(self.masks) != self.n:
            raise GraphError("one neighbourhood mask per vertex required")
        full = (1 << self.n) - 1
        for i, m in enumerate(self.masks):
            if m & ~full:
                raise GraphError(f"vertex {i + 1} has a neighbour outside 1..{self.n}")
            for j in iter_bits(m):
                if not self.masks[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i + 1} and {j + 1}")

    def neighbors(self, i: int) -> frozenset[int]:
        """N_i as a set of 1-based labels (contains ``i`` itself when looped)."""
        return frozenset(j + 1 for j in iter_bits(self.masks[i - 1]))

    def degree(self, i: int) -> int:
        return self.masks[i - 1].bit_count()

    def has_loop(self, i: int) -> bool:
        return bool(self.masks[i - 1] >> (i - 1) & 1)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.masks[i - 1] >> (j - 1) & 1)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.has_loop(i))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Non-loop edges as sorted pairs (i < j)."""
        return tuple(
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            if self.adjacent(i, j)
        )

    @property
    def loopless(self) -> bool:
        return not self.loops

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{", '  1 [shape=box];']
        lines += [f"  {i};" for i in range(2, self.n + 1)]
        lines += [f"  {i} -- {j};" for i, j in self.edges]
        lines += [f"  {i} -- {i};" for i in self.loops]
        lines.append("}")
        return "\n".join(lines) + "\n"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield 0-based indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_graph(n: int, edges: Iterable[tuple[int, int]] = (), loops: Iterable[int] = ()) -> Graph:
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    masks = [0] * n

    def check(v):
        if not 1 <= v <= n:
            raise GraphError(f"vertex {v} out of range 1..{n}")

    seen = set()
    for a, b in edges:
        check(a)
        check(b)
        if a == b:
            raise GraphError(f"edge ({a}, {b}) is a loop; list it under loops")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen.add(key)
        masks[a - 1] |= 1 << (b - 1)
        masks[b - 1] |= 1 << (a - 1)
    looped = set()
    for v in loops:
        check(v)
        if v in looped:
            raise GraphError(f"duplicate loop at {v}")
        looped.add(v)
        masks[v - 1] |= 1 << (v - 1)
    return Graph(n, tuple(masks))


def v1_neighborhood_independent(g: Graph) -> bool:
    """True iff no two distinct neighbours of vertex 1 are adjacent.

    Loops (at vertex 1 or at a neighbour) are ignored.
    """
    nbrs = g.masks[0] & ~1
    for j in iter_bits(nbrs):
        if g.masks[j] & nbrs & ~(1 << j):
            return False
    return True


GK_ATTACH = (0, 5)


def gen_gk(k: int, attach: tuple[int, int] = GK_ATTACH) -> Graph:
    """The graph G_k on 2k+8 vertices on which v1 can realise periods 2k and 2k+1.

    Vertex 1 is adjacent to 2..2k+2; vertices 2..k+2 are pendant, k+3..2k+2
    form a path. Triangles A = {2k+3, 2k+4, 2k+5} and B = {2k+6, 2k+7, 2k+8}
    are joined by edges (2k+4, 2k+6), (2k+5, 2k+7); the path ends attach via
    (k+3, 2k+3) and (2k+2, 2k+8).

    ``attach`` indexes the two path-end targets into A + B; the default is the
    wiring above, other values give the alternatives tried by the wiring search.
    """
    if k < 2:
        raise GraphError(f"G_k requires k >= 2, got {k}")
    if not all(0 <= a < 6 for a in attach):
        raise GraphError(f"attachment indices must lie in 0..5, got {attach}")
    n = 2 * k + 8
    edges = [(1, v) for v in range(2, 2 * k + 3)]
    edges += [(v, v + 1) for v in range(k + 3, 2 * k + 2)]
    tri_a = (2 * k + 3, 2 * k + 4, 2 * k + 5)
    tri_b = (2 * k + 6, 2 * k + 7, 2 * k + 8)
    for tri in (tri_a, tri_b):
        edges += list(itertools.combinations(tri, 2))
    edges += [(tri_a[1], tri_b[0]), (tri_a[2], tri_b[1])]
    block = tri_a + tri_b
    edges += [(k + 3, block[attach[0]]), (2 * k + 2, block[attach[1]])]
    return build_graph(n, edges)


def _hypercube(dim: int) -> Graph:
    n = 1 << dim
    edges = [(u + 1, (u ^ (1 << b)) + 1) for u in range(n) for b in range(dim) if u < u ^ (1 << b)]
    return build_graph(n, edges)


PRESETS: dict[str, Callable[[], Graph]] = {
    "single_edge": lambda: build_graph(2, [(1, 2)]),
    "k33": lambda: build_graph(6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]),
    "cube3": lambda: _hypercube(3),
}


def gen_preset(name: str) -> Graph:
    try:
        return PRESETS[name]()
    except KeyError:
        raise GraphError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def bipartition(g: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Two-colouring of a connected loopless graph, or None if not bipartite."""
    colour = {1: 0}
    stack = [1]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            if v not in colour:
                colour[v] = 1 - colour[u]
                stack.append(v)
            elif colour[v] == colour[u]:
                return None
    if len(colour) != g.n:
        return None
    return (
        frozenset(v for v, c in colour.items() if c == 0),
        frozenset(v for v, c in colour.items() if c == 1),
    )


def iter_graph_masks(n: int, loops: str = "none") -> Iterator[tuple[int, ...]]:
    """Raw neighbourhood masks of every labelled graph on n vertices.

    ``loops`` is ``"none"``, ``"all"`` (any loop subset) or ``"not_v1"``
    (loops anywhere except vertex 1). Edge subsets form the outer loop,
    loop subsets the inner one; both are in increasing bitmask order.
    """
    if loops not in ("none", "all", "not_v1"):
        raise GraphError(f"unknown loop mode {loops!r}")
    pairs = list(itertools.combinations(range(n), 2))
    if loops == "none":
        loop_sets = [0]
    elif loops == "all":
        loop_sets = range(1 << n)
    else:
        loop_sets = [m for m in range(1 << n) if not m & 1]
    for em in range(1 << len(pairs)):
        base = [0] * n
        for b, (i, j) in enumerate(pairs):
            if em >> b & 1:
                base[i] |= 1 << j
                base[j] |= 1 << i
        for lm in loop_sets:
            yield tuple(m | (lm & (1 << i)) for i, m in enumerate(base))


def enumerate_graphs(
    n: int,
    allow_loops: bool | str = False,
    constraint: Optional[Callable[[Graph], bool]] = None,
) -> Iterator[Graph]:
    """Every labelled graph on {1..n}, optionally filtered; n is capped at 6."""
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    if n > ENUMERATION_MAX_N:
        raise GraphError(f"exhaustive enumeration is capped at n <= {ENUMERATION_MAX_N}, got {n}")
    mode = allow_loops if isinstance(allow_loops, str) else ("all" if allow_loops else "none")
    for masks in iter_graph_masks(n, mode):
        g = Graph(n, masks)
        if constraint is None or constraint(g):
            yield g
