"""Rebuilding a closed pseudomanifold from its dual graph plus local labels.

For adjacent facets ``s, t`` the *missing vertex function* records which
position (under a global vertex order, 1-based) the vertex ``s \\ t`` takes
inside ``s``.  The dual graph together with that function determines the
complex: glue disjoint simplices along order-preserving identifications.
A distance-2 colouring of the dual graph lets each facet store its half of
the function so that it can be recovered from vertex colours alone.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .complex import Complex, dual_graph, is_closed_pseudomanifold
from .errors import (
    AmbiguousNeighbor,
    DuplicateFacet,
    InconsistentOrder,
    InvalidGraph,
    NotClosedPseudomanifold,
    QuotientDegenerate,
)
from .graphkit.graph import Graph


@dataclass
class MissingFunction:
    """``entries[(s, t)] = j``: ``s \\ t`` is the j-th smallest vertex of ``s``."""

    entries: dict[tuple[int, int], int]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key]

    def __contains__(self, key) -> bool:
        return key in self.entries

    def get(self, s: int, t: int, default=None):
        return self.entries.get((s, t), default)


@dataclass
class DualColoring:
    c0: list[int]
    c1: list[tuple[tuple[int, int], ...]]

    @property
    def c(self) -> list[tuple[int, tuple]]:
        return list(zip(self.c0, self.c1))

    @property
    def k0(self) -> int:
        return max(self.c0, default=0)


def _order_positions(m: Complex, order: Sequence[int] | None) -> dict[int, int]:
    if order is None:
        order = m.vertices
    order = [int(v) for v in order]
    if sorted(order) != list(m.vertices):
        raise ValueError("order must be a permutation of the vertices")
    return {v: i for i, v in enumerate(order)}


def facet_slots(m: Complex, order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Vertices of each facet listed in the given global order."""
    pos = _order_positions(m, order)
    return [tuple(sorted(f, key=pos.__getitem__)) for f in m.facets]


def missing_function(m: Complex, order: Sequence[int] | None = None) -> tuple[Graph, MissingFunction]:
    """Dual graph of ``m`` and its missing vertex function (facet ids = ``m.facets`` order)."""
    if not is_closed_pseudomanifold(m):
        raise NotClosedPseudomanifold("missing_function needs a closed pseudomanifold")
    slots = facet_slots(m, order)
    dg, _ = dual_graph(m)
    entries = {}
    for s, t in dg.edge_list:
        for a, b in ((s, t), (t, s)):
            (u,) = set(slots[a]) - set(slots[b])
            entries[(a, b)] = slots[a].index(u) + 1
    return dg, MissingFunction(entries)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def reconstruct(dg: Graph, mf: MissingFunction, d: int) -> Complex:
    """Glue one d-simplex per dual vertex along the identifications ``mf`` encodes.

    Slot ``i`` of facet ``s`` is the pair ``(s, i)``; across the edge
    ``{s, t}`` the slots of ``s`` other than ``mf[s, t]`` are matched in order
    with the slots of ``t`` other than ``mf[t, s]``.  Vertex classes are
    numbered in order of their first slot.
    """
    if dg.n == 0 or not dg.is_regular(d + 1):
        raise InvalidGraph(f"dual graph must be non-empty and {d + 1}-regular")
    dg.require_connected()
    uf = _UnionFind()
    slots = range(1, d + 2)
    for s in range(dg.n):
        for i in slots:
            uf.find((s, i))
    for s, t in dg.edge_list:
        a, b = mf.get(s, t), mf.get(t, s)
        if a is None or b is None:
            raise InvalidGraph(f"missing function undefined on edge ({s}, {t})")
        if not (1 <= a <= d + 1 and 1 <= b <= d + 1):
            raise InvalidGraph(f"missing index out of range on edge ({s}, {t})")
        for i, j in zip([x for x in slots if x != a], [x for x in slots if x != b]):
            uf.union((s, i), (t, j))
    roots = {}
    for s in range(dg.n):
        for i in slots:
            roots.setdefault(uf.find((s, i)), len(roots))
    facets = []
    for s in range(dg.n):
        f = [roots[uf.find((s, i))] for i in slots]
        if len(set(f)) != d + 1:
            raise QuotientDegenerate(f"facet {s} has a repeated vertex after gluing")
        facets.append(f)
    # slot order inside each facet must be compatible with one global order
    succ = {v: set() for v in range(len(roots))}
    indeg = {v: 0 for v in succ}
    for f in facets:
        for a, b in zip(f, f[1:]):
            if b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    q = deque(v for v, n in indeg.items() if n == 0)
    seen = 0
    while q:
        v = q.popleft()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                q.append(w)
    if seen != len(succ):
        raise InconsistentOrder("slot orders contradict each other")
    canon = [tuple(sorted(f)) for f in facets]
    if len(set(canon)) != len(canon):
        raise DuplicateFacet("two dual vertices glue to the same facet")
    return Complex(canon)


def slot_relabeling(m: Complex, order: Sequence[int] | None = None) -> dict[int, int]:
    """Map from :func:`reconstruct`'s vertex ids back to the vertices of ``m``.

    Used to compare a reconstruction with the original exactly.
    """
    slots = facet_slots(m, order)
    out = {}
    for f in slots:
        for v in f:
            if v not in out:
                out[v] = len(out)
    return {new: old for old, new in out.items()}


def distance2_coloring(g: Graph) -> list[int]:
    """Greedy proper colouring of the square of ``g`` in vertex order; colours from 1."""
    sq = g.square()
    col = [0] * g.n
    for v in range(g.n):
        used = {col[w] for w in sq.adj[v]}
        c = 1
        while c in used:
            c += 1
        col[v] = c
    return col


def dual_coloring(m: Complex, order: Sequence[int] | None = None) -> tuple[Graph, DualColoring]:
    dg, mf = missing_function(m, order)
    c0 = distance2_coloring(dg)
    c1 = [tuple(sorted((c0[w], mf[(v, w)]) for w in dg.adj[v])) for v in range(dg.n)]
    return dg, DualColoring(c0, c1)


def decode_dual_coloring(dg: Graph, col: DualColoring, d: int) -> Complex:
    if dg.n == 0 or not dg.is_regular(d + 1):
        raise InvalidGraph(f"dual graph must be non-empty and {d + 1}-regular")
    entries = {}
    for v in range(dg.n):
        table: dict[int, int] = {}
        for c, j in col.c1[v]:
            if c in table:
                raise AmbiguousNeighbor(f"vertex {v} lists colour {c} twice")
            table[c] = j
        nb_cols = [col.c0[w] for w in dg.adj[v]]
        if len(set(nb_cols)) != len(nb_cols):
            raise AmbiguousNeighbor(f"neighbours of {v} share a colour")
        for w in dg.adj[v]:
            if col.c0[w] not in table:
                raise AmbiguousNeighbor(f"vertex {v} has no entry for neighbour {w}")
            entries[(v, w)] = table[col.c0[w]]
    return reconstruct(dg, MissingFunction(entries), d)


# ---------------------------------------------------------------------------
# packing (c0, c1) into one positive integer


def palette_k(d: int) -> int:
    return (d + 1) ** 2 + 1


def pack_color(c0: int, c1: Sequence[tuple[int, int]], d: int) -> int:
    """Mixed-radix code of ``(c0, c1)``; at most ``k (k(d+1))^(d+1)`` values."""
    k = palette_k(d)
    if len(c1) != d + 1:
        raise ValueError(f"need {d + 1} neighbour entries")
    code = c0 - 1
    for c, j in c1:
        if not (1 <= c <= k and 1 <= j <= d + 1):
            raise ValueError("entry out of range")
        code = code * (k * (d + 1)) + (c - 1) * (d + 1) + (j - 1)
    return code + 1


def unpack_color(code: int, d: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    k = palette_k(d)
    code -= 1
    pairs = []
    for _ in range(d + 1):
        code, x = divmod(code, k * (d + 1))
        c, j = divmod(x, d + 1)
        pairs.append((c + 1, j + 1))
    return code + 1, tuple(reversed(pairs))


def sphere_to_graph(m: Complex, order: Sequence[int] | None = None) -> Graph:
    """Dual graph with each vertex's packed colour hung off it as pendant vertices."""
    from .graphkit.gadgets import pendant_color_encode

    d = m.dim
    dg, col = dual_coloring(m, order)
    k = palette_k(d)
    if col.k0 > k:
        raise ValueError(f"distance-2 colouring used {col.k0} > {k} colours")
    codes = [pack_color(a, b, d) for a, b in col.c]
    return pendant_color_encode(dg, codes)


def graph_to_sphere(g: Graph, d: int) -> Complex:
    from .graphkit.gadgets import pendant_color_decode

    dg, codes = pendant_color_decode(g)
    unpacked = [unpack_color(c, d) for c in codes]
    col = DualColoring([u[0] for u in unpacked], [u[1] for u in unpacked])
    return decode_dual_coloring(dg, col, d)
