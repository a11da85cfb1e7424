"""Filling the cycles of a graph with disks to get an acyclic 2-complex.

The graph is recovered from the filled complex by counting triangles per
edge: every graph edge carries ``T`` extra "flag" triangles, so graph edges
are exactly the edges lying in at least ``T`` triangles.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .complex import Complex
from .errors import EdgeOveruse, EmptyResult, InvalidGraph, MTooSmall, NotSpanning
from .graphkit.cycles import Cycle, cycle_vector, edge_multiplicity
from .graphkit.graph import Graph
from .linalg import gf_rank, require_prime


@dataclass
class DiskFillParams:
    p: int = 2
    deg_max: int = 3
    k: int = 1
    T: int | None = None

    def __post_init__(self):
        require_prime(self.p)
        if self.T is None:
            self.T = self.deg_max * (1 + 6 * self.k)

    @property
    def threshold(self) -> int:
        return int(self.T)


@dataclass
class Filled2Complex:
    complex: Complex
    graph_edges: list[tuple[int, int]]
    disk_map: dict[int, list[int]]
    flag_map: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    selected: list[int] = field(default_factory=list)
    T: int = 0
    n_graph_vertices: int = 0

    def without_flags(self) -> Complex:
        """The disks glued to the graph, before flag triangles are added."""
        flags = {w for ws in self.flag_map.values() for w in ws}
        keep = [f for f in self.complex.facets if not flags.intersection(f)]
        return Complex._trusted(keep)


def zigzag_disk(m: int) -> tuple[Complex, Cycle]:
    """Triangulated disk whose boundary is the induced cycle ``0, 1, ..., m-1``.

    The polygon is triangulated in a zigzag, then every interior edge is
    stellated (top to bottom), so no chord survives.  Interior vertices are
    numbered from ``m``.  For ``m = 3`` the disk is a cone over the triangle.
    """
    if m < 3:
        raise MTooSmall(f"need m >= 3, got {m}")
    if m == 3:
        return Complex([(0, 1, 3), (1, 2, 3), (0, 2, 3)]), Cycle(range(3))
    snake = []
    lo, hi = 0, m - 1
    while lo <= hi:
        snake.append(lo)
        if lo != hi:
            snake.append(hi)
        lo, hi = lo + 1, hi - 1
    tris = [snake[i:i + 3] for i in range(m - 2)]
    facets = {tuple(sorted(t)) for t in tris}
    nxt = m
    for i in range(1, m - 2):
        a, b = snake[i], snake[i + 1]
        touching = [f for f in facets if a in f and b in f]
        for f in touching:
            facets.discard(f)
            (apex,) = set(f) - {a, b}
            facets.add(tuple(sorted((a, apex, nxt))))
            facets.add(tuple(sorted((b, apex, nxt))))
        nxt += 1
    return Complex(facets), Cycle(range(m))


def _check_inputs(g: Graph, cycles: Sequence[Cycle], params: DiskFillParams) -> None:
    if not g.is_connected():
        raise InvalidGraph("graph must be connected")
    if g.max_degree() > params.deg_max:
        raise InvalidGraph(f"max degree {g.max_degree()} exceeds deg_max={params.deg_max}")
    for i, c in enumerate(cycles):
        c.check_in(g)
        if not c.is_simple():
            raise InvalidGraph(f"cycle {i} is not a simple cycle")
    mult = edge_multiplicity(g, cycles)
    over = [(e, n) for e, n in sorted(mult.items()) if n > params.k]
    if over:
        e, n = over[0]
        raise EdgeOveruse(f"edge {e} lies in {n} cycles > k={params.k}")


def select_spanning(g: Graph, cycles: Sequence[Cycle], p: int) -> list[int]:
    """Greedy rank-increasing subset of the cycles, in input order."""
    need = g.m - g.n + 1
    chosen, rows, rank = [], [], 0
    for i, c in enumerate(cycles):
        if rank == need:
            break
        v = cycle_vector(g, c, p)
        r = gf_rank(np.array(rows + [v]), p)
        if r > rank:
            chosen.append(i)
            rows.append(v)
            rank = r
    if rank < need:
        raise NotSpanning(f"cycles span rank {rank} < {need} over GF({p})")
    return chosen


def fill_cycles(g: Graph, cycles: Sequence[Cycle], params: DiskFillParams) -> Filled2Complex:
    """Glue a zigzag disk into a spanning subset of ``cycles``, then add flags.

    Graph vertices keep their ids; disk interiors and then flags get fresh
    consecutive ids.
    """
    cycles = list(cycles)
    _check_inputs(g, cycles, params)
    T = params.threshold
    if T < 3:
        raise ValueError("threshold T must be at least 3 to separate graph edges")
    chosen = select_spanning(g, cycles, params.p)
    facets = []
    disk_map = {}
    nxt = g.n
    for j in chosen:
        cyc = cycles[j].vertices
        m = len(cyc)
        disk, _ = zigzag_disk(m)
        ren = {i: cyc[i] for i in range(m)}
        interior = [v for v in disk.vertices if v >= m]
        for v in interior:
            ren[v] = nxt
            nxt += 1
        disk_map[j] = [ren[v] for v in interior]
        facets += [tuple(sorted(ren[v] for v in f)) for f in disk.facets]
    flag_map = {}
    for u, v in g.edge_list:
        flag_map[(u, v)] = list(range(nxt, nxt + T))
        facets += [(u, v, w) for w in range(nxt, nxt + T)]
        nxt += T
    cx = Complex._trusted(facets) if facets else Complex([[v] for v in range(g.n)])
    return Filled2Complex(cx, list(g.edge_list), disk_map, flag_map, chosen, T, g.n)


def triangle_counts(c: Complex) -> Counter:
    cnt: Counter = Counter()
    for f in c.facets:
        if len(f) == 3:
            a, b, d = f
            cnt.update(((a, b), (a, d), (b, d)))
    return cnt


def recover_graph(f: Complex, T: int) -> Graph:
    """Graph on the edges lying in at least ``T`` triangles.

    Vertices are renumbered ``0..n-1`` in increasing id order; for outputs of
    :func:`fill_cycles` this is the identity on the original graph.
    """
    cnt = triangle_counts(f)
    heavy = sorted(e for e, n in cnt.items() if n >= T)
    if not heavy:
        raise EmptyResult(f"no edge lies in {T} or more triangles")
    verts = sorted({v for e in heavy for v in e})
    ix = {v: i for i, v in enumerate(verts)}
    return Graph(len(verts), ((ix[a], ix[b]) for a, b in heavy))


def inclusion_relation(filled: Filled2Complex, cycles: Sequence[Cycle]) -> list[tuple[int, int]]:
    """Pairs (graph vertex, complex vertex) relating each added vertex to its anchors.

    Graph vertices relate to themselves, disk interiors to every vertex of
    their cycle, and flags to both endpoints of their edge.
    """
    pairs = [(v, v) for v in range(filled.n_graph_vertices)]
    for j, interior in filled.disk_map.items():
        for x in cycles[j].vertices:
            pairs += [(x, w) for w in interior]
    for (u, v), ws in filled.flag_map.items():
        pairs += [(u, w) for w in ws] + [(v, w) for w in ws]
    return pairs
