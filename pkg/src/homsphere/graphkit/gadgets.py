"""Degree-reducing gadgets and pendant-vertex colour encodings."""

from __future__ import annotations

from typing import Mapping

from ..errors import AmbiguousGadgets, DegreeTooLow, NoPendants, NotFourRegular
from .cycles import Cycle
from .graph import Graph


def four_to_three(g: Graph) -> tuple[Graph, dict[int, tuple[int, int, int, int]]]:
    """Replace every vertex of a 4-regular graph by a 4-cycle.

    Vertex ``v`` becomes corners ``4v .. 4v+3`` joined in that cyclic order;
    the half-edge towards the ``i``-th smallest neighbour is attached to corner
    ``4v+i``.  Returns the cubic graph and ``v -> corners``.
    """
    if g.n == 0 or not g.is_regular(4):
        raise NotFourRegular("input must be a non-empty 4-regular graph")
    g.require_connected()
    edges = []
    gadget = {}
    for v in range(g.n):
        corners = tuple(4 * v + i for i in range(4))
        gadget[v] = corners
        edges += [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    for u, v in g.edge_list:
        edges.append((4 * u + g.adj[u].index(v), 4 * v + g.adj[v].index(u)))
    return Graph(4 * g.n, edges), gadget


def gadget_cycle_image(g: Graph, cyc: Cycle) -> Cycle:
    """Image under :func:`four_to_three` of a closed walk in ``g``.

    Inside each gadget the walk takes a shortest route around the 4-cycle.
    """
    vs = cyc.vertices
    out = []
    n = len(vs)
    for i in range(n):
        prev, v, nxt = vs[i - 1], vs[i], vs[(i + 1) % n]
        a, b = g.adj[v].index(prev), g.adj[v].index(nxt)
        step = 1 if (b - a) % 4 <= 2 else -1
        j = a
        out.append(4 * v + j)
        while j != b:
            j = (j + step) % 4
            out.append(4 * v + j)
    return Cycle(out)


def _four_cycles(g: Graph) -> set[frozenset]:
    """All 4-cycles, each as its frozenset of edges."""
    found = set()
    adj = g.adj
    for a in range(g.n):
        nb = adj[a]
        for i, u in enumerate(nb):
            for w in nb[i + 1:]:
                for c in set(adj[u]).intersection(adj[w]):
                    if c == a:
                        continue
                    es = frozenset(
                        (min(x, y), max(x, y)) for x, y in ((a, u), (u, c), (c, w), (w, a))
                    )
                    found.add(es)
    return found


def three_to_four_decode(g: Graph) -> Graph:
    """Contract the 4-cycles of a gadget graph back to vertices.

    The 4-cycles must be induced and partition the vertex set; gadgets are
    numbered by their smallest vertex.
    """
    cycles = _four_cycles(g)
    owner = {}
    for es in cycles:
        vs = {x for e in es for x in e}
        for v in vs:
            if v in owner:
                raise AmbiguousGadgets(f"vertex {v} lies on more than one 4-cycle")
            owner[v] = vs
        for x in vs:
            for y in vs:
                if x < y and g.has_edge(x, y) and (x, y) not in es:
                    raise AmbiguousGadgets(f"4-cycle on {sorted(vs)} has a chord")
    if len(owner) != g.n or not cycles:
        raise AmbiguousGadgets("4-cycles do not cover every vertex")
    reps = sorted({min(vs) for vs in owner.values()})
    ix = {r: i for i, r in enumerate(reps)}
    label = {v: ix[min(vs)] for v, vs in owner.items()}
    edges = []
    for u, v in g.edge_list:
        a, b = label[u], label[v]
        if a != b:
            edges.append((min(a, b), max(a, b)))
    if len(set(edges)) != len(edges):
        raise AmbiguousGadgets("contraction creates parallel edges")
    out = Graph(len(reps), edges)
    if not out.is_regular(4):
        raise AmbiguousGadgets("contracted graph is not 4-regular")
    return out


def pendant_color_encode(g: Graph, coloring) -> Graph:
    """Hang ``coloring[v]`` new degree-one vertices off each vertex ``v``.

    New vertices get ids ``n, n+1, ...`` in vertex order.
    """
    if g.n and g.degrees.min() < 2:
        raise DegreeTooLow("every vertex needs degree at least 2")
    cols = _as_list(coloring, g.n)
    if any(c < 1 for c in cols):
        raise ValueError("colours must be positive integers")
    edges = list(g.edge_list)
    nxt = g.n
    for v, c in enumerate(cols):
        for _ in range(c):
            edges.append((v, nxt))
            nxt += 1
    return Graph(nxt, edges)


def pendant_color_decode(g: Graph) -> tuple[Graph, list[int]]:
    """Strip degree-one vertices; their count per vertex is its colour."""
    degs = g.degrees
    core = [v for v in range(g.n) if degs[v] >= 2]
    if not core:
        raise NoPendants("no vertex of degree at least 2")
    count = {v: 0 for v in core}
    for v in range(g.n):
        if degs[v] == 1:
            (w,) = g.adj[v]
            if w in count:
                count[w] += 1
    for v in core:
        if count[v] == 0:
            raise NoPendants(f"vertex {v} has no pendant neighbour")
    h, order = g.induced(core)
    return h, [count[v] for v in order]


def _as_list(coloring, n: int) -> list[int]:
    if isinstance(coloring, Mapping):
        return [int(coloring[v]) for v in range(n)]
    cols = [int(c) for c in coloring]
    if len(cols) != n:
        raise ValueError(f"expected {n} colours, got {len(cols)}")
    return cols
