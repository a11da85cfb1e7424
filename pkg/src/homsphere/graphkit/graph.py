"""Finite simple undirected graphs on ``0..n-1``."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np

from ..errors import Disconnected, InvalidGraph


class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    Edges are stored as sorted pairs.  Instances are treated as immutable.
    """

    def __init__(self, n: int, edges: Iterable = ()):
        n = int(n)
        if n < 0:
            raise InvalidGraph("negative vertex count")
        es = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidGraph(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u}, {v}) out of range for n={n}")
            es.add((min(u, v), max(u, v)))
        self.n = n
        self._edges = frozenset(es)

    @property
    def edges(self) -> frozenset:
        return self._edges

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edge_list)}

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb = [[] for _ in range(self.n)]
        for u, v in self._edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @property
    def m(self) -> int:
        return len(self._edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adj], dtype=int)

    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- metric ---------------------------------------------------------

    def bfs(self, source: int) -> np.ndarray:
        """Distances from ``source``; ``-1`` marks unreachable vertices."""
        dist = np.full(self.n, -1, dtype=int)
        dist[source] = 0
        q = deque([source])
        adj = self.adj
        while q:
            u = q.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def bfs_tree(self, root: int = 0) -> tuple[np.ndarray, np.ndarray]:
        """Parent array (root has parent -1) and depth array of a BFS tree."""
        parent = np.full(self.n, -1, dtype=int)
        depth = np.full(self.n, -1, dtype=int)
        depth[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            for w in self.adj[u]:
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    q.append(w)
        return parent, depth

    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances (``-1`` when unreachable)."""
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import shortest_path

        if self.n == 0:
            return np.zeros((0, 0), dtype=int)
        el = np.array(self.edge_list, dtype=int).reshape(-1, 2)
        a = csr_matrix(
            (np.ones(2 * len(el)), (np.r_[el[:, 0], el[:, 1]], np.r_[el[:, 1], el[:, 0]])),
            shape=(self.n, self.n),
        )
        d = shortest_path(a, unweighted=True, directed=False)
        d[np.isinf(d)] = -1
        return d.astype(int)

    def components(self) -> list[list[int]]:
        seen = np.zeros(self.n, dtype=bool)
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            d = self.bfs(s)
            comp = np.flatnonzero(d >= 0)
            seen[comp] = True
            out.append(comp.tolist())
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and bool((self.bfs(0) >= 0).all())

    def require_connected(self) -> None:
        if not self.is_connected():
            raise Disconnected("graph is not connected")

    def is_regular(self, k: int | None = None) -> bool:
        if self.n == 0:
            return True
        degs = self.degrees
        target = degs[0] if k is None else k
        return bool((degs == target).all())

    # -- matrices and conversions ----------------------------------------

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self._edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = sorted(g.nodes())
        ix = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), ((ix[u], ix[v]) for u, v in g.edges()))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        vs = sorted(set(vertices))
        ix = {v: i for i, v in enumerate(vs)}
        es = [(ix[u], ix[v]) for u, v in self._edges if u in ix and v in ix]
        return Graph(len(vs), es), vs

    def square(self) -> "Graph":
        """Graph joining vertices at distance 1 or 2."""
        es = set(self._edges)
        for v in range(self.n):
            nb = self.adj[v]
            for i, a in enumerate(nb):
                for b in nb[i + 1:]:
                    es.add((a, b))
        return Graph(self.n, es)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def random_regular_graph(deg: int, n: int, rng, connected: bool = True) -> Graph:
    """Uniform-ish random ``deg``-regular simple graph (networkx pairing model)."""
    rng = np.random.default_rng(rng)
    for _ in range(1000):
        seed = int(rng.integers(2**31))
        g = Graph.from_networkx(nx.random_regular_graph(deg, n, seed=seed))
        if not connected or g.is_connected():
            return g
    raise Disconnected(f"could not sample a connected {deg}-regular graph on {n} vertices")


def require_connected(g: Graph) -> None:
    g.require_connected()
