"""Closed walks, cycle-space spanning tests and short-class certificates."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import Disconnected, InvalidGraph
from ..linalg import gf_rank, require_prime
from .graph import Graph


@dataclass(frozen=True)
class Cycle:
    """A closed walk ``v0, v1, ..., v_{l-1}, v0`` stored without the repeat."""

    vertices: tuple[int, ...]

    def __init__(self, vertices: Iterable[int]):
        vs = tuple(int(v) for v in vertices)
        if len(vs) >= 2 and vs[0] == vs[-1]:
            vs = vs[:-1]
        if not vs:
            raise InvalidGraph("empty cycle")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def steps(self) -> list[tuple[int, int]]:
        """Directed steps of the walk, closing step included."""
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edges(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for a, b in self.steps()]

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices) and len(self.vertices) >= 3

    def check_in(self, g: Graph) -> None:
        for a, b in self.steps():
            if not g.has_edge(a, b):
                raise InvalidGraph(f"cycle step ({a}, {b}) is not an edge")


def cycle_vector(g: Graph, cyc: Cycle, p: int) -> np.ndarray:
    """Coefficient vector over GF(p); edges oriented from smaller to larger id."""
    vec = np.zeros(g.m, dtype=np.int64)
    ix = g.edge_index
    for a, b in cyc.steps():
        e = (min(a, b), max(a, b))
        if e not in ix:
            raise InvalidGraph(f"cycle step ({a}, {b}) is not an edge")
        vec[ix[e]] += 1 if a < b else -1
    return vec % p


def cycle_matrix(g: Graph, cycles: Sequence[Cycle], p: int) -> np.ndarray:
    if not cycles:
        return np.zeros((0, g.m), dtype=np.int64)
    return np.stack([cycle_vector(g, c, p) for c in cycles])


def cycle_space_dim(g: Graph) -> int:
    return g.m - g.n + len(g.components())


def edge_multiplicity(g: Graph, cycles: Sequence[Cycle]) -> Counter:
    """How often each edge is traversed, summed over all walks."""
    cnt: Counter = Counter()
    for c in cycles:
        cnt.update(c.edges())
    return cnt


@dataclass
class ShortCertificate:
    deg_max: int
    k: int
    L: float
    p: int
    cycles: list[Cycle]
    uniform: bool = False


@dataclass
class Verdict:
    valid: bool
    violations: list[str] = field(default_factory=list)
    rank: int = 0
    needed_rank: int = 0
    max_multiplicity: int = 0
    average_length: float = 0.0
    max_length: int = 0

    def __bool__(self) -> bool:
        return self.valid


def check_short(g: Graph, cert: ShortCertificate) -> Verdict:
    """Check the four short-class conditions and list every violation."""
    if not g.is_connected():
        raise Disconnected("check_short needs a connected graph")
    p = require_prime(cert.p)
    bad = []
    dmax = g.max_degree()
    if dmax > cert.deg_max:
        worst = int(np.argmax(g.degrees))
        bad.append(f"degree: vertex {worst} has degree {dmax} > {cert.deg_max}")
    cycles = list(cert.cycles)
    for i, c in enumerate(cycles):
        try:
            c.check_in(g)
        except InvalidGraph as exc:
            bad.append(f"cycle {i}: {exc}")
    if any(v.startswith("cycle ") for v in bad):
        return Verdict(False, bad)
    need = g.m - g.n + 1
    rank = gf_rank(cycle_matrix(g, cycles, p), p) if cycles and g.m else 0
    if rank != need:
        bad.append(f"span: rank {rank} over GF({p}) but cycle space has dimension {need}")
    mult = edge_multiplicity(g, cycles)
    mmax = max(mult.values(), default=0)
    for e, n in sorted(mult.items()):
        if n > cert.k:
            bad.append(f"multiplicity: edge {e} used {n} times > {cert.k}")
    lengths = [c.length for c in cycles]
    avg = float(np.mean(lengths)) if lengths else 0.0
    lmax = max(lengths, default=0)
    if cert.uniform:
        for i, n in enumerate(lengths):
            if n > cert.L:
                bad.append(f"length: cycle {i} has length {n} > {cert.L}")
    elif avg > cert.L:
        bad.append(f"length: average {avg:.4f} > {cert.L}")
    return Verdict(not bad, bad, rank, need, mmax, avg, lmax)


def _tree_path(parent: np.ndarray, depth: np.ndarray, u: int, v: int) -> list[int]:
    """Vertices of the tree path from ``u`` to ``v``."""
    left, right = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = int(parent[a])
        left.append(a)
    while depth[b] > depth[a]:
        b = int(parent[b])
        right.append(b)
    while a != b:
        a, b = int(parent[a]), int(parent[b])
        left.append(a)
        right.append(b)
    right.pop()
    return left + right[::-1]


def fundamental_cycle_basis(g: Graph, root: int = 0) -> list[Cycle]:
    """One cycle per non-tree edge of a BFS spanning tree, in edge order."""
    if not g.is_connected():
        raise Disconnected("fundamental_cycle_basis needs a connected graph")
    parent, depth = g.bfs_tree(root)
    out = []
    for u, v in g.edge_list:
        if parent[u] == v or parent[v] == u:
            continue
        out.append(Cycle(_tree_path(parent, depth, u, v)))
    return out
