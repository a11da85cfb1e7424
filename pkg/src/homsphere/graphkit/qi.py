"""Checker for relations that witness a quasi-isometry between two graphs.

A relation ``R`` between the vertex sets of connected graphs ``X`` and ``Y``
certifies a quasi-isometry when

1. every vertex of either graph is related to something,
2. ``d(x, x') <= c`` with ``x R y`` and ``x' R y'`` forces ``d(y, y') <= M``,
3. the same with the roles of ``X`` and ``Y`` swapped.

Connected graphs are (1, 1) quasi-geodesic, so a choice function
``f(x) in R(x)`` then satisfies ``d(f(x), f(x')) <= M d(x, x') + M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from ..errors import ConditionViolated
from .graph import Graph

_BATCH = 256


@dataclass
class QIRelation:
    pairs: set[tuple[int, int]]
    c: int = 1
    M: int | None = None

    def __init__(self, pairs: Iterable[tuple[int, int]], c: int = 1, M: int | None = None):
        self.pairs = {(int(x), int(y)) for x, y in pairs}
        self.c = int(c)
        self.M = M


@dataclass
class QIReport:
    M: int
    cond2: int
    cond3: int
    f: dict[int, int]
    pair_bound_ok: bool
    worst_pair: tuple[int, int] | None = None
    density: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pair_bound_ok


def _csr(g: Graph) -> csr_matrix:
    el = np.array(g.edge_list, dtype=np.int64).reshape(-1, 2)
    data = np.ones(2 * len(el))
    return csr_matrix(
        (data, (np.r_[el[:, 0], el[:, 1]], np.r_[el[:, 1], el[:, 0]])), shape=(g.n, g.n)
    )


def _distance_rows(g: Graph, sources: list[int], limit: float = np.inf):
    """Yield ``(source_batch, dist)`` with hop distances from each source."""
    a = _csr(g)
    for i in range(0, len(sources), _BATCH):
        batch = sources[i:i + _BATCH]
        d = dijkstra(a, directed=False, unweighted=True, indices=batch, limit=limit)
        yield batch, d


def _twin_classes(g: Graph, rel: list[list[int]]) -> tuple[np.ndarray, np.ndarray, Graph]:
    """Merge false twins: same open neighbourhood and same related set.

    Distinct twins sit at distance 2 (their shared neighbourhood is
    non-empty in a connected graph with n > 1) and every other distance is
    unchanged after dropping all but one twin, so every quantity the checker
    needs can be read off the quotient.  Returns ``(cls, sizes, quotient)``.
    """
    keys: dict = {}
    cls = np.empty(g.n, dtype=np.int64)
    reps = []
    for v in range(g.n):
        key = (g.adj[v], tuple(sorted(rel[v])))
        if key not in keys:
            keys[key] = len(reps)
            reps.append(v)
        cls[v] = keys[key]
    sizes = np.bincount(cls, minlength=len(reps))
    q, _ = g.induced(reps)
    return cls, sizes, q


def _class_rows(q: Graph, sizes: np.ndarray, sources, limit: float = np.inf):
    """Distance rows on the quotient, with the in-class distance patched in."""
    for batch, d in _distance_rows(q, list(sources), limit=limit):
        for s, row in zip(batch, d):
            row[s] = 2.0 if sizes[s] > 1 else 0.0
        yield batch, d


def _side_bound(qx: Graph, sx: np.ndarray, qy: Graph, sy: np.ndarray,
                rel_xy: list[np.ndarray], rel_yx: list[np.ndarray], c: int):
    """max d_Y(y, y') over x R y, x' R y', d_X(x, x') <= c, on twin classes."""
    near_x = [None] * qx.n
    for batch, d in _class_rows(qx, sx, range(qx.n), limit=c):
        for s, row in zip(batch, d):
            near_x[s] = np.flatnonzero(row <= c)
    best, witness = 0, None
    for batch, d in _class_rows(qy, sy, range(qy.n)):
        for y, row in zip(batch, d):
            xs = rel_yx[y]
            xprime = np.unique(np.concatenate([near_x[x] for x in xs]))
            targets = np.unique(np.concatenate([rel_xy[x] for x in xprime]))
            vals = row[targets]
            j = int(np.argmax(vals))
            val = vals[j]
            if np.isinf(val):
                return np.inf, (y, int(targets[j]))
            if val > best:
                best, witness = int(val), (y, int(targets[j]))
    return best, witness


def qi_check(x: Graph, y: Graph, r: QIRelation) -> QIReport:
    """Verify the three relation conditions and report the least valid ``M``.

    If ``r.M`` is set, conditions 2 and 3 are checked against it and a
    :class:`ConditionViolated` is raised with a witness when either fails.
    Otherwise the smallest ``M >= 1`` that works is computed.
    """
    if r.c < 1:
        raise ValueError("c must be at least 1")
    for name, g in (("x", x), ("y", y)):
        if not g.is_connected():
            raise ValueError(f"{name} graph is not connected")
    rel_xy = [[] for _ in range(x.n)]
    rel_yx = [[] for _ in range(y.n)]
    for a, b in sorted(r.pairs):
        if not (0 <= a < x.n and 0 <= b < y.n):
            raise ValueError(f"pair ({a}, {b}) out of range")
        rel_xy[a].append(b)
        rel_yx[b].append(a)
    for a in range(x.n):
        if not rel_xy[a]:
            raise ConditionViolated(1, ("x", a))
    for b in range(y.n):
        if not rel_yx[b]:
            raise ConditionViolated(1, ("y", b))

    cx, sx, qx = _twin_classes(x, rel_xy)
    cy, sy, qy = _twin_classes(y, rel_yx)
    qrel_xy = [set() for _ in range(qx.n)]
    qrel_yx = [set() for _ in range(qy.n)]
    for a, b in r.pairs:
        qrel_xy[cx[a]].add(int(cy[b]))
        qrel_yx[cy[b]].add(int(cx[a]))
    qrel_xy = [np.array(sorted(t), dtype=np.int64) for t in qrel_xy]
    qrel_yx = [np.array(sorted(t), dtype=np.int64) for t in qrel_yx]
    rep_of_y = np.zeros(qy.n, dtype=np.int64)
    rep_of_x = np.zeros(qx.n, dtype=np.int64)
    for v in range(y.n - 1, -1, -1):
        rep_of_y[cy[v]] = v
    for v in range(x.n - 1, -1, -1):
        rep_of_x[cx[v]] = v
    c2, w2 = _side_bound(qx, sx, qy, sy, qrel_xy, qrel_yx, r.c)
    c3, w3 = _side_bound(qy, sy, qx, sx, qrel_yx, qrel_xy, r.c)
    if w2 is not None:
        w2 = (int(rep_of_y[w2[0]]), int(rep_of_y[w2[1]]))
    if w3 is not None:
        w3 = (int(rep_of_x[w3[0]]), int(rep_of_x[w3[1]]))
    if r.M is not None:
        if c2 > r.M:
            raise ConditionViolated(2, w2)
        if c3 > r.M:
            raise ConditionViolated(3, w3)
        M = int(r.M)
    else:
        M = max(int(c2), int(c3), 1)

    f = {a: min(rel_xy[a]) for a in range(x.n)}
    fx = np.array([f[a] for a in range(x.n)], dtype=np.int64)
    ok, worst, worst_slack = True, None, None
    ay = _csr(y)
    for batch, dx in _distance_rows(x, list(range(x.n))):
        dy = dijkstra(ay, directed=False, unweighted=True, indices=fx[batch])[:, fx]
        slack = M * dx + M - dy
        i, j = np.unravel_index(int(np.argmin(slack)), slack.shape)
        if worst_slack is None or slack[i, j] < worst_slack:
            worst_slack, worst = slack[i, j], (int(batch[i]), int(j))
        if slack[i, j] < 0:
            ok = False
    # coarse density of the image: every y lies within M of some f(x)
    d_img = dijkstra(ay, directed=False, unweighted=True,
                     indices=np.unique(fx), min_only=True)
    dens = int(np.max(d_img))
    notes = []
    if dens > M:
        notes.append(f"image density {dens} exceeds M={M}")
    return QIReport(M, int(c2), int(c3), f, ok, worst, dens, notes)
