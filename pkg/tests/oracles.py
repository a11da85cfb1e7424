"""Independent reference implementations used as test oracles.

These are deliberately naive (dense, exhaustive, pure Python) and share no
code with the library, so agreement between the two is meaningful.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def dense_rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Gaussian elimination on a list-of-lists matrix over GF(p)."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    n_cols = len(a[0])
    rank = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def simplices_of(facets) -> dict[int, list[tuple]]:
    out: dict[int, set] = {}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            for s in itertools.combinations(f, k):
                out.setdefault(k - 1, set()).add(s)
    return {k: sorted(v) for k, v in out.items()}


def betti_dense(facets, p: int) -> tuple[int, ...]:
    """Betti numbers from explicitly written dense boundary matrices."""
    faces = simplices_of(facets)
    top = max(faces)
    ranks = {}
    for k in range(1, top + 1):
        rows_ix = {s: i for i, s in enumerate(faces[k - 1])}
        mat = [[0] * len(faces[k]) for _ in faces[k - 1]]
        for j, s in enumerate(faces[k]):
            for i in range(len(s)):
                mat[rows_ix[s[:i] + s[i + 1:]]][j] = (-1) ** i
        ranks[k] = dense_rank_mod_p(mat, p)
    out = []
    for k in range(top + 1):
        zk = len(faces[k]) - ranks.get(k, 0)
        bk = ranks.get(k + 1, 0)
        out.append(zk - bk)  # d_0 is the zero map, so b_0 = #vertices - rank d_1
    return tuple(out)


def bfs_dist(adj: dict[int, set], s: int) -> dict[int, int]:
    dist = {s: 0}
    q = deque([s])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def adjacency_sets(n: int, edges) -> dict[int, set]:
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def cheeger_brute(n: int, edges) -> Fraction:
    """min |boundary S| / |S| over nonempty S with |S| <= n/2."""
    best = None
    for k in range(1, n // 2 + 1):
        for s in itertools.combinations(range(n), k):
            ss = set(s)
            cut = sum((u in ss) != (v in ss) for u, v in edges)
            val = Fraction(cut, k)
            if best is None or val < best:
                best = val
    return best


def is_connected(n: int, edges) -> bool:
    if n == 0:
        return True
    return len(bfs_dist(adjacency_sets(n, edges), 0)) == n


def free_face_collapse(facets) -> list[tuple]:
    """Plain greedy collapse on the full face poset; returns what survives."""
    faces = set()
    for k, fs in simplices_of(facets).items():
        faces.update(fs)
    changed = True
    while changed:
        changed = False
        for f in sorted(faces, key=len):
            cof = [g for g in faces if len(g) == len(f) + 1 and set(f) < set(g)]
            if len(cof) == 1:
                faces.discard(f)
                faces.discard(cof[0])
                changed = True
                break
    return sorted(faces)
