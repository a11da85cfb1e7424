"""Encoding facet colourings of closed manifolds in the triangulation itself.

Encoding takes the second barycentric subdivision ``B = b(b(K))`` and
replaces each facet of ``B`` by a stellated disk from a fixed palette.  The
palette member records the pair (colour of the ``K``-facet the ``B``-facet
refines, dimension of the ``K``-face whose barycenter is the ``B``-facet's
unique vertex coming from ``b(K)``).

Decoding undoes the stellations greedily, reads the pairs off the facet
counts, and strips both subdivisions using the recovered dimension data.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import networkx as nx
import numpy as np

from .complex import (
    Complex,
    barycentric,
    is_closed_pseudomanifold,
    link,
    stellate_facet,
)
from .errors import (
    InconsistentLabels,
    InvalidComplex,
    NotManifoldLike,
    PropagationConflict,
    StuckCollapse,
    TooManyColors,
    UnknownPaletteSize,
    ValidationFailed,
)


@dataclass
class ColoredComplex:
    complex: Complex
    colors: dict[tuple, int]

    def __post_init__(self):
        cols = {tuple(sorted(f)): int(c) for f, c in dict(self.colors).items()}
        missing = [f for f in self.complex.facets if f not in cols]
        if missing:
            raise InvalidComplex(f"facet {missing[0]} has no colour")
        extra = set(cols) - set(self.complex.facets)
        if extra:
            raise InvalidComplex(f"colour given for non-facet {sorted(extra)[0]}")
        self.colors = cols

    @property
    def dim(self) -> int:
        return self.complex.dim


@dataclass(frozen=True)
class Palette:
    d: int
    members: tuple[Complex, ...]  # members[i] has i stellations, i = 0..count

    def __getitem__(self, i: int) -> Complex:
        return self.members[i]

    def __len__(self) -> int:
        return len(self.members) - 1


@lru_cache(maxsize=None)
def _palette_members(d: int, count: int) -> tuple[Complex, ...]:
    c = Complex([range(d + 1)])
    out = [c]
    for _ in range(count):
        c = stellate_facet(c, c.facets[0])
        out.append(c)
    return tuple(out)


def palette(d: int, count: int) -> Palette:
    """Disks ``1..count`` obtained by repeatedly stellating the smallest facet.

    Member ``i`` lives on vertices ``0..d`` (its boundary) plus ``d+1..d+i``
    and has ``1 + i*d`` facets.
    """
    if d < 1 or count < 1:
        raise ValueError("need d >= 1 and count >= 1")
    return Palette(d, _palette_members(d, count))


def member_index(color: int, dim: int, d: int) -> int:
    """Palette member used for the label ``(color, dim)``; colours start at 1."""
    return (color - 1) * (d + 1) + dim + 1


def blowup_bound(d: int, r: int) -> int:
    """Facet multiplication bound ``((d+1)!)^2 (1 + r(d+1)d)``."""
    return math.factorial(d + 1) ** 2 * (1 + r * (d + 1) * d)


# ---------------------------------------------------------------------------
# manifold sanity checks


def is_homology_manifold_like(c: Complex) -> bool:
    """Closed pseudomanifold whose vertex links look like (d-1)-spheres.

    Checks that each vertex link is a connected closed pseudomanifold with
    the Euler characteristic of a sphere.  Sufficient at the sizes used here.
    """
    d = c.dim
    if d < 1 or not is_closed_pseudomanifold(c):
        return False
    sphere_chi = 1 + (-1) ** (d - 1)
    for v in c.vertices:
        lk = link(c, [v])
        if d == 1:
            if len(lk.facets) != 2:
                return False
            continue
        if not is_closed_pseudomanifold(lk):
            return False
        g, _ = lk.skeleton_graph()
        if not g.is_connected() or lk.euler_characteristic() != sphere_chi:
            return False
    return True


def min_vertex_degree(c: Complex) -> int:
    g, _ = c.skeleton_graph()
    return int(g.degrees.min()) if g.n else 0


# ---------------------------------------------------------------------------
# encoding


def encode(x: ColoredComplex, r: int) -> Complex:
    """Subdivide ``x`` so that the colouring can be read back from the result."""
    k = x.complex
    d = k.dim
    if d < 2:
        raise NotManifoldLike("encoding needs dimension at least 2")
    if not is_homology_manifold_like(k):
        raise NotManifoldLike("input is not a closed homology manifold")
    bad = [c for c in x.colors.values() if not 1 <= c <= r]
    if bad:
        raise TooManyColors(f"colour {bad[0]} outside 1..{r}")
    a, pa = barycentric(k)
    b, pb = barycentric(a)
    pal = palette(d, r * (d + 1))
    nxt = max(b.vertices) + 1
    out = []
    for tau in b.facets:
        (low,) = [w for w in tau if len(pb.vertex_origin[w]) == 1]
        sigma = pa.vertex_origin[pb.vertex_origin[low][0]]
        alpha = pb.facet_origin[tau]
        color = x.colors[pa.facet_origin[alpha]]
        member = pal[member_index(color, len(sigma) - 1, d)]
        ren = dict(enumerate(tau))
        for v in range(d + 1, len(member.vertices)):
            ren[v] = nxt
            nxt += 1
        out += [tuple(sorted(ren[v] for v in f)) for f in member.facets]
    return Complex._trusted(out)


# ---------------------------------------------------------------------------
# decoding


def greedy_reverse_stellation(y: Complex, rng=None) -> tuple[Complex, dict[tuple, int]]:
    """Reverse facet stellations while any vertex allows one.

    Returns the reduced complex and, per remaining facet, how many facets of
    ``y`` were merged into it.  Visiting order is ascending vertex id, or a
    random permutation when ``rng`` is given.
    """
    d = y.dim
    counts = {f: 1 for f in y.facets}
    vstar: dict[int, set] = {}
    for f in y.facets:
        for v in f:
            vstar.setdefault(v, set()).add(f)
    order = list(y.vertices)
    if rng is not None:
        order = list(np.random.default_rng(rng).permutation(order))
    queue = deque(order)
    queued = set(order)
    while queue:
        v = queue.popleft()
        queued.discard(v)
        st = vstar.get(v)
        if st is None or len(st) != d + 1:
            continue
        nb = set().union(*st)
        nb.discard(v)
        if len(nb) != d + 1:
            continue
        new = tuple(sorted(nb))
        if new in counts:
            continue
        total = 0
        for f in st:
            total += counts.pop(f)
            for u in f:
                if u != v:
                    vstar[u].discard(f)
        del vstar[v]
        counts[new] = total
        for u in new:
            vstar[u].add(new)
            if u not in queued:
                queued.add(u)
                queue.append(u)
    return Complex._trusted(counts.keys()), counts


def dim_classes(b: Complex, d: int | None = None) -> list[list[int]]:
    """Partition the vertices of a balanced complex into its colour classes.

    A seed facet gets classes ``0..d`` in vertex order; crossing a ridge,
    the one new vertex must take the class that is missing.  Conflicts mean
    the complex is not balanced (in particular not a barycentric subdivision).
    """
    if d is not None and d != b.dim:
        raise PropagationConflict(f"complex has dimension {b.dim}, expected {d}")
    if not b.facets or not b.is_pure:
        raise PropagationConflict("need a non-empty pure complex")
    d = b.dim
    full = set(range(d + 1))
    cls: dict[int, int] = {}
    seen = set()
    for start in b.facets:
        if start in seen:
            continue
        if any(v in cls for v in start):
            known = {cls[v] for v in start if v in cls}
            unknown = [v for v in start if v not in cls]
            if len(known) + len(unknown) != d + 1 or len(unknown) > 1:
                raise PropagationConflict(f"cannot seed at {start}")
            for v in unknown:
                (cls[v],) = full - known
        else:
            for i, v in enumerate(start):
                cls[v] = i
        seen.add(start)
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for i in range(len(f)):
                ridge = f[:i] + f[i + 1:]
                for j in b.ridge_facets[ridge]:
                    g = b.facets[j]
                    (w,) = set(g) - set(ridge)
                    (want,) = full - {cls[u] for u in ridge}
                    if w in cls:
                        if cls[w] != want:
                            raise PropagationConflict(f"vertex {w} needs two classes")
                    else:
                        cls[w] = want
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
    for f in b.facets:
        if len({cls[v] for v in f}) != d + 1:
            raise PropagationConflict(f"facet {f} repeats a class")
    out = [[] for _ in range(d + 1)]
    for v in sorted(cls):
        out[cls[v]].append(v)
    return out


def debarycentrize(b: Complex, labels: Mapping[int, int]) -> tuple[Complex, dict[int, tuple]]:
    """Recover ``K`` from ``b(K)`` given each vertex's face dimension.

    Vertices of ``K`` are the label-0 vertices of ``b`` (same ids).  Returns
    ``K`` and the map from each vertex of ``b`` to the face it is the
    barycenter of.
    """
    d = b.dim
    lab = {v: int(labels[v]) for v in b.vertices}
    for f in b.facets:
        if sorted(lab[v] for v in f) != list(range(len(f))):
            raise InconsistentLabels(f"facet {f} is not labelled 0..{len(f) - 1}")
    down: dict[int, set[int]] = {v: ({v} if lab[v] == 0 else set()) for v in b.vertices}
    for f in b.facets:
        zero = [v for v in f if lab[v] == 0][0]
        for v in f:
            down[v].add(zero)
    face_of = {}
    for v, s in down.items():
        if len(s) != lab[v] + 1:
            raise InconsistentLabels(
                f"vertex {v} with label {lab[v]} lies over {len(s)} label-0 vertices"
            )
        face_of[v] = tuple(sorted(s))
    if len(set(face_of.values())) != len(face_of):
        raise ValidationFailed("two vertices map to the same face")
    top = [face_of[v] for v in b.vertices if lab[v] == d]
    try:
        k = Complex(top)
    except InvalidComplex as exc:
        raise ValidationFailed(str(exc)) from exc
    # b must be exactly the flag complex of k under v -> face_of[v]
    all_faces = set(k.all_faces())
    if set(face_of.values()) != all_faces:
        raise ValidationFailed("barycenters do not match the faces of the result")
    flags = set()
    for f in b.facets:
        chain = sorted((face_of[v] for v in f), key=len)
        for lo, hi in zip(chain, chain[1:]):
            if not set(lo) < set(hi):
                raise ValidationFailed(f"facet {f} is not a flag")
        flags.add(tuple(chain))
    expected = len(k.facets) * math.factorial(d + 1)
    if len(flags) != len(b.facets) or len(b.facets) != expected:
        raise ValidationFailed("flag count mismatch")
    return k, face_of


def _assign_dimensions(b: Complex, classes: list[list[int]]):
    """Try every class-to-dimension assignment; return the first that validates."""
    d = b.dim
    last = None
    for perm in itertools.permutations(range(d + 1)):
        labels = {v: perm[i] for i, cl in enumerate(classes) for v in cl}
        try:
            k, face_of = debarycentrize(b, labels)
        except (InconsistentLabels, ValidationFailed) as exc:
            last = exc
            continue
        return labels, k, face_of
    raise InconsistentLabels(f"no dimension assignment validates ({last})")


def decode(y: Complex, d: int, r: int, rng=None) -> ColoredComplex:
    """Left inverse of :func:`encode` (up to isomorphism)."""
    if y.dim != d:
        raise StuckCollapse(f"complex has dimension {y.dim}, expected {d}")
    b, counts = greedy_reverse_stellation(y, rng=rng)
    gb, _ = b.skeleton_graph()
    if gb.n and gb.degrees.min() < d + 2:
        raise StuckCollapse("reduced complex still has a vertex of degree <= d+1")
    n_members = r * (d + 1)
    pair = {}
    for f, s in counts.items():
        i, rem = divmod(s - 1, d)
        if rem or not 1 <= i <= n_members:
            raise UnknownPaletteSize(f"facet block of size {s} is not a palette member")
        c, dim = divmod(i - 1, d + 1)
        pair[f] = (c + 1, dim)

    classes = dim_classes(b, d)
    blabels, a, a_face = _assign_dimensions(b, classes)

    # dimension label of each vertex of a: read off the B-facets around it
    alabel: dict[int, int] = {}
    for f in b.facets:
        (low,) = [v for v in f if blabels[v] == 0]
        dim = pair[f][1]
        if alabel.setdefault(low, dim) != dim:
            raise InconsistentLabels(f"vertex {low} carries two dimensions")
    k, k_face = debarycentrize(a, alabel)

    colors: dict[tuple, int] = {}
    for f in b.facets:
        (top,) = [v for v in f if blabels[v] == d]  # barycenter of an a-facet
        alpha = a_face[top]
        (delta,) = [v for v in alpha if alabel[v] == d]  # barycenter of a k-facet
        facet = k_face[delta]
        c = pair[f][0]
        if colors.setdefault(facet, c) != c:
            raise InconsistentLabels(f"facet {facet} carries two colours")
    return ColoredComplex(k, colors)


# ---------------------------------------------------------------------------
# isomorphism oracle


def _incidence_graph(c: Complex, colors: Mapping | None = None) -> nx.Graph:
    g = nx.Graph()
    for v in c.vertices:
        g.add_node(("v", v), kind="v", color=0)
    for f in c.facets:
        g.add_node(("f", f), kind="f", color=(colors or {}).get(f, 0))
        for v in f:
            g.add_edge(("f", f), ("v", v))
    return g


def colored_isomorphic(x: ColoredComplex, y: ColoredComplex) -> bool:
    """Isomorphism of coloured complexes via facet-vertex incidence graphs."""
    if len(x.complex) != len(y.complex) or len(x.complex.vertices) != len(y.complex.vertices):
        return False
    gx = _incidence_graph(x.complex, x.colors)
    gy = _incidence_graph(y.complex, y.colors)
    nm = nx.algorithms.isomorphism.categorical_node_match(["kind", "color"], [None, 0])
    return nx.is_isomorphic(gx, gy, node_match=nm)


def complexes_isomorphic(x: Complex, y: Complex) -> bool:
    return colored_isomorphic(
        ColoredComplex(x, {f: 1 for f in x.facets}), ColoredComplex(y, {f: 1 for f in y.facets})
    )
