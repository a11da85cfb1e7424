"""Finite abstract simplicial complexes stored as facet antichains.

Vertices are non-negative integers.  Operations never mutate their inputs;
constructions that create vertices allocate ids above the current maximum
and, where the origin of a vertex matters, return a :class:`Provenance`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateFaceAfterGluing,
    FaceNotFound,
    FacetNotFound,
    InvalidComplex,
    NotClosedPseudomanifold,
    NotInduced,
    NotPure,
    NotReverseStellatable,
    RidgeOveruse,
)
from .graphkit.graph import Graph
from .linalg import require_prime

Face = tuple  # sorted tuple of vertex ids


def _canon(face: Iterable[int]) -> Face:
    f = tuple(sorted(int(v) for v in face))
    for a, b in zip(f, f[1:]):
        if a == b:
            raise InvalidComplex(f"repeated vertex in face {f}")
    if f and f[0] < 0:
        raise InvalidComplex(f"negative vertex id in face {f}")
    return f


def _antichain_violations(facets: list[Face]) -> list[tuple[Face, Face]]:
    star: dict[int, set[int]] = defaultdict(set)
    for i, f in enumerate(facets):
        for v in f:
            star[v].add(i)
    bad = []
    for i, f in enumerate(facets):
        if not f:
            continue
        common = set.intersection(*(star[v] for v in f))
        for j in common:
            if j != i and len(facets[j]) > len(f):
                bad.append((f, facets[j]))
    return bad


class Complex:
    """A pure-or-not simplicial complex given by its facets.

    >>> Complex([[1, 2, 3], [1, 2, 4]]).dim
    2
    """

    def __init__(self, facets: Iterable[Iterable[int]] = ()):
        fs = [_canon(f) for f in facets]
        fs = [f for f in fs if f]
        if len(set(fs)) != len(fs):
            seen, dup = set(), None
            for f in fs:
                if f in seen:
                    dup = f
                    break
                seen.add(f)
            raise InvalidComplex(f"duplicate facet {dup}")
        bad = _antichain_violations(fs)
        if bad:
            raise InvalidComplex(f"facet list is not an antichain: {bad[0][0]} < {bad[0][1]}")
        self._facets = tuple(sorted(fs, key=lambda f: (len(f), f)))

    @classmethod
    def _trusted(cls, facets: Iterable[Face]) -> "Complex":
        # caller guarantees canonical, duplicate-free antichain
        obj = cls.__new__(cls)
        obj._facets = tuple(sorted(facets, key=lambda f: (len(f), f)))
        return obj

    @property
    def facets(self) -> tuple[Face, ...]:
        return self._facets

    @cached_property
    def dim(self) -> int:
        return max((len(f) for f in self._facets), default=0) - 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self._facets for v in f}))

    @cached_property
    def facet_index(self) -> dict[Face, int]:
        return {f: i for i, f in enumerate(self._facets)}

    @cached_property
    def vertex_star(self) -> dict[int, tuple[int, ...]]:
        """Vertex -> indices of the facets containing it."""
        st = defaultdict(list)
        for i, f in enumerate(self._facets):
            for v in f:
                st[v].append(i)
        return {v: tuple(ix) for v, ix in st.items()}

    @cached_property
    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) <= 1

    def __len__(self) -> int:
        return len(self._facets)

    def __iter__(self):
        return iter(self._facets)

    def __contains__(self, face) -> bool:
        return self.has_face(face)

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._facets == other._facets

    def __hash__(self) -> int:
        return hash(self._facets)

    def __repr__(self) -> str:
        head = ", ".join(str(list(f)) for f in self._facets[:4])
        more = ", ..." if len(self._facets) > 4 else ""
        return f"Complex([{head}{more}])  # dim={self.dim}, {len(self)} facets"

    def has_face(self, face: Iterable[int]) -> bool:
        f = _canon(face)
        if not f:
            return bool(self._facets)
        st = self.vertex_star
        if any(v not in st for v in f):
            return False
        common = set(st[f[0]]).intersection(*(st[v] for v in f[1:]))
        return bool(common)

    def faces(self, k: int) -> list[Face]:
        """All k-dimensional faces, sorted."""
        out = set()
        for f in self._facets:
            if len(f) > k:
                out.update(itertools.combinations(f, k + 1))
        return sorted(out)

    def all_faces(self) -> list[Face]:
        out = []
        for k in range(self.dim + 1):
            out.extend(self.faces(k))
        return out

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    @cached_property
    def ridge_facets(self) -> dict[Face, tuple[int, ...]]:
        """Codimension-one faces of the facets -> facet indices containing them."""
        rf = defaultdict(list)
        for i, f in enumerate(self._facets):
            for r in itertools.combinations(f, len(f) - 1):
                if r:
                    rf[r].append(i)
        return {r: tuple(ix) for r, ix in rf.items()}

    def skeleton_graph(self) -> tuple[Graph, tuple[int, ...]]:
        """1-skeleton relabelled to ``0..n-1``; also returns the label order."""
        verts = self.vertices
        idx = {v: i for i, v in enumerate(verts)}
        edges = {(idx[a], idx[b]) for a, b in self.faces(1)}
        return Graph(len(verts), edges), verts

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for i in self.vertex_star.get(v, ()):
            out.update(self._facets[i])
        out.discard(v)
        return out

    def relabel(self, mapping: Mapping[int, int]) -> "Complex":
        return Complex([[mapping[v] for v in f] for f in self._facets])

    def normalized(self) -> tuple["Complex", dict[int, int]]:
        """Relabel vertices to ``0..n-1`` in increasing order."""
        m = {v: i for i, v in enumerate(self.vertices)}
        return self.relabel(m), m


@dataclass(frozen=True)
class Provenance:
    """Where each vertex and facet of a subdivision came from.

    ``vertex_origin`` maps a new vertex to the source face it subdivides;
    ``facet_origin`` maps a new facet to the source facet containing it.
    """

    vertex_origin: dict[int, Face] = field(default_factory=dict)
    facet_origin: dict[Face, Face] = field(default_factory=dict)


@dataclass
class ValidationReport:
    valid: bool
    dim: int
    duplicate_facets: list[Face]
    antichain_violations: list[tuple[Face, Face]]
    negative_ids: bool
    pure: bool
    pseudomanifold: bool
    closed_pseudomanifold: bool
    overused_ridges: list[Face]
    boundary_ridges: list[Face]

    def __str__(self) -> str:
        lines = [
            f"valid: {self.valid}",
            f"dim: {self.dim}",
            f"pure: {self.pure}",
            f"pseudomanifold: {self.pseudomanifold}",
            f"closed_pseudomanifold: {self.closed_pseudomanifold}",
        ]
        if self.duplicate_facets:
            lines.append(f"duplicate_facets: {self.duplicate_facets}")
        if self.antichain_violations:
            lines.append(f"antichain_violations: {self.antichain_violations}")
        if self.overused_ridges:
            lines.append(f"overused_ridges: {self.overused_ridges}")
        return "\n".join(lines)


def validate(c) -> ValidationReport:
    """Report-style check of a facet list (or an existing :class:`Complex`).

    Never raises on malformed input; the report says what is wrong.
    """
    raw = c.facets if isinstance(c, Complex) else [tuple(sorted(int(v) for v in f)) for f in c]
    raw = [f for f in raw if f]
    negative = any(v < 0 for f in raw for v in f)
    seen, dups = set(), []
    for f in raw:
        if f in seen:
            dups.append(f)
        seen.add(f)
    uniq = sorted(seen)
    anti = _antichain_violations(uniq)
    sizes = {len(f) for f in uniq}
    pure = len(sizes) <= 1
    dim = max(sizes, default=0) - 1
    counts: dict[Face, int] = defaultdict(int)
    for f in uniq:
        for r in itertools.combinations(f, len(f) - 1):
            if r:
                counts[r] += 1
    over = sorted(r for r, n in counts.items() if n > 2)
    bnd = sorted(r for r, n in counts.items() if n == 1)
    valid = not dups and not anti and not negative and all(len(set(f)) == len(f) for f in uniq)
    pseudo = valid and pure and bool(uniq) and dim >= 1 and not over
    closed = pseudo and not bnd
    return ValidationReport(
        valid=valid,
        dim=dim,
        duplicate_facets=dups,
        antichain_violations=anti,
        negative_ids=negative,
        pure=pure,
        pseudomanifold=pseudo,
        closed_pseudomanifold=closed,
        overused_ridges=over,
        boundary_ridges=bnd,
    )


def is_closed_pseudomanifold(c: Complex) -> bool:
    if not c.facets or not c.is_pure or c.dim < 1:
        return False
    return all(len(ix) == 2 for ix in c.ridge_facets.values())


def barycentric(c: Complex, start: int | None = None) -> tuple[Complex, Provenance]:
    """Barycentric subdivision.

    New vertices are numbered ``start, start+1, ...`` (default 0) in the order
    of the source faces sorted by dimension, then lexicographically.
    """
    faces = c.all_faces()
    base = 0 if start is None else start
    ids = {f: base + i for i, f in enumerate(faces)}
    vertex_origin = {i: f for f, i in ids.items()}
    facet_origin = {}
    new = []
    for f in c.facets:
        for perm in itertools.permutations(f):
            chain = tuple(sorted(ids[tuple(sorted(perm[: j + 1]))] for j in range(len(f))))
            new.append(chain)
            facet_origin[chain] = f
    return Complex._trusted(new), Provenance(vertex_origin, facet_origin)


def stellate_facet(c: Complex, f: Iterable[int], new_vertex: int | None = None) -> Complex:
    """Replace facet ``f`` by the cone over its boundary from a fresh vertex.

    The fresh vertex is ``max(vertices) + 1`` unless given.
    """
    f = _canon(f)
    if f not in c.facet_index:
        raise FacetNotFound(f)
    v = (max(c.vertices) + 1) if new_vertex is None else int(new_vertex)
    if v in c.vertex_star:
        raise InvalidComplex(f"vertex {v} already present")
    rest = [g for g in c.facets if g != f]
    cone = [tuple(sorted(r + (v,))) for r in itertools.combinations(f, len(f) - 1)]
    return Complex._trusted(rest + cone)


def reverse_stellate(c: Complex, v: int) -> Complex:
    """Inverse of :func:`stellate_facet` at vertex ``v``.

    Refuses unless the star of ``v`` is exactly a cone over the boundary of a
    ``dim``-simplex *and* replacing it by that simplex gives a valid complex.
    """
    d = c.dim
    st = c.vertex_star.get(v)
    if st is None:
        raise NotReverseStellatable(f"vertex {v} not in complex")
    nb = tuple(sorted(c.neighbors(v)))
    if len(nb) != d + 1:
        raise NotReverseStellatable(f"vertex {v} has {len(nb)} neighbours, need {d + 1}")
    star_facets = {c.facets[i] for i in st}
    expected = {tuple(sorted(r + (v,))) for r in itertools.combinations(nb, d)}
    if star_facets != expected:
        raise NotReverseStellatable(f"link of {v} is not the boundary of a {d}-simplex")
    rest = [g for g in c.facets if g not in star_facets]
    nbset = set(nb)
    for g in rest:
        if nbset.issubset(g):
            raise NotReverseStellatable(
                f"simplex {nb} already lies in facet {g}; removal would break the antichain"
            )
    return Complex._trusted(rest + [nb])


def _face_or_raise(c: Complex, face) -> Face:
    f = _canon(face)
    if f and not c.has_face(f):
        raise FaceNotFound(f)
    return f


def link(c: Complex, face) -> Complex:
    f = _face_or_raise(c, face)
    fs = set(f)
    out = []
    for g in c.facets:
        if fs.issubset(g):
            rest = tuple(x for x in g if x not in fs)
            if rest:
                out.append(rest)
    return Complex._trusted(out)


def star(c: Complex, face) -> Complex:
    """Closed star: the facets containing ``face``."""
    f = _face_or_raise(c, face)
    fs = set(f)
    return Complex._trusted([g for g in c.facets if fs.issubset(g)])


def dual_graph(c: Complex) -> tuple[Graph, dict[tuple[int, int], Face]]:
    """Facet adjacency graph across shared ridges.

    Graph vertex ``i`` is ``c.facets[i]``.  ``ridge_map[(i, j)]`` (``i < j``)
    is the ridge shared by the two facets.
    """
    if not c.is_pure:
        raise NotPure("dual graph needs a pure complex")
    edges = {}
    for r, ix in c.ridge_facets.items():
        if len(ix) > 2:
            raise RidgeOveruse(f"ridge {r} lies in {len(ix)} facets")
        if len(ix) == 2:
            edges[(min(ix), max(ix))] = r
    return Graph(len(c.facets), edges.keys()), edges


def boundary_matrix_entries(c: Complex, k: int):
    """Sparse boundary map from k-faces to (k-1)-faces.

    Returns ``(rows, cols, signs, n_rows, n_cols)``; signs use the
    lexicographic vertex order inside each face.
    """
    hi = c.faces(k)
    lo = c.faces(k - 1)
    lo_ix = {f: i for i, f in enumerate(lo)}
    rows, cols, signs = [], [], []
    for j, f in enumerate(hi):
        for i in range(len(f)):
            rows.append(lo_ix[f[:i] + f[i + 1:]])
            cols.append(j)
            signs.append(-1 if i % 2 else 1)
    return rows, cols, signs, len(lo), len(hi)


def _sparse_rank(columns: list[dict[int, int]], p: int) -> int:
    """Rank over GF(p) of a column-sparse matrix by pivot elimination."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = {r: x % p for r, x in col.items() if x % p}
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                inv = pow(col[low], -1, p)
                pivots[low] = {r: (x * inv) % p for r, x in col.items()}
                rank += 1
                break
            factor = col[low]
            for r, x in piv.items():
                y = (col.get(r, 0) - factor * x) % p
                if y:
                    col[r] = y
                else:
                    col.pop(r, None)
    return rank


def boundary_rank(c: Complex, k: int, p: int) -> int:
    if k <= 0 or k > c.dim:
        return 0
    rows, cols, signs, _, n_cols = boundary_matrix_entries(c, k)
    columns = [dict() for _ in range(n_cols)]
    for r, j, s in zip(rows, cols, signs):
        columns[j][r] = s
    return _sparse_rank(columns, p)


@dataclass(frozen=True)
class BettiVector:
    p: int
    betti: tuple[int, ...]

    def __iter__(self):
        return iter(self.betti)

    def __getitem__(self, i):
        return self.betti[i]

    def __len__(self):
        return len(self.betti)

    def __eq__(self, other):
        if isinstance(other, BettiVector):
            return self.p == other.p and self.betti == other.betti
        return tuple(self.betti) == tuple(other)

    def __hash__(self):
        return hash((self.p, self.betti))


def betti(c: Complex, p: int = 2) -> BettiVector:
    """Betti numbers over GF(p), indexed by degree ``0..dim``."""
    p = require_prime(p)
    if not c.facets:
        return BettiVector(p, ())
    counts = c.f_vector()
    ranks = [boundary_rank(c, k, p) for k in range(c.dim + 2)]
    out = tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(c.dim + 1))
    return BettiVector(p, out)


def connected_sum(
    x: Complex, fx, y: Complex, fy, bij: Mapping[int, int]
) -> Complex:
    """Remove the interiors of facets ``fx``, ``fy`` and glue along ``bij``.

    Vertices of ``x`` keep their ids; vertices of ``y`` off ``fy`` get fresh ids
    above ``max(x)`` in increasing order.
    """
    fx, fy = _canon(fx), _canon(fy)
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions {x.dim} and {y.dim} differ")
    for name, c in (("x", x), ("y", y)):
        if not is_closed_pseudomanifold(c):
            raise NotClosedPseudomanifold(f"{name} is not a closed pseudomanifold")
    if fx not in x.facet_index:
        raise FacetNotFound(fx)
    if fy not in y.facet_index:
        raise FacetNotFound(fy)
    bij = {int(a): int(b) for a, b in dict(bij).items()}
    if set(bij) != set(fx) or sorted(bij.values()) != list(fy):
        raise ValueError("bij must be a bijection from the vertices of fx onto those of fy")
    for name, c, f in (("x", x, fx), ("y", y, fy)):
        # the boundary of f must be induced in c minus f
        fs = set(f)
        for g in c.facets:
            if g != f and len(fs.intersection(g)) == len(f):
                raise NotInduced(f"{name}: {f} lies in another facet {g}")
    inv = {b: a for a, b in bij.items()}
    nxt = max(x.vertices) + 1
    ren = {}
    for v in y.vertices:
        if v in inv:
            ren[v] = inv[v]
        else:
            ren[v] = nxt
            nxt += 1
    out = [g for g in x.facets if g != fx]
    out += [tuple(sorted(ren[v] for v in g)) for g in y.facets if g != fy]
    if len(set(out)) != len(out):
        raise DuplicateFaceAfterGluing("two facets coincide after gluing")
    try:
        return Complex(out)
    except Exception as exc:  # antichain failure after identification
        raise DuplicateFaceAfterGluing(str(exc)) from exc


# ---------------------------------------------------------------------------
# standard complexes


def simplex(d: int, start: int = 0) -> Complex:
    return Complex([range(start, start + d + 1)])


def simplex_boundary(d: int, start: int = 0) -> Complex:
    """Boundary of the d-simplex, a (d-1)-sphere on ``d+1`` vertices."""
    verts = range(start, start + d + 1)
    return Complex(itertools.combinations(verts, d))


def rp2_6() -> Complex:
    """Six-vertex real projective plane (vertices 1..6)."""
    return Complex([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
    ])


def torus_7() -> Complex:
    """Möbius' seven-vertex torus (vertices 0..6)."""
    fs = []
    for i in range(7):
        fs.append((i, (i + 1) % 7, (i + 3) % 7))
        fs.append((i, (i + 2) % 7, (i + 3) % 7))
    return Complex(fs)


def random_stellated_sphere(d: int, n_stellations: int, rng) -> Complex:
    """Boundary of the (d+1)-simplex with ``n_stellations`` random facet stellations.

    The result is a combinatorial d-sphere with ``d + 2 + n*d`` facets.
    """
    rng = np.random.default_rng(rng)
    c = simplex_boundary(d + 1)
    for _ in range(n_stellations):
        f = c.facets[int(rng.integers(len(c.facets)))]
        c = stellate_facet(c, f)
    return c


def dual_ring_cycles(c: Complex):
    """Facet rings around the codimension-two faces of a closed pseudomanifold.

    Returns ``(dual graph, [(face, Cycle)])``.  Each ring walks the facets
    containing the face, stepping across ridges that also contain it; these
    are the boundaries of the 2-cells of the dual cell complex.
    """
    from .graphkit.cycles import Cycle

    if not is_closed_pseudomanifold(c):
        raise NotClosedPseudomanifold("rings need a closed pseudomanifold")
    g, _ = dual_graph(c)
    ix = c.facet_index
    ridges = c.ridge_facets
    out = []
    for tau in c.faces(c.dim - 2) if c.dim >= 2 else []:
        ts = set(tau)
        start = star(c, tau).facets[0]
        ring = [ix[start]]
        prev_ridge = None
        cur = start
        while True:
            # the two ridges of cur containing tau; leave through the unused one
            opts = [r for r in itertools.combinations(cur, len(cur) - 1) if ts.issubset(r)]
            nxt_ridge = opts[0] if opts[0] != prev_ridge else opts[1]
            a, b = ridges[nxt_ridge]
            nxt = b if a == ix[cur] else a
            if nxt == ring[0]:
                break
            ring.append(nxt)
            prev_ridge, cur = nxt_ridge, c.facets[nxt]
        out.append((tau, Cycle(ring)))
    return g, out
