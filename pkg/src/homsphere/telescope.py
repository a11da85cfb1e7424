"""Towers of 2-lifts and their simplicial mapping telescopes.

A hierarchical sequence ``H_1 <- H_2 <- ...`` starts at a point, continues
with a base graph, and then takes 2-sheeted covers.  The mapping telescope
stacks the mapping cylinders of the cover maps; it collapses to the point
and, when the lifts are good expanders, its 1-skeleton is an expander too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .complex import Complex
from .errors import InvariantViolation, NoGoodLift, ScheduleError, Stuck
from .graphkit.graph import Graph
from .graphkit.spectral import SpectralReport, spectral_report
from .linalg import sym_eigs

Signing = dict  # edge (u, v) with u < v  ->  +1 / -1


def signed_adjacency(g: Graph, s: Signing) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for (u, v) in g.edge_list:
        a[u, v] = a[v, u] = s[(u, v)]
    return a


def two_lift(g: Graph, s: Signing) -> tuple[Graph, np.ndarray]:
    """Double cover: vertex ``v`` has lifts ``v`` and ``v + n``.

    A ``+1`` edge lifts to two parallel edges, a ``-1`` edge to two crossed
    ones.  ``cover_map[x] = x mod n``.
    """
    n = g.n
    missing = [e for e in g.edge_list if e not in s]
    if missing:
        raise ValueError(f"signing undefined on edge {missing[0]}")
    edges = []
    for u, v in g.edge_list:
        if s[(u, v)] > 0:
            edges += [(u, v), (u + n, v + n)]
        else:
            edges += [(u, v + n), (u + n, v)]
    return Graph(2 * n, edges), np.arange(2 * n) % n


def spectral_radius(a: np.ndarray) -> float:
    ev = sym_eigs(a)
    return float(max(abs(ev[0]), abs(ev[-1])))


def lift_spectrum_gap(g: Graph, s: Signing) -> float:
    """Max deviation between spec(lift) and spec(A) + spec(A_s), sorted."""
    lift, _ = two_lift(g, s)
    lhs = sym_eigs(lift.adjacency())
    rhs = np.sort(np.r_[sym_eigs(g.adjacency()), sym_eigs(signed_adjacency(g, s))])
    return float(np.max(np.abs(lhs - rhs)))


def default_threshold(deg: int) -> float:
    return 2.0 * math.sqrt(deg - 1) + 0.5


def find_good_lift(g: Graph, trials: int, seed: int, threshold: float | None = None) -> Signing:
    """Random search for a signing whose signed adjacency has small spectral radius.

    Trial ``t`` draws its signs from ``default_rng([seed, t])``, so results do
    not depend on evaluation order.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    g.require_connected()
    if not g.is_regular() or g.degree(0) < 3:
        raise ValueError("find_good_lift needs a regular graph of degree >= 3")
    if threshold is None:
        threshold = default_threshold(g.degree(0))
    edges = g.edge_list
    best, best_s = math.inf, None
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        signs = rng.choice(np.array([-1, 1]), size=len(edges))
        s = {e: int(x) for e, x in zip(edges, signs)}
        rho = spectral_radius(signed_adjacency(g, s))
        if rho < best - 1e-12:
            best, best_s = rho, s
    if best > threshold:
        raise NoGoodLift(best, threshold)
    return best_s


@dataclass
class HierarchicalSequence:
    """Graphs ``levels[0..N]`` with ``maps[n]: V(levels[n+1]) -> V(levels[n])``."""

    levels: list[Graph]
    maps: list[np.ndarray]
    signings: list[Signing | None] = field(default_factory=list)

    @property
    def N(self) -> int:
        return len(self.maps)

    def sizes(self) -> list[int]:
        return [g.n for g in self.levels]

    def truncate(self, n_maps: int) -> "HierarchicalSequence":
        return HierarchicalSequence(
            self.levels[: n_maps + 1], self.maps[:n_maps], self.signings[:n_maps]
        )

    def fiber_bounds(self, n: int) -> tuple[int, int]:
        counts = np.bincount(self.maps[n], minlength=self.levels[n].n)
        return int(counts.min()), int(counts.max())

    def validate(self, c_fib: Sequence[int] | int | None = None) -> None:
        """Check the map and fibre conditions; raises InvariantViolation.

        An integer ``c_fib`` caps the fibres of every map above the base; the
        map onto the point has a single fibre, the whole base graph.
        """
        if len(self.levels) != len(self.maps) + 1:
            raise InvariantViolation("need exactly one map between consecutive levels")
        for n, f in enumerate(self.maps):
            lo, hi = self.levels[n], self.levels[n + 1]
            f = np.asarray(f)
            if f.shape != (hi.n,) or (hi.n and (f.min() < 0 or f.max() >= lo.n)):
                raise InvariantViolation(f"map {n} has wrong shape or range")
            for v, w in hi.edge_list:
                a, b = int(f[v]), int(f[w])
                if a != b and not lo.has_edge(a, b):
                    raise InvariantViolation(f"edge ({v}, {w}) maps to non-edge ({a}, {b})")
            fmin, fmax = self.fiber_bounds(n)
            if isinstance(c_fib, int):
                cap = c_fib if n > 0 else None
            else:
                cap = None if c_fib is None else c_fib[n]
            if fmin < 2 or (cap is not None and fmax > cap):
                raise InvariantViolation(f"fibres of map {n} have sizes {fmin}..{fmax}")


def build_hierarchy(base: Graph, levels: int, trials: int, seed: int,
                    threshold: float | None = None) -> HierarchicalSequence:
    """Point, then ``base``, then ``levels - 1`` good 2-lifts (``levels`` maps in all)."""
    base.require_connected()
    point = Graph(1)
    if levels == 0:
        return HierarchicalSequence([point], [], [])
    gs = [point, base]
    maps = [np.zeros(base.n, dtype=int)]
    signings: list = [None]
    for stage in range(1, levels):
        stage_seed = int(np.random.SeedSequence([seed, stage]).generate_state(1)[0])
        s = find_good_lift(gs[-1], trials, stage_seed, threshold)
        lift, cover = two_lift(gs[-1], s)
        gs.append(lift)
        maps.append(cover)
        signings.append(s)
    return HierarchicalSequence(gs, maps, signings)


# ---------------------------------------------------------------------------
# telescopes


@dataclass
class Cell:
    kind: str  # "triangle" or "square"
    stage: int  # cylinder between levels[stage] and levels[stage + 1]
    top: tuple[int, int]  # the edge on the upper level
    vertices: tuple[int, ...]  # triangle: (v, w, u); square: (v, w, fw, fv, center)


@dataclass
class TelescopeComplex:
    complex: Complex
    level_of_vertex: dict[int, int]
    cell_log: list[Cell]
    level_ids: list[np.ndarray]
    vertical: list[tuple[int, int]]
    hierarchy: HierarchicalSequence

    @property
    def N(self) -> int:
        return self.hierarchy.N

    def cellular_graph(self) -> Graph:
        """Level graphs plus vertical edges, without the square centres."""
        verts = [int(v) for ids in self.level_ids for v in ids]
        ix = {v: i for i, v in enumerate(verts)}
        edges = [(ix[a], ix[b]) for a, b in self.vertical]
        for n, g in enumerate(self.hierarchy.levels):
            ids = self.level_ids[n]
            edges += [(ix[int(ids[u])], ix[int(ids[v])]) for u, v in g.edge_list]
        return Graph(len(verts), edges)

    def skeleton_graph(self) -> Graph:
        return self.complex.skeleton_graph()[0]


def telescope_complex(h: HierarchicalSequence) -> TelescopeComplex:
    """Simplicial mapping telescope; squares get a centre vertex and four triangles."""
    h.validate()
    level_ids, nxt = [], 0
    level_of = {}
    for n, g in enumerate(h.levels):
        ids = np.arange(nxt, nxt + g.n)
        level_ids.append(ids)
        for v in ids:
            level_of[int(v)] = n
        nxt += g.n
    facets, cells, vertical = [], [], []
    for n, f in enumerate(h.maps):
        lo_ids, hi_ids = level_ids[n], level_ids[n + 1]
        hi = h.levels[n + 1]
        covered = set()
        for v in range(hi.n):
            vertical.append((int(hi_ids[v]), int(lo_ids[f[v]])))
        for v, w in hi.edge_list:
            V, W = int(hi_ids[v]), int(hi_ids[w])
            fv, fw = int(lo_ids[f[v]]), int(lo_ids[f[w]])
            if fv == fw:
                facets.append(tuple(sorted((V, W, fv))))
                cells.append(Cell("triangle", n, (V, W), (V, W, fv)))
            else:
                c = nxt
                nxt += 1
                level_of[c] = n + 0.5
                facets += [
                    tuple(sorted(t))
                    for t in ((V, W, c), (W, fw, c), (fw, fv, c), (fv, V, c))
                ]
                cells.append(Cell("square", n, (V, W), (V, W, fw, fv, c)))
            covered.update((V, W))
        for v in range(hi.n):
            V = int(hi_ids[v])
            if V not in covered:
                facets.append((min(V, int(lo_ids[f[v]])), max(V, int(lo_ids[f[v]]))))
    if not facets:
        facets = [(0,)]
    if len(set(facets)) != len(facets):
        raise InvariantViolation("two cells produce the same simplex")
    try:
        cx = Complex(facets)
    except Exception as exc:
        raise InvariantViolation(str(exc)) from exc
    return TelescopeComplex(cx, level_of, cells, level_ids, vertical, h)


# ---------------------------------------------------------------------------
# collapses


@dataclass
class CollapseReport:
    success: bool
    steps: list[tuple[tuple, tuple]]
    core: Complex
    mode: str

    def __bool__(self) -> bool:
        return self.success


class _FaceLattice:
    """All faces of a complex with their immediate cofaces, for elementary collapses."""

    def __init__(self, c: Complex):
        self.up: dict[tuple, set] = {}
        for f in c.facets:
            self._add(f)

    def _add(self, f):
        if f in self.up:
            return
        self.up[f] = set()
        if len(f) > 1:
            for i in range(len(f)):
                g = f[:i] + f[i + 1:]
                self._add(g)
                self.up[g].add(f)

    def is_free_pair(self, face, coface) -> bool:
        cof = self.up.get(face)
        return cof is not None and cof == {coface} and not self.up.get(coface, {None})

    def remove(self, face, coface):
        for f in (coface, face):
            del self.up[f]
            if len(f) > 1:
                for i in range(len(f)):
                    g = f[:i] + f[i + 1:]
                    if g in self.up:
                        self.up[g].discard(f)

    def free_pairs(self):
        for f, cof in self.up.items():
            if len(cof) == 1:
                (g,) = cof
                if not self.up[g]:
                    yield f, g

    def core(self) -> Complex:
        maximal = [f for f, cof in self.up.items() if not cof]
        return Complex(maximal)


def _greedy(c: Complex) -> CollapseReport:
    lat = _FaceLattice(c)
    steps = []
    while True:
        pairs = sorted(lat.free_pairs(), key=lambda p: (-len(p[1]), p))
        if not pairs:
            break
        progressed = False
        for f, g in pairs:
            if lat.is_free_pair(f, g):
                lat.remove(f, g)
                steps.append((f, g))
                progressed = True
        if not progressed:
            break
    core = lat.core()
    ok = len(lat.up) == 1
    return CollapseReport(ok, steps, core, "greedy")


def collapse_schedule(t: TelescopeComplex) -> list[tuple[tuple, tuple]]:
    """Elementary collapses taking a telescope to its bottom point.

    Cylinders are cleared from the top down: every cell is pushed in from its
    free top edge, then each top-level vertex slides down its vertical edge.
    """
    srt = lambda *xs: tuple(sorted(xs))  # noqa: E731
    sched = []
    by_stage: dict[int, list[Cell]] = {}
    for cell in t.cell_log:
        by_stage.setdefault(cell.stage, []).append(cell)
    vert = {}
    for a, b in t.vertical:
        vert[a] = b
    for n in range(t.N - 1, -1, -1):
        for cell in by_stage.get(n, []):
            if cell.kind == "triangle":
                v, w, u = cell.vertices
                sched.append((srt(v, w), srt(v, w, u)))
            else:
                v, w, fw, fv, c = cell.vertices
                sched += [
                    (srt(v, w), srt(v, w, c)),
                    (srt(v, c), srt(v, c, fv)),
                    (srt(w, c), srt(w, c, fw)),
                    (srt(c, fv), srt(c, fv, fw)),
                    ((c,), srt(c, fw)),
                ]
        for v in t.level_ids[n + 1]:
            v = int(v)
            sched.append(((v,), srt(v, vert[v])))
    return sched


def collapse(c: Complex, mode: str = "greedy", telescope: TelescopeComplex | None = None) -> CollapseReport:
    """Collapse ``c``: greedily, or along :func:`collapse_schedule` of ``telescope``.

    Greedy mode raises :class:`Stuck` (carrying the core) if it cannot reach a
    single vertex.  Scheduled mode checks that every step is a genuine
    elementary collapse and raises :class:`ScheduleError` otherwise.
    """
    if mode == "greedy":
        rep = _greedy(c)
        if not rep.success:
            raise Stuck(rep.core)
        return rep
    if mode != "scheduled":
        raise ValueError(f"unknown mode {mode!r}")
    if telescope is None:
        raise ValueError("scheduled mode needs the telescope's cell log")
    lat = _FaceLattice(c)
    steps = []
    for face, coface in collapse_schedule(telescope):
        if not lat.is_free_pair(face, coface):
            raise ScheduleError(f"{face} is not a free face of {coface} at step {len(steps)}")
        lat.remove(face, coface)
        steps.append((face, coface))
    ok = len(lat.up) == 1
    return CollapseReport(ok, steps, lat.core(), "scheduled")


# ---------------------------------------------------------------------------
# expansion


@dataclass
class LevelReport:
    N: int
    cellular: SpectralReport
    simplicial: SpectralReport
    degree_bound: int

    @property
    def degree_ok(self) -> bool:
        return self.cellular.max_degree <= self.degree_bound

    @property
    def connected(self) -> bool:
        return self.cellular.lambda2 > 1e-8 and self.simplicial.lambda2 > 1e-8


def expansion_report(h: HierarchicalSequence, exact_limit: int = 24,
                     simplicial: bool = True) -> list[LevelReport]:
    """Spectral data of ``T_1 .. T_N``.

    The degree bound ``deg(base) + c_fib + 1`` (``c_fib = 2`` for lifts)
    refers to the cellular 1-skeleton: level graphs plus vertical edges.  The
    simplicial 1-skeleton also contains the square centres, which raise
    degrees, and is reported alongside.
    """
    out = []
    deg = h.levels[1].max_degree() if len(h.levels) > 1 else 0
    bound = deg + 2 + 1
    for n in range(1, h.N + 1):
        t = telescope_complex(h.truncate(n))
        cg = t.cellular_graph()
        rc = spectral_report(cg, exact_limit=exact_limit, label=f"T_{n} cellular")
        if simplicial:
            sg = t.skeleton_graph()
            rs = spectral_report(sg, exact_limit=exact_limit, label=f"T_{n} simplicial")
        else:
            rs = SpectralReport(float("nan"), label=f"T_{n} simplicial (skipped)")
        out.append(LevelReport(n, rc, rs, bound))
    return out
