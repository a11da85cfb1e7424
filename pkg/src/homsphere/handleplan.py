"""Combinatorial gluing data for a 0/1/2-handle thickening of a 2-complex.

Every vertex, edge and triangle of the complex becomes a handle of index
0, 1, 2.  The plan fixes, for each vertex, which of its ``k`` attaching
spheres each incident edge uses (``slot``); for each edge, which of its
``k`` tracks each incident triangle runs along (``tri_order``); and for each
corner of a triangle, the two slot/track coordinates the attaching path
connects.  No manifold is built here: the plan is the auditable list of
choices a triangulation backend would consume.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import Complex
from .errors import StarTooBig
from .graphkit.graph import Graph


def _faces_by_dim(x: Complex) -> list[list[tuple]]:
    return [x.faces(k) for k in range(min(x.dim, 2) + 1)]


def star_sizes(x: Complex) -> dict[int, int]:
    """Number of faces containing each vertex (the vertex itself included)."""
    sizes = {v: 0 for v in x.vertices}
    for dim_faces in _faces_by_dim(x):
        for f in dim_faces:
            for v in f:
                sizes[v] += 1
    return sizes


@dataclass
class HandlePlan:
    k: int
    edge_orient: dict[tuple, tuple[int, int]]
    slot: dict[tuple[int, tuple], int]
    tri_order: dict[tuple[tuple, tuple], int]
    path_choice: dict[tuple[tuple, int], frozenset]
    orient_flag: dict[tuple[int, tuple], bool]
    vertices: list[int] = field(default_factory=list)
    edges: list[tuple] = field(default_factory=list)
    triangles: list[tuple] = field(default_factory=list)

    def dump(self) -> str:
        """Readable, deterministic text form of the plan."""
        lines = [f"k {self.k}"]
        lines += [f"vertex {v}" for v in self.vertices]
        for e in self.edges:
            a, b = self.edge_orient[e]
            lines.append(f"edge {a} {b}")
        for (v, e), i in sorted(self.slot.items()):
            flag = int(self.orient_flag[(v, e)])
            lines.append(f"slot {v} {e[0]} {e[1]} -> {i} flip={flag}")
        for (e, s), j in sorted(self.tri_order.items()):
            lines.append(f"track {e[0]} {e[1]} | {' '.join(map(str, s))} -> {j}")
        for (s, v), pc in sorted(self.path_choice.items()):
            (i1, j1), (i2, j2) = sorted(pc)
            lines.append(f"path {' '.join(map(str, s))} @ {v} -> ({i1},{j1}) ({i2},{j2})")
        return "\n".join(lines) + "\n"


def build_plan(x: Complex, k: int) -> HandlePlan:
    """Deterministic plan; edges and triangles are ranked in sorted order."""
    if x.dim > 2:
        raise ValueError("handle plans are defined for complexes of dimension at most 2")
    sizes = star_sizes(x)
    for v in sorted(sizes):
        if sizes[v] > k:
            raise StarTooBig(v, sizes[v], k)
    k_even = k + (k % 2)
    faces = _faces_by_dim(x) + [[], [], []]
    verts = [f[0] for f in faces[0]]
    edges, tris = faces[1], faces[2]
    edge_orient = {e: (e[0], e[1]) for e in edges}
    incident: dict[int, list[tuple]] = {v: [] for v in verts}
    for e in edges:
        for v in e:
            incident[v].append(e)
    slot, orient_flag = {}, {}
    for v in verts:
        for i, e in enumerate(sorted(incident[v]), start=1):
            slot[(v, e)] = i
            orient_flag[(v, e)] = edge_orient[e][1] == v
    on_edge: dict[tuple, list[tuple]] = {e: [] for e in edges}
    for s in tris:
        for i in range(3):
            on_edge[s[:i] + s[i + 1:]].append(s)
    tri_order = {}
    for e in edges:
        for j, s in enumerate(sorted(on_edge[e]), start=1):
            tri_order[(e, s)] = j
    path_choice = {}
    for s in tris:
        for v in s:
            e1, e2 = sorted(tuple(sorted((v, u))) for u in s if u != v)
            path_choice[(s, v)] = frozenset(
                {(slot[(v, e1)], tri_order[(e1, s)]), (slot[(v, e2)], tri_order[(e2, s)])}
            )
    return HandlePlan(k_even, edge_orient, slot, tri_order, path_choice, orient_flag,
                      verts, edges, tris)


def plan_violations(plan: HandlePlan, x: Complex) -> list[str]:
    """Check the three plan invariants; empty list means the plan is valid."""
    bad = []
    per_vertex: dict[int, list[int]] = {}
    for (v, e), i in plan.slot.items():
        per_vertex.setdefault(v, []).append(i)
        if not 1 <= i <= plan.k:
            bad.append(f"slot {i} of ({v}, {e}) outside 1..{plan.k}")
    for v, ix in per_vertex.items():
        if len(set(ix)) != len(ix):
            bad.append(f"slots at vertex {v} collide")
    per_edge: dict[tuple, list[int]] = {}
    for (e, s), j in plan.tri_order.items():
        per_edge.setdefault(e, []).append(j)
        if not 1 <= j <= plan.k:
            bad.append(f"track {j} of ({e}, {s}) outside 1..{plan.k}")
    for e, js in per_edge.items():
        if len(set(js)) != len(js):
            bad.append(f"tracks on edge {e} collide")
    for s in x.faces(2) if x.dim >= 2 else []:
        for v in s:
            pc = plan.path_choice.get((s, v))
            e1, e2 = sorted(tuple(sorted((v, u))) for u in s if u != v)
            want = {(plan.slot[(v, e1)], plan.tri_order[(e1, s)]),
                    (plan.slot[(v, e2)], plan.tri_order[(e2, s)])}
            if pc is None or set(pc) != want:
                bad.append(f"path choice at ({s}, {v}) does not match its edges")
            elif len({i for i, _ in pc}) != 2:
                bad.append(f"path choice at ({s}, {v}) reuses a slot")
    return bad


@dataclass
class HandleIncidence:
    nodes: list[tuple]  # faces, by dimension then lexicographically
    graph: Graph

    def index(self) -> dict[tuple, int]:
        return {f: i for i, f in enumerate(self.nodes)}


def handle_incidence(plan: HandlePlan, x: Complex) -> HandleIncidence:
    """Handles of ``x`` adjacent exactly when their faces intersect."""
    nodes = [(v,) for v in plan.vertices] + list(plan.edges) + list(plan.triangles)
    sets = [set(f) for f in nodes]
    edges = [
        (i, j)
        for i in range(len(nodes))
        for j in range(i + 1, len(nodes))
        if sets[i] & sets[j]
    ]
    return HandleIncidence(nodes, Graph(len(nodes), edges))


@dataclass
class ScheduleEntry:
    handle: tuple  # a face of x
    index: int
    touches: list[tuple]  # lower-index handles the attaching region meets


def collapse_schedule(plan: HandlePlan, x: Complex) -> list[ScheduleEntry]:
    """Handles by decreasing index, each with the lower handles it is attached to.

    A 2-handle runs along the tracks of its three 1-handles and crosses its
    three 0-handles via ``path_choice``; a 1-handle is glued into the slots of
    its two 0-handles.
    """
    tri_edges: dict[tuple, list] = {}
    for (e, t) in plan.tri_order:
        tri_edges.setdefault(t, []).append(e)
    tri_verts: dict[tuple, set] = {}
    for (t, v) in plan.path_choice:
        tri_verts.setdefault(t, set()).add(v)
    edge_verts: dict[tuple, list] = {}
    for (v, f) in plan.slot:
        edge_verts.setdefault(f, []).append(v)
    out = []
    for s in plan.triangles:
        es = sorted(tri_edges.get(s, []))
        vs = sorted(tri_verts.get(s, ()))
        out.append(ScheduleEntry(s, 2, es + [(v,) for v in vs]))
    for e in plan.edges:
        out.append(ScheduleEntry(e, 1, [(v,) for v in sorted(edge_verts.get(e, []))]))
    for v in plan.vertices:
        out.append(ScheduleEntry((v,), 0, []))
    return out


def schedule_violations(schedule: list[ScheduleEntry]) -> list[str]:
    """A handle may only be removed once nothing later still attaches to it."""
    bad = []
    pos = {e.handle: i for i, e in enumerate(schedule)}
    for i, e in enumerate(schedule):
        for t in e.touches:
            if t not in pos:
                bad.append(f"{e.handle} touches unknown handle {t}")
            elif pos[t] <= i:
                bad.append(f"{e.handle} is attached to {t}, which is removed earlier")
            if len(t) - 1 >= e.index:
                bad.append(f"{e.handle} touches {t} of index not lower")
    for a, b in zip(schedule, schedule[1:]):
        if a.index < b.index:
            bad.append("indices are not in decreasing order")
            break
    return bad
