import numpy as np
import pytest

from homsphere.complex import Complex, betti
from homsphere.diskfill import (
    DiskFillParams,
    fill_cycles,
    inclusion_relation,
    recover_graph,
    triangle_counts,
    zigzag_disk,
)
from homsphere.errors import EdgeOveruse, EmptyResult, InvalidGraph, MTooSmall, NotSpanning
from homsphere.graphkit import (
    Cycle,
    Graph,
    QIRelation,
    complete_graph,
    cycle_graph,
    edge_multiplicity,
    fundamental_cycle_basis,
    qi_check,
    random_regular_graph,
)

from .oracles import betti_dense

K4_TRIANGLES = [Cycle([0, 1, 2]), Cycle([0, 1, 3]), Cycle([0, 2, 3]), Cycle([1, 2, 3])]


def _boundary_edges(disk: Complex):
    cnt = triangle_counts(disk)
    return sorted(e for e, n in cnt.items() if n == 1)


def _vertex_degrees(c: Complex):
    deg = {v: 0 for v in c.vertices}
    for a, b in c.faces(1):
        deg[a] += 1
        deg[b] += 1
    return deg


class TestZigzag:
    def test_cone_for_triangle(self):
        disk, cyc = zigzag_disk(3)
        assert len(disk.vertices) == 4 and len(disk) == 3
        assert [v for v in disk.vertices if v >= 3] == [3]

    def test_square(self):
        disk, _ = zigzag_disk(4)
        assert len(disk.vertices) == 5 and len(disk) == 4

    def test_octagon(self):
        disk, _ = zigzag_disk(8)
        assert len(disk) == 16
        assert len([v for v in disk.vertices if v >= 8]) == 5

    def test_too_small(self):
        with pytest.raises(MTooSmall):
            zigzag_disk(2)

    @pytest.mark.parametrize("m", range(3, 41))
    def test_postconditions(self, m):
        disk, cyc = zigzag_disk(m)
        ring = {tuple(sorted((i, (i + 1) % m))) for i in range(m)}
        # boundary is exactly the m-cycle, and no chord joins two boundary vertices
        assert set(_boundary_edges(disk)) == ring
        assert {e for e in disk.faces(1) if e[0] < m and e[1] < m} == ring
        assert len(disk.vertices) - m <= m
        assert max(_vertex_degrees(disk).values()) <= 6
        assert betti_dense(disk.facets, 2) == (1, 0, 0)

    def test_no_edge_in_ten_triangles(self):
        disk, _ = zigzag_disk(8)
        with pytest.raises(EmptyResult):
            recover_graph(disk, 10)


class TestFill:
    def test_k4(self):
        g = complete_graph(4)
        f = fill_cycles(g, K4_TRIANGLES[:3], DiskFillParams(p=2, deg_max=3, k=2))
        assert f.T == 3 * (1 + 12)
        assert betti(f.complex, 2) == (1, 0, 0)
        assert recover_graph(f.complex, f.T).edges == g.edges

    def test_tree_without_cycles(self):
        tree = Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        f = fill_cycles(tree, [], DiskFillParams(deg_max=3, k=1))
        assert f.disk_map == {}
        assert len(f.complex) == tree.m * f.T
        assert betti(f.complex, 2) == (1, 0, 0)
        assert recover_graph(f.complex, f.T).edges == tree.edges

    def test_two_triangles_do_not_span(self):
        with pytest.raises(NotSpanning):
            fill_cycles(complete_graph(4), K4_TRIANGLES[:2], DiskFillParams(deg_max=3, k=2))

    def test_pentagon(self):
        g = cycle_graph(5)
        f = fill_cycles(g, [Cycle(range(5))], DiskFillParams(deg_max=2, k=1))
        assert recover_graph(f.complex, f.T).edges == g.edges
        assert betti(f.complex, 3) == (1, 0, 0)

    def test_redundant_cycles_are_skipped(self):
        f = fill_cycles(complete_graph(4), K4_TRIANGLES, DiskFillParams(deg_max=3, k=2))
        assert f.selected == [0, 1, 2]

    def test_edge_overuse(self):
        with pytest.raises(EdgeOveruse):
            fill_cycles(complete_graph(4), K4_TRIANGLES, DiskFillParams(deg_max=3, k=1))

    def test_degree_above_bound(self):
        with pytest.raises(InvalidGraph):
            fill_cycles(complete_graph(5), [], DiskFillParams(deg_max=3, k=1))

    def test_non_simple_cycle(self):
        bowtie = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        walk = Cycle([0, 1, 2, 3, 4, 2])
        with pytest.raises(InvalidGraph):
            fill_cycles(bowtie, [walk], DiskFillParams(deg_max=4, k=2))

    def test_flags_do_not_disturb_interior_degrees(self):
        rng = np.random.default_rng(5)
        g = random_regular_graph(3, 12, rng)
        cyc = fundamental_cycle_basis(g)
        k = max(edge_multiplicity(g, cyc).values())
        f = fill_cycles(g, cyc, DiskFillParams(deg_max=3, k=k))
        disk_part = f.without_flags()
        interior = {w for ws in f.disk_map.values() for w in ws}
        deg = _vertex_degrees(disk_part)
        assert max(deg[v] for v in interior) <= 6

    def test_gf3_fill_is_acyclic_over_gf3(self):
        g = random_regular_graph(3, 10, np.random.default_rng(9))
        cyc = fundamental_cycle_basis(g)
        f = fill_cycles(g, cyc, DiskFillParams(p=3, deg_max=3, k=len(cyc)))
        assert betti(f.complex, 3) == (1, 0, 0)


def test_inclusion_relation_is_a_quasi_isometry():
    g = random_regular_graph(3, 14, np.random.default_rng(2))
    cyc = fundamental_cycle_basis(g)
    k = max(edge_multiplicity(g, cyc).values())
    f = fill_cycles(g, cyc, DiskFillParams(deg_max=3, k=k))
    sk, labels = f.complex.skeleton_graph()
    assert list(labels) == list(range(sk.n))
    rep = qi_check(g, sk, QIRelation(inclusion_relation(f, cyc)))
    assert rep.ok
    assert rep.M <= max(c.length for c in cyc)
