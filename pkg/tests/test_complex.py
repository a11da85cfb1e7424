"""Simplicial complexes, subdivisions, stellar moves and homology."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homsphere.complex import (
    BettiVector,
    Complex,
    barycentric,
    betti,
    connected_sum,
    dual_graph,
    is_closed_pseudomanifold,
    link,
    random_stellated_sphere,
    reverse_stellate,
    rp2_6,
    simplex,
    simplex_boundary,
    star,
    stellate_facet,
    torus_7,
    validate,
)
from homsphere.errors import (
    FaceNotFound,
    FacetNotFound,
    InvalidComplex,
    NotClosedPseudomanifold,
    NotPure,
    NotReverseStellatable,
)

from .oracles import betti_dense

BD3 = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]


class TestValidate:
    def test_single_simplex_has_boundary(self):
        rep = validate([[1, 2, 3]])
        assert rep.valid and rep.pure and rep.pseudomanifold
        assert not rep.closed_pseudomanifold
        assert len(rep.boundary_ridges) == 3

    def test_antichain_violation_reported(self):
        rep = validate([[1, 2], [1, 2, 3]])
        assert not rep.valid
        assert rep.antichain_violations == [((1, 2), (1, 2, 3))]

    def test_antichain_violation_raises_in_constructor(self):
        with pytest.raises(InvalidComplex):
            Complex([[1, 2], [1, 2, 3]])

    def test_boundary_of_tetrahedron_is_closed(self):
        rep = validate(BD3)
        assert rep.valid and rep.closed_pseudomanifold
        assert rep.boundary_ridges == []

    def test_duplicates_do_not_raise(self):
        rep = validate([[1, 2, 3], [3, 2, 1]])
        assert rep.duplicate_facets == [(1, 2, 3)]
        assert not rep.valid

    def test_overused_ridge(self):
        rep = validate([[1, 2, 3], [1, 2, 4], [1, 2, 5]])
        assert rep.overused_ridges == [(1, 2)]
        assert not rep.pseudomanifold


class TestBarycentric:
    def test_triangle(self):
        b, prov = barycentric(simplex(2))
        assert len(b.vertices) == 7 and len(b) == 6
        assert sorted(prov.vertex_origin.values(), key=lambda f: (len(f), f))[:3] == [(0,), (1,), (2,)]

    def test_single_vertex(self):
        b, _ = barycentric(Complex([[5]]))
        assert len(b) == 1 and len(b.vertices) == 1

    def test_tetrahedron_boundary(self):
        b, _ = barycentric(Complex(BD3))
        assert len(b.vertices) == 14 and len(b) == 24

    def test_facets_are_maximal_flags(self):
        c = Complex([[1, 2, 3], [3, 4]])
        b, prov = barycentric(c)
        for f in b.facets:
            chain = sorted((prov.vertex_origin[v] for v in f), key=len)
            assert all(set(a) < set(b_) for a, b_ in zip(chain, chain[1:]))
            assert chain[-1] in c.facets

    @pytest.mark.parametrize("maker", [lambda: Complex(BD3), rp2_6, torus_7])
    def test_homology_is_preserved(self, maker):
        c = maker()
        assert betti(barycentric(c)[0], 2) == betti(c, 2)


class TestStellarMoves:
    def test_stellate_triangle(self):
        s = stellate_facet(Complex([[1, 2, 3]]), [1, 2, 3])
        assert len(s.vertices) == 4 and len(s) == 3

    def test_stellate_tetrahedron(self):
        s = stellate_facet(simplex(3), [0, 1, 2, 3])
        assert len(s.vertices) == 5 and len(s) == 4

    def test_stellate_non_facet(self):
        with pytest.raises(FacetNotFound):
            stellate_facet(Complex([[1, 2, 3]]), [1, 2])

    def test_round_trip(self):
        c = Complex([[1, 2, 3]])
        s = stellate_facet(c, [1, 2, 3], new_vertex=9)
        assert reverse_stellate(s, 9) == c

    def test_reverse_on_tetrahedron_boundary_refuses(self):
        with pytest.raises(NotReverseStellatable):
            reverse_stellate(Complex(BD3), 1)

    def test_reverse_wrong_degree(self):
        # hub of a square wheel has 4 = d + 2 facets
        wheel = Complex([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 1, 4]])
        with pytest.raises(NotReverseStellatable):
            reverse_stellate(wheel, 0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 3), st.integers(0, 6), st.integers(0, 2**32 - 1))
    def test_stellation_undoes(self, d, n, seed):
        c = random_stellated_sphere(d, n, seed)
        f = c.facets[seed % len(c)]
        s = stellate_facet(c, f)
        new = max(s.vertices)
        assert reverse_stellate(s, new) == c


class TestLinkStar:
    def test_link_of_vertex(self):
        assert link(Complex(BD3), [1]) == Complex([[2, 3], [2, 4], [3, 4]])

    def test_star_of_edge(self):
        assert star(Complex(BD3), [1, 2]) == Complex([[1, 2, 3], [1, 2, 4]])

    def test_link_of_facet_is_empty(self):
        assert len(link(Complex([[1, 2, 3]]), [1, 2, 3])) == 0

    def test_missing_face(self):
        with pytest.raises(FaceNotFound):
            link(Complex(BD3), [1, 5])


class TestDualGraph:
    def test_tetrahedron_boundary_gives_k4(self):
        g, ridges = dual_graph(Complex(BD3))
        assert g.n == 4 and g.m == 6
        assert len(ridges) == 6

    def test_four_simplex_boundary_gives_k5(self):
        g, _ = dual_graph(simplex_boundary(4))
        assert g.n == 5 and g.m == 10

    def test_disjoint_triangles(self):
        g, _ = dual_graph(Complex([[1, 2, 3], [4, 5, 6]]))
        assert g.n == 2 and g.m == 0

    def test_not_pure(self):
        with pytest.raises(NotPure):
            dual_graph(Complex([[1, 2, 3], [3, 4]]))


class TestBetti:
    def test_sphere(self):
        assert betti(Complex(BD3), 2) == (1, 0, 1)

    @pytest.mark.parametrize("p,expected", [(2, (1, 1, 1)), (3, (1, 0, 0))])
    def test_projective_plane(self, p, expected):
        # oracle: dense boundary matrices written out explicitly
        assert betti_dense(rp2_6().facets, p) == expected
        assert betti(rp2_6(), p) == expected

    def test_torus(self):
        assert betti(torus_7(), 2) == (1, 2, 1)
        assert betti(torus_7(), 5) == (1, 2, 1)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_simplex_boundaries(self, d):
        expected = (1,) + (0,) * (d - 1) + (1,)
        assert betti(simplex_boundary(d + 1), 3) == expected

    def test_vector_type(self):
        b = betti(Complex(BD3), 7)
        assert isinstance(b, BettiVector) and b.p == 7 and b.betti == (1, 0, 1)

    def test_non_prime_field(self):
        with pytest.raises(ValueError):
            betti(Complex(BD3), 4)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.frozensets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=8),
           st.sampled_from([2, 3, 5]))
    def test_matches_dense_oracle(self, sets, p):
        fs = {tuple(sorted(s)) for s in sets}
        fs = [f for f in fs if not any(set(f) < set(g) for g in fs)]
        assert betti(Complex(fs), p).betti == betti_dense(fs, p)

    def test_euler_characteristic_agrees(self):
        for c in (rp2_6(), torus_7(), simplex_boundary(4)):
            b = betti(c, 2).betti
            assert sum((-1) ** k * x for k, x in enumerate(b)) == c.euler_characteristic()


class TestConnectedSum:
    def test_two_tetrahedron_boundaries(self):
        x = Complex(BD3)
        s = connected_sum(x, [1, 2, 3], x, [1, 2, 3], {1: 1, 2: 2, 3: 3})
        assert len(s.vertices) == 5 and len(s) == 6
        assert betti(s, 2) == (1, 0, 1)
        assert is_closed_pseudomanifold(s)

    def test_open_input(self):
        with pytest.raises(NotClosedPseudomanifold):
            connected_sum(simplex(2), [0, 1, 2], Complex(BD3), [1, 2, 3], {0: 1, 1: 2, 2: 3})

    def test_bad_bijection(self):
        x = Complex(BD3)
        with pytest.raises(ValueError):
            connected_sum(x, [1, 2, 3], x, [1, 2, 3], {1: 1, 2: 1, 3: 3})

    def test_torus_sum_adds_genus(self):
        t = torus_7()
        f = t.facets[0]
        s = connected_sum(t, f, t, f, dict(zip(f, f)))
        assert betti(s, 2) == (1, 4, 1)


def test_random_stellated_sphere_counts():
    rng = np.random.default_rng(3)
    for d in (2, 3):
        for n in range(5):
            c = random_stellated_sphere(d, n, rng)
            assert len(c) == d + 2 + n * d
            assert betti(c, 2).betti == (1,) + (0,) * (d - 1) + (1,)


def test_faces_and_f_vector():
    c = Complex(BD3)
    assert c.f_vector() == [4, 6, 4]
    assert c.faces(1) == sorted(itertools.combinations([1, 2, 3, 4], 2))
    assert c.has_face([2, 4]) and not c.has_face([1, 5])
