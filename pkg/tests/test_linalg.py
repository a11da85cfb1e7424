import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homsphere.errors import NotPrime
from homsphere.linalg import GFMatrix, SymMatrix, gf_rank, is_prime, require_prime, sym_eigs

from .oracles import dense_rank_mod_p


def test_primes():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(NotPrime):
        require_prime(9)


@pytest.mark.parametrize(
    "m,p,expected",
    [(np.eye(3, dtype=int), 5, 3), (np.zeros((4, 4), dtype=int), 2, 0), ([[1, 1], [1, 1]], 2, 1)],
)
def test_rank_examples(m, p, expected):
    assert gf_rank(m, p) == expected


def test_rank_depends_on_field():
    m = [[1, 1], [1, -1]]
    assert gf_rank(m, 2) == 1
    assert gf_rank(m, 3) == 2


def test_gfmatrix_reduces_entries():
    g = GFMatrix(3, [[3, 5], [6, 10]])
    assert g.entries.tolist() == [[0, 2], [0, 1]]
    assert gf_rank(g) == 1 and g.T.rank() == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.sampled_from([2, 3, 5, 7]), st.data())
def test_rank_matches_naive_elimination(r, c, p, data):
    rows = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r))
    assert gf_rank(rows, p) == dense_rank_mod_p(rows, p)


def test_eigs_examples():
    np.testing.assert_allclose(sym_eigs(np.diag([1.0, 2.0, 3.0])), [1, 2, 3], atol=1e-10)
    np.testing.assert_allclose(sym_eigs([[0.0, 1.0], [1.0, 0.0]]), [-1, 1], atol=1e-10)


def test_k4_laplacian():
    lap = 4 * np.eye(4) - np.ones((4, 4))
    # characteristic polynomial of K4's Laplacian is x (x - 4)^3
    np.testing.assert_allclose(np.poly(lap), np.poly([0, 4, 4, 4]), atol=1e-9)
    np.testing.assert_allclose(sym_eigs(lap), [0, 4, 4, 4], atol=1e-10)


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymMatrix.from_dense([[1.0, 2.0], [0.0, 1.0]])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_eigs_match_lapack(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    np.testing.assert_allclose(sym_eigs(a, tol=1e-10), np.linalg.eigvalsh(a), atol=1e-8)
