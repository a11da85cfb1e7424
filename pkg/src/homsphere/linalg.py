"""Dense linear algebra over prime fields and a Jacobi eigensolver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, NotPrime

_MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= _MAX_PRIME:
        raise NotPrime(f"prime {p} too large for int64 elimination")
    return p


@dataclass(frozen=True)
class GFMatrix:
    """Matrix over GF(p), entries stored reduced into ``[0, p)``."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        require_prime(self.p)
        a = np.atleast_2d(np.asarray(self.entries, dtype=np.int64)) % self.p
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def T(self) -> "GFMatrix":
        return GFMatrix(self.p, self.entries.T)

    def rank(self) -> int:
        return gf_rank(self)


def gf_rank(m, p: int | None = None) -> int:
    """Rank over GF(p) by row reduction.

    ``m`` is a :class:`GFMatrix` or anything ``np.asarray`` accepts, in which
    case ``p`` is required.
    """
    if isinstance(m, GFMatrix):
        p = m.p
        a = m.entries.copy()
    else:
        if p is None:
            raise TypeError("p is required for a plain array")
        p = require_prime(p)
        a = np.atleast_2d(np.asarray(m, dtype=np.int64)) % p
    if a.size == 0:
        return 0
    if p == 2:
        return _rank_gf2(a.astype(bool))
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[rank])) % p
        rank += 1
    return rank


def _rank_gf2(a: np.ndarray) -> int:
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            a[below] ^= a[rank]
        rank += 1
    return rank


class SymMatrix:
    """Real symmetric matrix; only the upper triangle is kept."""

    def __init__(self, upper: np.ndarray):
        upper = np.triu(np.asarray(upper, dtype=float))
        upper.setflags(write=False)
        self._upper = upper

    @classmethod
    def from_dense(cls, a, atol: float = 0.0) -> "SymMatrix":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(a, a.T, rtol=0.0, atol=atol):
            raise ValueError("matrix is not symmetric")
        return cls(a)

    @property
    def n(self) -> int:
        return self._upper.shape[0]

    def to_dense(self) -> np.ndarray:
        u = self._upper
        return u + np.triu(u, 1).T


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def sym_eigs(m, tol: float = 1e-10, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, ascending.

    Cyclic Jacobi in round-robin (parallel) ordering: each round applies
    ``n // 2`` disjoint plane rotations at once.  Iteration stops once the
    Frobenius norm of the off-diagonal part drops below ``tol``; by Weyl's
    inequality that also bounds the error of every returned eigenvalue.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = m.to_dense() if isinstance(m, SymMatrix) else SymMatrix.from_dense(m).to_dense()
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n <= 1:
        return np.diag(a).copy()
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off < tol:
            return np.sort(np.diag(a))
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = a[p, p], a[q, q]
            theta = (aqq - app) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    off = _off_norm(a)
    if off < tol:
        return np.sort(np.diag(a))
    raise NonConvergence(f"off-diagonal norm {off:.3e} after {max_sweeps} sweeps")
