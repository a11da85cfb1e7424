"""Expansion measures: normalized-Laplacian spectral gap and exact edge expansion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import TooLarge
from ..linalg import sym_eigs
from .graph import Graph

CHEEGER_MAX_N = 24


def normalized_laplacian(g: Graph) -> np.ndarray:
    """``I - D^{-1/2} A D^{-1/2}``; rows of isolated vertices are zero."""
    a = g.adjacency()
    deg = a.sum(axis=1)
    inv = np.zeros_like(deg)
    nz = deg > 0
    inv[nz] = 1.0 / np.sqrt(deg[nz])
    lap = -(inv[:, None] * a * inv[None, :])
    lap[np.diag_indices_from(lap)] = nz.astype(float)
    return lap


def laplacian_spectrum(g: Graph, tol: float = 1e-10) -> np.ndarray:
    return sym_eigs(normalized_laplacian(g), tol=tol)


def lambda2(g: Graph, tol: float = 1e-10) -> float:
    """Second-smallest eigenvalue of the normalized Laplacian.

    It is zero exactly when the graph is disconnected.
    """
    if g.n < 2:
        raise ValueError("lambda2 needs at least two vertices")
    ev = laplacian_spectrum(g, tol=tol)
    val = float(ev[1])
    return 0.0 if abs(val) < 1e-12 else val


def cheeger_exact(g: Graph) -> Fraction:
    """Edge expansion ``min |E(A, A^c)| / |A|`` over ``0 < |A| <= n/2``.

    Exhaustive over vertex subsets, evaluated in vectorised chunks of bitmasks.
    """
    if g.n > CHEEGER_MAX_N:
        raise TooLarge(f"cheeger_exact limited to n <= {CHEEGER_MAX_N}, got {g.n}")
    if g.n < 2:
        raise ValueError("cheeger_exact needs at least two vertices")
    g.require_connected()
    n = g.n
    el = np.array(g.edge_list, dtype=np.int64).reshape(-1, 2)
    best_num, best_den = None, None
    total = 1 << n
    chunk = 1 << 16
    bits = np.arange(n, dtype=np.int64)
    for start in range(1, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        member = (masks[:, None] >> bits[None, :]) & 1
        size = member.sum(axis=1)
        keep = size <= n // 2
        if not keep.any():
            continue
        member, size = member[keep], size[keep]
        cut = (member[:, el[:, 0]] ^ member[:, el[:, 1]]).sum(axis=1)
        # compare cut/size fractions exactly via cross multiplication
        i = int(np.argmin(cut / size))
        cand = [j for j in np.flatnonzero(cut * size[i] == cut[i] * size)]
        j = cand[0]
        num, den = int(cut[j]), int(size[j])
        if best_num is None or num * best_den < best_num * den:
            best_num, best_den = num, den
    return Fraction(best_num, best_den)


@dataclass
class SpectralReport:
    """Expansion summary for one graph.

    ``h_exact`` is filled only when the graph is small enough for exhaustive
    search.  ``alpha`` is the expansion bound the caller is testing against.
    """

    lambda2: float
    h_exact: Fraction | None = None
    alpha: float | None = None
    n: int = 0
    max_degree: int = 0
    label: str = ""

    def sandwich_literal(self, slack: float = 1e-6) -> bool | None:
        """``lambda2/2 <= h <= sqrt(2 lambda2) + slack``.

        Only valid for graphs with maximum degree at most 1 in general; kept
        because it is what downstream checks ask for verbatim.
        """
        if self.h_exact is None:
            return None
        h = float(self.h_exact)
        return self.lambda2 / 2 - slack <= h <= math.sqrt(2 * self.lambda2) + slack

    def sandwich_scaled(self, slack: float = 1e-6) -> bool | None:
        """Degree-scaled Cheeger inequality ``lambda2/2 <= h <= dmax sqrt(2 lambda2)``.

        Edge expansion is at most ``dmax`` times conductance, and conductance
        obeys the usual ``sqrt(2 lambda2)`` upper bound, so this always holds.
        """
        if self.h_exact is None:
            return None
        h = float(self.h_exact)
        return self.lambda2 / 2 - slack <= h <= self.max_degree * math.sqrt(2 * self.lambda2) + slack


def spectral_report(g: Graph, alpha: float | None = None, exact_limit: int = CHEEGER_MAX_N,
                    label: str = "") -> SpectralReport:
    lam = lambda2(g) if g.n >= 2 else 0.0
    h = None
    if 2 <= g.n <= exact_limit and g.is_connected():
        h = cheeger_exact(g)
    return SpectralReport(lam, h, alpha, g.n, g.max_degree(), label)
