"""Dense symmetric eigenvalues, quotient matrices and interlacing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InapplicableError, InvalidPartitionError
from .graph import Multigraph, Partition

SYM_TOL = 1e-12
OFF_TOL = 1e-12
MAX_SWEEPS = 100
INTERLACE_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted in descending order."""

    values: tuple[float, ...]
    kind: str = "adjacency"

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def ascending(self) -> tuple[float, ...]:
        return tuple(reversed(self.values))


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    """n-1 (or n) rounds of disjoint index pairs covering every pair once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(a: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS,
                       vectors: bool = False):
    """Cyclic Jacobi on a dense symmetric matrix.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the rotations of one round commute and are applied as a single
    orthogonal similarity.  Stops when the off-diagonal Frobenius norm drops
    below ``tol`` (relative to ``max(1, ||A||_F)``).
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n) if vectors else None
    if n == 1:
        return (a.diagonal().copy(), v) if vectors else a.diagonal().copy()
    scale = max(1.0, float(np.linalg.norm(a)))
    rounds = _round_robin(n)
    idx = [(np.array([p for p, _ in r]), np.array([q for _, q in r])) for r in rounds]
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.sqrt(np.sum(a[off_mask] ** 2)) < tol * scale:
            break
        for p, q in idx:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            app, aqq = a[p, p], a[q, q]
            theta = np.where(active, (aqq - app) / (2.0 * np.where(active, apq, 1.0)), 0.0)
            t = np.where(active, np.sign(theta + (theta == 0)) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a = 0.5 * (a + a.T)
            if vectors:
                v = v @ rot
    w = a.diagonal().copy()
    if vectors:
        return w, v
    return w


def eigenvalues_symmetric(m, kind: str = "matrix") -> Spectrum:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0.0, atol=SYM_TOL):
        raise ValueError("matrix is not symmetric")
    w = jacobi_eigenvalues(a)
    return Spectrum(tuple(float(x) for x in sorted(w, reverse=True)), kind)


def laplacian(g: Multigraph) -> np.ndarray:
    return np.diag(g.degrees).astype(float) - g.mult


def adjacency_spectrum(g: Multigraph) -> Spectrum:
    return eigenvalues_symmetric(g.mult, "adjacency")


def laplacian_spectrum(g: Multigraph) -> Spectrum:
    return eigenvalues_symmetric(laplacian(g), "laplacian")


def lambda2(g: Multigraph) -> float:
    """Second entry of the descending adjacency spectrum (ties included)."""
    if g.n < 2:
        raise InapplicableError("lambda2 needs n >= 2")
    return adjacency_spectrum(g).values[1]


def mu2(g: Multigraph) -> float:
    """Second-smallest Laplacian eigenvalue (algebraic connectivity)."""
    if g.n < 2:
        raise InapplicableError("mu2 needs n >= 2")
    return laplacian_spectrum(g).ascending()[1]


# ---------------------------------------------------------------- quotients

@dataclass(frozen=True)
class QuotientMatrix:
    """Exact rational quotient matrix of a vertex partition."""

    entries: tuple[tuple[Fraction, ...], ...]
    block_sizes: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.block_sizes)

    def as_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def symmetrized(self) -> np.ndarray:
        """``D^{1/2} Q D^{-1/2}`` with D = diag(block sizes); symmetric and
        similar to Q."""
        q = self.as_float()
        sz = np.sqrt(np.array(self.block_sizes, dtype=float))
        return q * sz[:, None] / sz[None, :]

    def spectrum(self) -> Spectrum:
        b = self.symmetrized()
        return eigenvalues_symmetric(0.5 * (b + b.T), "quotient")


def quotient_matrix(g: Multigraph, p: Partition) -> QuotientMatrix:
    """Entry (i, j) is [V_i, V_j] / |V_i|; diagonal 2|E(G[V_i])| / |V_i|."""
    if p.n != g.n:
        raise InvalidPartitionError(f"partition covers {p.n} vertices, graph has {g.n}")
    lab = p.labels()
    s = len(p)
    ind = np.zeros((s, g.n), dtype=np.int64)
    ind[lab, np.arange(g.n)] = 1
    counts = ind @ g.mult @ ind.T
    sizes = p.sizes
    entries = tuple(tuple(Fraction(int(counts[i, j]), sizes[i]) for j in range(s)) for i in range(s))
    return QuotientMatrix(entries, tuple(sizes))


def interlaces(inner: Sequence[float] | Spectrum, outer: Sequence[float] | Spectrum,
               tol: float = INTERLACE_TOL) -> bool:
    """``a_i >= b_i >= a_{n-m+i}`` for descending ``a`` (outer), ``b`` (inner)."""
    b = sorted(inner.values if isinstance(inner, Spectrum) else inner, reverse=True)
    a = sorted(outer.values if isinstance(outer, Spectrum) else outer, reverse=True)
    m, n = len(b), len(a)
    if m >= n:
        raise InapplicableError(f"inner length {m} must be smaller than outer length {n}")
    return all(a[i] + tol >= b[i] >= a[n - m + i] - tol for i in range(m))
