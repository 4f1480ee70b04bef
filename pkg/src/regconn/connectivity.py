"""Exact edge/vertex connectivity, cut-edges and the Cheeger constant.

Flow and min-cut routines come with brute-force oracles (``brute_force_*``)
that share no code with them beyond the graph type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import InapplicableError, PropertyViolation, TooLargeError
from .graph import Multigraph, components, is_complete_underlying, is_connected, regular_degree
from .spectral import lambda2

BRUTE_EDGE_MAX_N = 20
BRUTE_VERTEX_MAX_N = 20
CHEEGER_MAX_N = 22
SANDWICH_TOL = 1e-8


def _need_two(g: Multigraph):
    if g.n < 2:
        raise InapplicableError("connectivity needs n >= 2")


# ---------------------------------------------------------------- edge connectivity

def stoer_wagner(g: Multigraph) -> tuple[int, list[int]]:
    """Global minimum cut weight (multiplicities as weights) and one side."""
    _need_two(g)
    w = g.mult.astype(np.int64).copy()
    groups = [[v] for v in range(g.n)]
    active = list(range(g.n))
    best, best_side = None, None
    while len(active) > 1:
        act = np.array(active)
        conn = np.zeros(g.n, dtype=np.int64)
        in_a = np.zeros(g.n, dtype=bool)
        prev = last = act[0]
        in_a[last] = True
        conn += w[last]
        for _ in range(len(active) - 1):
            cand = act[~in_a[act]]
            nxt = cand[np.argmax(conn[cand])]
            prev, last = last, nxt
            in_a[nxt] = True
            if len(cand) == 1:
                break
            conn += w[nxt]
        cut = int(conn[last])
        if best is None or cut < best:
            best, best_side = cut, sorted(groups[last])
        # merge last into prev
        w[prev] += w[last]
        w[:, prev] += w[:, last]
        w[prev, prev] = 0
        w[last, :] = 0
        w[:, last] = 0
        groups[prev].extend(groups[last])
        active.remove(int(last))
    return best, best_side


def edge_connectivity(g: Multigraph) -> int:
    """Minimum number of edges (with multiplicity) whose removal disconnects."""
    return stoer_wagner(g)[0]


def _subset_tables(g: Multigraph):
    """Boundary size and cardinality of every vertex subset (bitmask index)."""
    n = g.n
    a = g.mult
    deg = g.degrees
    size = 1 << n
    inner = np.zeros(size, dtype=np.int64)
    dsum = np.zeros(size, dtype=np.int64)
    card = np.zeros(size, dtype=np.int64)
    for k in range(n):
        lo = 1 << k
        wk = np.zeros(1, dtype=np.int64)
        for b in range(k):
            wk = np.concatenate([wk, wk + a[k, b]])
        inner[lo:2 * lo] = inner[:lo] + wk
        dsum[lo:2 * lo] = dsum[:lo] + deg[k]
        card[lo:2 * lo] = card[:lo] + 1
    return dsum - 2 * inner, card


def brute_force_edge_connectivity(g: Multigraph) -> int:
    """Minimum boundary over all 2^(n-1) - 1 proper bipartitions."""
    _need_two(g)
    if g.n > BRUTE_EDGE_MAX_N:
        raise TooLargeError(f"n={g.n} exceeds {BRUTE_EDGE_MAX_N}")
    boundary, _ = _subset_tables(g)
    # subsets not containing the top vertex, excluding the empty set
    return int(boundary[1:1 << (g.n - 1)].min())


# ---------------------------------------------------------------- vertex connectivity

def _local_vertex_connectivity(adj: np.ndarray, s: int, t: int) -> int:
    """Max number of internally disjoint s-t paths via vertex splitting."""
    n = adj.shape[0]
    big = n + 1
    rows, cols, caps = [], [], []
    for v in range(n):
        rows.append(2 * v)
        cols.append(2 * v + 1)
        caps.append(big if v in (s, t) else 1)
    iu, ju = np.nonzero(adj)
    for u, v in zip(iu.tolist(), ju.tolist()):
        rows.append(2 * u + 1)
        cols.append(2 * v)
        caps.append(big)
    cap = csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(2 * n, 2 * n))
    return int(maximum_flow(cap, 2 * s + 1, 2 * t).flow_value)


def vertex_connectivity(g: Multigraph) -> int:
    """Vertex connectivity of the underlying simple graph; K_n gives n-1.

    Even's scheme: some vertex among the first kappa+1 lies outside a minimum
    separator, and every vertex beyond it on the far side has a larger index.
    """
    _need_two(g)
    n = g.n
    adj = g.mult > 0
    if is_complete_underlying(g):
        return n - 1
    if not is_connected(g):
        return 0
    best = n - 1
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not adj[i, j]:
                best = min(best, _local_vertex_connectivity(adj, i, j))
        i += 1
    return best


def _connected_without(nbr_masks: list[int], removed: int, n: int) -> bool:
    alive = ((1 << n) - 1) & ~removed
    if alive == 0:
        return True
    start = alive & -alive
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr_masks[low.bit_length() - 1]
            f ^= low
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen == alive


def brute_force_vertex_connectivity(g: Multigraph) -> int:
    """Smallest vertex set whose removal disconnects the underlying graph."""
    _need_two(g)
    n = g.n
    if n > BRUTE_VERTEX_MAX_N:
        raise TooLargeError(f"n={n} exceeds {BRUTE_VERTEX_MAX_N}")
    masks = [sum(1 << u for u in range(n) if g.mult[v, u] > 0) for v in range(n)]
    for k in range(0, n - 1):
        for sub in combinations(range(n), k):
            removed = sum(1 << v for v in sub)
            if not _connected_without(masks, removed, n):
                return k
    return n - 1


# ---------------------------------------------------------------- cut edges

def cut_edges(g: Multigraph) -> list[tuple[int, int]]:
    """Single edges whose removal disconnects a connected multigraph."""
    if not is_connected(g):
        raise InapplicableError("cut_edges requires a connected multigraph")
    out = []
    for u, v, m in g.edges():
        if m == 1 and not is_connected(g.with_edge_delta(u, v, -1)):
            out.append((u, v))
    return out


def smallest_component_after(g: Multigraph, edge: tuple[int, int]) -> int:
    u, v = edge
    return min(len(c) for c in components(g.with_edge_delta(u, v, -1)))


def min_sc_cut_edge(g: Multigraph) -> tuple[tuple[int, int], int] | None:
    """Cut-edge minimising the smaller side (ties: lexicographic edge)."""
    best = None
    for e in cut_edges(g):
        sc = smallest_component_after(g, e)
        if best is None or sc < best[1]:
            best = (e, sc)
    return best


# ---------------------------------------------------------------- Cheeger

def cheeger_constant(g: Multigraph) -> float:
    """min [S, S^c] / |S| over non-empty S with |S| <= n/2 (exhaustive)."""
    if g.n > CHEEGER_MAX_N:
        raise TooLargeError(f"n={g.n} exceeds {CHEEGER_MAX_N}")
    if g.n < 2:
        raise InapplicableError("Cheeger constant needs n >= 2")
    boundary, card = _subset_tables(g)
    ok = (card >= 1) & (2 * card <= g.n)
    return float((boundary[ok] / card[ok]).min())


def cheeger_exact(g: Multigraph):
    """Cheeger constant as an exact ``Fraction``."""
    from fractions import Fraction

    boundary, card = _subset_tables(g)
    ok = np.nonzero((card >= 1) & (2 * card <= g.n))[0]
    ratios = boundary[ok] / card[ok]
    i = ok[int(np.argmin(ratios))]
    return Fraction(int(boundary[i]), int(card[i]))


def cheeger_sandwich(g: Multigraph, d: int | None = None, tol: float = SANDWICH_TOL):
    """``((d - lambda2)/2, h, sqrt(2d(d - lambda2)))``; raises if violated."""
    rd = regular_degree(g)
    if rd is None or (d is not None and rd != d):
        raise InapplicableError("Cheeger sandwich needs a d-regular multigraph")
    d = rd
    gap = max(0.0, d - lambda2(g))
    lower, upper = gap / 2.0, math.sqrt(2.0 * d * gap)
    h = cheeger_constant(g)
    if not (lower - tol <= h <= upper + tol):
        raise PropertyViolation(f"Cheeger sandwich fails: {lower} <= {h} <= {upper}")
    return lower, h, upper


# ---------------------------------------------------------------- report

@dataclass(frozen=True)
class ConnectivityReport:
    kappa: int
    kappa_prime: int
    is_connected: bool
    cut_edges: list = field(default_factory=list)
    sc_min: int = 0


def connectivity_report(g: Multigraph) -> ConnectivityReport:
    kp = edge_connectivity(g)
    k = vertex_connectivity(g)
    conn = kp >= 1
    ce: list = []
    sc = 0
    if conn and kp == 1:
        ce = cut_edges(g)
        if ce:
            sc = min(smallest_component_after(g, e) for e in ce)
    return ConnectivityReport(k, kp, conn, ce, sc)
