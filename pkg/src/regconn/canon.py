"""Canonical labelling of vertex-coloured multigraphs.

Equitable partition refinement on the multiplicity matrix followed by an
individualise-and-refine search tree.  The canonical form is the smallest
leaf certificate; automorphisms discovered at equal leaves prune siblings
lying in a common orbit of the pointwise stabiliser of the current prefix.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

from .graph import Multigraph

CanonicalKey = bytes


def _neighbour_lists(g: Multigraph) -> list[list[tuple[int, int]]]:
    rows = g.mult.tolist()
    return [[(u, m) for u, m in enumerate(row) if m] for row in rows]


def _refine(cells: list[list[int]], nbrs) -> list[list[int]]:
    """Split cells until every vertex in a cell sees the same multiset of
    (cell, multiplicity) pairs.  Cell order stays labelling-invariant."""
    n = len(nbrs)
    cell_of = [0] * n
    while True:
        for ci, c in enumerate(cells):
            for v in c:
                cell_of[v] = ci
        out: list[list[int]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict = {}
            for v in c:
                sig = tuple(sorted((cell_of[u], m) for u, m in nbrs[v]))
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(c)
                continue
            changed = True
            for sig in sorted(groups):
                out.append(groups[sig])
        cells = out
        if not changed:
            return cells


class _Orbits:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_labeling(g: Multigraph, colors: Sequence[int] | None = None):
    """Return ``(certificate, order)`` where ``order[i]`` is the original
    vertex placed at canonical position ``i``."""
    n = g.n
    mat = g.mult.tolist()
    nbrs = _neighbour_lists(g)
    col = list(colors) if colors is not None else [0] * n
    if len(col) != n:
        raise ValueError("colour list length must equal n")

    start: dict = {}
    for v in range(n):
        start.setdefault(col[v], []).append(v)
    cells0 = [start[c] for c in sorted(start)]

    best_cert = None
    best_perm = None
    first_cert = None
    first_perm = None
    autos: list[list[int]] = []

    def certificate(perm):
        colseq = tuple(col[v] for v in perm)
        rows = tuple(tuple(mat[perm[i]][perm[j]] for j in range(i + 1, n)) for i in range(n - 1))
        return colseq, rows

    def record_auto(p_from, p_to):
        gamma = [0] * n
        for a, b in zip(p_from, p_to):
            gamma[a] = b
        autos.append(gamma)

    def search(cells, prefix):
        nonlocal best_cert, best_perm, first_cert, first_perm
        cells = _refine(cells, nbrs)
        if len(cells) == n:
            perm = [c[0] for c in cells]
            cert = certificate(perm)
            if first_cert is None:
                first_cert, first_perm = cert, perm
                best_cert, best_perm = cert, perm
                return
            if cert == first_cert:
                record_auto(first_perm, perm)
            elif cert == best_cert:
                record_auto(best_perm, perm)
            elif cert < best_cert:
                best_cert, best_perm = cert, perm
            return
        ti = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[ti]
        tried: list[int] = []
        orb, seen_autos = None, -1
        for v in sorted(target):
            if tried and autos:
                if seen_autos != len(autos):
                    orb = _Orbits(n)
                    for gamma in autos:
                        if all(gamma[p] == p for p in prefix):
                            for x in range(n):
                                if gamma[x] != x:
                                    orb.union(x, gamma[x])
                    seen_autos = len(autos)
                rv = orb.find(v)
                if any(orb.find(w) == rv for w in tried):
                    continue
            rest = [u for u in target if u != v]
            child = cells[:ti] + [[v], rest] + cells[ti + 1:]
            search(child, prefix + [v])
            tried.append(v)

    search(cells0, [])
    return best_cert, best_perm


def _encode(cert) -> bytes:
    colseq, rows = cert
    parts = [str(len(colseq)), ",".join(map(str, colseq))]
    parts.extend(",".join(map(str, r)) for r in rows)
    return ";".join(parts).encode("ascii")


def canonical_key(g: Multigraph, colors: Sequence[int] | None = None) -> CanonicalKey:
    """Byte string equal for two (coloured) multigraphs iff they are isomorphic."""
    cert, _ = canonical_labeling(g, colors)
    return _encode(cert)


def canonical_key_and_order(g: Multigraph, colors: Sequence[int] | None = None):
    cert, order = canonical_labeling(g, colors)
    return _encode(cert), order


def canonical_form(g: Multigraph) -> Multigraph:
    """The representative of ``g``'s isomorphism class in canonical labelling."""
    _, order = canonical_labeling(g)
    return g.permute(order)


def key_digest(key: CanonicalKey) -> str:
    """Short stable hex name for a key (file names, manifest rows)."""
    return hashlib.sha256(key).hexdigest()[:24]
