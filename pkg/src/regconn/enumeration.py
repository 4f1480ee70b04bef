"""Constrained enumeration of subcubic multigraphs and the 3-regular
families with a cut-edge.

Pipeline: simple graphs with degree sequence ``{3^(j-2l-1), 2^(2l+1)}``
-> keep the 2-connected ones whose degree-2 subgraph is a spanning cycle or
has exactly one odd path -> double the edges of every maximum matching of
that subgraph -> ``B_j`` (one degree-2 vertex, bridgeless) -> join pairs of
``B_j`` members by cut-edges, optionally through a small gadget -> ``A_i``.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .canon import canonical_key, canonical_key_and_order, canonical_labeling, key_digest
from .connectivity import cut_edges, edge_connectivity, smallest_component_after, vertex_connectivity
from .errors import InapplicableError, InfeasibleError, PropertyViolation
from .graph import Multigraph, components, disjoint_union, from_edges, is_connected, write_mg
from .spectral import lambda2

B_ORDERS = (5, 7, 9, 11)
A_ORDERS = (10, 12, 14, 16, 18)
VERIFY_TOL = 1e-9


# ---------------------------------------------------------------- degree sequences

def is_graphical(seq: Sequence[int]) -> bool:
    """Erdos-Gallai test for simple graphs."""
    d = sorted(seq, reverse=True)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    for k in range(1, n + 1):
        lhs = sum(d[:k])
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if lhs > rhs:
            return False
    return True


def _feasible(mat, deficit, done, max_mult) -> bool:
    todo = [v for v in range(len(deficit)) if not done[v]]
    if sum(deficit[v] for v in todo) % 2:
        return False
    for w in todo:
        cap = sum(min(deficit[u], max_mult - mat[w][u]) for u in todo if u != w)
        if deficit[w] > cap:
            return False
    return True


def _closed_component(mat, done) -> bool:
    """True when some component consists only of finished vertices but does
    not span the whole graph."""
    n = len(mat)
    g_comps = components(Multigraph(mat))
    if len(g_comps) == 1:
        return False
    return any(all(done[v] for v in c) for c in g_comps)


def _fillings(deficit_v, caps):
    """All vectors x with 0 <= x_i <= caps[i] and sum(x) == deficit_v."""
    out = []
    cur = [0] * len(caps)
    suffix = [0] * (len(caps) + 1)
    for i in range(len(caps) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]

    def rec(i, left):
        if left == 0:
            out.append(tuple(cur))
            return
        if i == len(caps) or suffix[i] < left:
            return
        for x in range(min(caps[i], left), -1, -1):
            cur[i] = x
            rec(i + 1, left - x)
        cur[i] = 0

    rec(0, deficit_v)
    return out


def gen_degree_sequence_multigraphs(degrees: Sequence[int], max_mult: int = 1,
                                    connected_only: bool = False) -> list[Multigraph]:
    """All non-isomorphic loopless multigraphs with the given degrees and
    multiplicities at most ``max_mult``.

    Vertices are completed one at a time (all remaining edges at the chosen
    vertex are added in every feasible way); after each completion the
    partial graphs are reduced to isomorphism classes, with each vertex
    coloured by its target degree and completion flag.  Any unfinished vertex
    can be completed next, so every target graph is reached.  Output is
    sorted by canonical key, each graph in canonical labelling.
    """
    n = len(degrees)
    if n == 0:
        return []
    if sum(degrees) % 2 or any(x < 0 for x in degrees):
        raise InfeasibleError(f"degree sequence {list(degrees)} is not realisable")
    targets0 = tuple(sorted(degrees, reverse=True))
    empty = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    level = {None: (empty, targets0, tuple(False for _ in range(n)))}
    for _ in range(n):
        nxt: dict = {}
        for mat, targets, done in level.values():
            deg = [sum(r) for r in mat]
            deficit = [targets[v] - deg[v] for v in range(n)]
            todo = [v for v in range(n) if not done[v]]
            touching = [v for v in todo if any(mat[v][u] for u in range(n) if done[u])]
            v = (touching or todo)[0]
            others = [u for u in todo if u != v]
            caps = [min(deficit[u], max_mult - mat[v][u]) for u in others]
            for x in _fillings(deficit[v], caps):
                m2 = [list(r) for r in mat]
                for u, k in zip(others, x):
                    if k:
                        m2[v][u] += k
                        m2[u][v] += k
                done2 = tuple(done[w] or w == v for w in range(n))
                deficit2 = [targets[w] - sum(m2[w]) for w in range(n)]
                if not _feasible(m2, deficit2, done2, max_mult):
                    continue
                if connected_only and _closed_component(m2, done2):
                    continue
                g = Multigraph(m2)
                colors = [targets[w] * 2 + int(done2[w]) for w in range(n)]
                cert, order = canonical_labeling(g, colors)
                if cert in nxt:
                    continue
                cm = tuple(tuple(m2[order[i]][order[j]] for j in range(n)) for i in range(n))
                nxt[cert] = (cm, tuple(targets[w] for w in order), tuple(done2[w] for w in order))
        level = nxt
    graphs = [Multigraph(mat) for mat, _, _ in level.values()]
    if connected_only:
        graphs = [g for g in graphs if is_connected(g)]
    return _sorted_canonical(graphs)


def _sorted_canonical(graphs: Iterable[Multigraph]) -> list[Multigraph]:
    keyed = {}
    for g in graphs:
        k, order = canonical_key_and_order(g)
        if k not in keyed:
            keyed[k] = g.permute(order)
    return [keyed[k] for k in sorted(keyed)]


def gen_simple_graphs(degree_seq: Sequence[int]) -> list[Multigraph]:
    """All non-isomorphic simple graphs with the given degree sequence."""
    if not is_graphical(degree_seq):
        raise InfeasibleError(f"degree sequence {list(degree_seq)} is not graphical")
    return gen_degree_sequence_multigraphs(degree_seq, max_mult=1)


def brute_force_simple_graphs(degree_seq: Sequence[int]) -> list[Multigraph]:
    """Oracle: scan every edge set of the right size, keep matching degree
    sequences, reduce by isomorphism."""
    n = len(degree_seq)
    target = sorted(degree_seq, reverse=True)
    m = sum(degree_seq) // 2
    pairs = list(combinations(range(n), 2))
    found = {}
    for es in combinations(pairs, m):
        deg = [0] * n
        for u, v in es:
            deg[u] += 1
            deg[v] += 1
        if sorted(deg, reverse=True) != target:
            continue
        g = from_edges(n, es)
        found.setdefault(canonical_key(g), g)
    return _sorted_canonical(found.values())


# ---------------------------------------------------------------- degree-2 subgraph

@dataclass(frozen=True)
class Component:
    kind: str                  # "path" or "cycle"
    vertices: tuple[int, ...]  # in path/cycle order

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class DegreeTwoProfile:
    components: tuple[Component, ...]
    n: int

    def summary(self) -> list[tuple[str, int]]:
        return [(c.kind, c.length) for c in self.components]

    @property
    def odd_paths(self) -> list[Component]:
        return [c for c in self.components if c.kind == "path" and c.length % 2 == 1]


def degree_two_profile(h: Multigraph) -> DegreeTwoProfile:
    """Components of the subgraph induced by the degree-2 vertices."""
    deg2 = [v for v in range(h.n) if h.degrees[v] == 2]
    inside = set(deg2)
    nb = {v: [u for u in h.neighbors(v) if u in inside] for v in deg2}
    seen: set = set()
    comps = []
    for s in deg2:
        if s in seen:
            continue
        # walk to an end if the component is a path
        comp_nodes = []
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp_nodes.append(x)
            for u in nb[x]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        ends = [x for x in comp_nodes if len(nb[x]) < 2]
        is_cycle = not ends
        start = min(comp_nodes) if is_cycle else min(ends)
        order = [start]
        prev = None
        cur = start
        while True:
            nxts = [u for u in nb[cur] if u != prev and u not in order]
            if not nxts:
                break
            prev, cur = cur, min(nxts)
            order.append(cur)
        comps.append(Component("cycle" if is_cycle else "path", tuple(order)))
    comps.sort(key=lambda c: (c.kind, c.length, c.vertices))
    return DegreeTwoProfile(tuple(comps), h.n)


def classify_f(h: Multigraph) -> tuple[DegreeTwoProfile, str, str]:
    """``(profile, verdict, reason)`` with verdict ``keep`` or ``reject``."""
    prof = degree_two_profile(h)
    cycles = [c for c in prof.components if c.kind == "cycle"]
    if len(cycles) == 1 and len(prof.components) == 1 and cycles[0].length == h.n:
        return prof, "keep", "spanning cycle"
    if cycles:
        return prof, "reject", "short cycle"
    odd = len(prof.odd_paths)
    if odd == 1:
        return prof, "keep", "one odd path"
    if odd == 0:
        return prof, "reject", "no odd path"
    return prof, "reject", "multiple odd paths"


def _path_max_matchings(vs: Sequence[int]) -> list[tuple]:
    k = len(vs)
    if k % 2 == 0:
        return [tuple((vs[i], vs[i + 1]) for i in range(0, k, 2))]
    out = []
    for skip in range(0, k, 2):
        left = [(vs[i], vs[i + 1]) for i in range(0, skip, 2)]
        right = [(vs[i], vs[i + 1]) for i in range(skip + 1, k, 2)]
        out.append(tuple(left + right))
    return out


def _cycle_max_matchings(vs: Sequence[int]) -> list[tuple]:
    k = len(vs)
    if k % 2 == 0:
        a = tuple((vs[i], vs[i + 1]) for i in range(0, k, 2))
        b = tuple((vs[i], vs[(i + 1) % k]) for i in range(1, k, 2))
        return [a, b]
    out = []
    for skip in range(k):
        rest = [vs[(skip + 1 + i) % k] for i in range(k - 1)]
        out.extend(_path_max_matchings(rest))
    return out


def max_matchings_of_f(profile: DegreeTwoProfile) -> list[tuple]:
    """Every maximum matching of a disjoint union of paths and cycles."""
    per = []
    for c in profile.components:
        if c.kind == "path":
            per.append(_path_max_matchings(c.vertices))
        else:
            per.append(_cycle_max_matchings(c.vertices))
    out = []
    for combo in product(*per):
        edges = tuple(sorted(tuple(sorted(e)) for part in combo for e in part))
        out.append(edges)
    return sorted(set(out))


def lift_to_M(h: Multigraph, matchings: Iterable[Sequence[tuple[int, int]]]) -> list[Multigraph]:
    """Double the matched edges of ``h``; one representative per class."""
    out = []
    for mt in matchings:
        a = h.mult.copy()
        for u, v in mt:
            if a[u, v] != 1:
                raise InapplicableError(f"matching edge {u}-{v} is not a single edge of h")
            a[u, v] = a[v, u] = 2
        out.append(Multigraph(a))
    return _sorted_canonical(out)


# ---------------------------------------------------------------- B_j

def s_degree_sequence(l: int, j: int) -> list[int]:
    return [3] * (j - 2 * l - 1) + [2] * (2 * l + 1)


def _check_family_params(l: int, j: int):
    if j not in B_ORDERS:
        raise InapplicableError(f"j must be one of {B_ORDERS}")
    if not (0 <= l <= (j - 1) // 2):
        raise InapplicableError(f"l must lie in [0, {(j - 1) // 2}]")


def build_S(l: int, j: int) -> list[Multigraph]:
    _check_family_params(l, j)
    return gen_simple_graphs(s_degree_sequence(l, j))


def is_two_connected(h: Multigraph) -> bool:
    return h.n >= 3 and vertex_connectivity(h) >= 2


@dataclass
class MStageLog:
    s_count: int = 0
    two_connected: int = 0
    kept: int = 0
    rejected: dict = field(default_factory=dict)


def build_M(l: int, j: int, log: MStageLog | None = None) -> list[Multigraph]:
    """Members of B_j with exactly ``l`` double edges."""
    _check_family_params(l, j)
    out = []
    for h in build_S(l, j):
        if log is not None:
            log.s_count += 1
        if not is_two_connected(h):
            continue
        if log is not None:
            log.two_connected += 1
        prof, verdict, reason = classify_f(h)
        if verdict != "keep":
            if log is not None:
                log.rejected[reason] = log.rejected.get(reason, 0) + 1
            continue
        if log is not None:
            log.kept += 1
        mts = [m for m in max_matchings_of_f(prof) if len(m) == l]
        out.extend(lift_to_M(h, mts))
    return _sorted_canonical(out)


def is_B_member(g: Multigraph) -> bool:
    deg = sorted(int(x) for x in g.degrees)
    if deg != [2] + [3] * (g.n - 1):
        return False
    return is_connected(g) and edge_connectivity(g) >= 2


_B_CACHE: dict = {}


def build_B(j: int) -> list[Multigraph]:
    """All connected bridgeless multigraphs with degrees {3^(j-1), 2}."""
    if j not in B_ORDERS:
        raise InapplicableError(f"j must be one of {B_ORDERS}")
    if j not in _B_CACHE:
        members = []
        for l in range((j - 1) // 2 + 1):
            members.extend(build_M(l, j))
        members = _sorted_canonical(members)
        for g in members:
            if not is_B_member(g) or int(g.mult.max()) > 2:
                raise PropertyViolation(f"B_{j} member fails its structural predicate")
        _B_CACHE[j] = members
    return list(_B_CACHE[j])


def brute_force_B5(max_mult: int = 3) -> list[Multigraph]:
    """Oracle: every symmetric 5x5 multiplicity matrix with entries <=
    ``max_mult`` and row sums {3,3,3,3,2}, kept if connected and bridgeless."""
    n = 5
    pairs = list(combinations(range(n), 2))
    found = {}
    deg = [0] * n
    vals = [0] * len(pairs)

    def rec(k):
        if k == len(pairs):
            if sorted(deg) == [2, 3, 3, 3, 3]:
                g = from_edges(n, [(u, v, m) for (u, v), m in zip(pairs, vals) if m])
                if is_connected(g) and edge_connectivity(g) >= 2:
                    found.setdefault(canonical_key(g), g)
            return
        u, v = pairs[k]
        for m in range(max_mult + 1):
            if deg[u] + m > 3 or deg[v] + m > 3:
                break
            vals[k] = m
            deg[u] += m
            deg[v] += m
            rec(k + 1)
            deg[u] -= m
            deg[v] -= m
        vals[k] = 0

    rec(0)
    return _sorted_canonical(found.values())


# ---------------------------------------------------------------- gadgets and joins

def gadget(name: str) -> tuple[Multigraph, int, int]:
    """``(J, v2, v2')`` for J_2, J_4 or J_4'."""
    if name == "J2":
        return from_edges(2, [(0, 1, 2)]), 0, 1
    if name == "J4":
        return from_edges(4, [(0, 1, 2), (2, 3, 2), (1, 2, 1)]), 0, 3
    if name == "J4p":
        return from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]), 0, 3
    raise InapplicableError(f"unknown gadget {name!r}")


def degree_two_vertex(h: Multigraph) -> int:
    vs = [v for v in range(h.n) if h.degrees[v] == 2]
    if len(vs) != 1:
        raise InapplicableError(f"operand has {len(vs)} degree-2 vertices, expected exactly 1")
    return vs[0]


def join(left: Multigraph, right: Multigraph, bridge: str | None = None) -> Multigraph:
    """Connect the degree-2 vertices of ``left`` and ``right`` by a cut-edge,
    or through gadget ``bridge`` by two cut-edges."""
    a, b = degree_two_vertex(left), degree_two_vertex(right)
    if bridge is None:
        g = disjoint_union(left, right)
        return g.with_edge_delta(a, left.n + b, 1)
    j, x, y = gadget(bridge)
    g = disjoint_union(left, j, right)
    g = g.with_edge_delta(a, left.n + x, 1)
    return g.with_edge_delta(left.n + y, left.n + j.n + b, 1)


# (left order, bridge, right order) for each A_i
A_RECIPES = {
    10: [(5, None, 5)],
    12: [(5, None, 7), (5, "J2", 5)],
    14: [(7, None, 7)],
    16: [(7, None, 9), (7, "J2", 7)],
    18: [(7, None, 11), (9, None, 9), (7, "J2", 9), (7, "J4", 7), (7, "J4p", 7)],
}

SC_BOUND = {10: 5, 12: 5, 14: 7, 16: 7, 18: 7}


def is_A_member(g: Multigraph, i: int) -> bool:
    """3-regular, edge-connectivity 1, every cut-edge leaves components of
    order at least 5 (i <= 12) or 7 (i >= 14)."""
    if g.n != i or not (g.degrees == 3).all() or edge_connectivity(g) != 1:
        return False
    return all(smallest_component_after(g, e) >= SC_BOUND[i] for e in cut_edges(g))


def build_A(i: int, sample: int | None = None, seed: int = 0) -> list[Multigraph]:
    """Members of A_i assembled from the B_j families.

    ``sample`` keeps a seeded random subset of the join pairs per recipe (for
    budget-limited runs); ``None`` is exhaustive.
    """
    if i not in A_RECIPES:
        raise InapplicableError(f"i must be one of {A_ORDERS}")
    rng = np.random.default_rng(seed)
    out = []
    for lj, bridge, rj in A_RECIPES[i]:
        left, right = build_B(lj), build_B(rj)
        if lj == rj:
            pairs = [(p, q) for p in range(len(left)) for q in range(p, len(right))]
        else:
            pairs = [(p, q) for p in range(len(left)) for q in range(len(right))]
        if sample is not None and sample < len(pairs):
            pick = rng.choice(len(pairs), size=sample, replace=False)
            pairs = [pairs[k] for k in sorted(pick)]
        for p, q in pairs:
            out.append(join(left[p], right[q], bridge))
    members = _sorted_canonical(out)
    for g in members:
        if not is_A_member(g, i):
            raise PropertyViolation(f"A_{i} member fails its structural predicate")
    return members


def brute_force_A(i: int) -> list[Multigraph]:
    """Oracle: every connected cubic multigraph of order ``i``, filtered by
    the A_i predicate (no use of the B_j decomposition)."""
    allg = gen_degree_sequence_multigraphs([3] * i, max_mult=3, connected_only=True)
    return [g for g in allg if is_A_member(g, i)]


# ---------------------------------------------------------------- verification

@dataclass
class FamilyReport:
    family: str
    count: int
    rho: float
    min_lambda2: float
    argmin: Multigraph | None
    margin: float
    ok: bool
    rows: list = field(default_factory=list)


def family_rows(name: str, graphs: Sequence[Multigraph]) -> list[dict]:
    rows = []
    for g in graphs:
        ce = cut_edges(g) if is_connected(g) else []
        rows.append({
            "family": name,
            "key": key_digest(canonical_key(g)),
            "n": g.n,
            "num_cut_edges": len(ce),
            "lambda2": lambda2(g),
            "graph": g,
        })
    rows.sort(key=lambda r: r["key"])
    return rows


def verify_family(i: int, sample: int | None = None, seed: int = 0, tol: float = VERIFY_TOL) -> FamilyReport:
    """Check lambda2 >= rho(3, i) for every member of A_i; raises
    ``PropertyViolation`` on failure."""
    from .bounds import rho

    members = build_A(i, sample=sample, seed=seed)
    r = rho(3, i)
    rows = family_rows(f"A{i}", members)
    best = min(rows, key=lambda x: x["lambda2"])
    rep = FamilyReport(f"A{i}", len(rows), r, best["lambda2"], best["graph"], best["lambda2"] - r,
                       best["lambda2"] >= r - tol, rows)
    if not rep.ok:
        raise PropertyViolation(f"A_{i}: min lambda2 {rep.min_lambda2:.12f} < rho(3,{i}) = {r:.12f}")
    return rep


def manifest_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "key", "n", "num_cut_edges", "lambda2"])
    for r in rows:
        w.writerow([r["family"], r["key"], r["n"], r["num_cut_edges"], f"{r['lambda2']:.9f}"])
    return buf.getvalue()


def write_family(rows: Sequence[dict], out_dir) -> str:
    """Write ``<key>.mg`` files and ``manifest.csv``; returns the manifest path."""
    os.makedirs(out_dir, exist_ok=True)
    for r in rows:
        write_mg(r["graph"], os.path.join(out_dir, f"{r['key']}.mg"))
    path = os.path.join(out_dir, "manifest.csv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(manifest_csv(rows))
    return path


def family_graphs(name: str) -> list[Multigraph]:
    """Resolve names like ``B5``, ``A14``, ``M2_7`` or ``S2_7``."""
    if name[0] in "AB" and name[1:].isdigit():
        k = int(name[1:])
        return build_A(k) if name[0] == "A" else build_B(k)
    if name[0] in "MS" and "_" in name:
        l, j = (int(x) for x in name[1:].split("_"))
        return build_M(l, j) if name[0] == "M" else build_S(l, j)
    raise InapplicableError(f"unknown family {name!r}")
