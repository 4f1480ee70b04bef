"""Loopless multigraphs stored as dense multiplicity matrices.

Everything here is small-scale (n rarely above 30), so the dense ``n x n``
matrix is the only representation.  Instances are immutable; every
constructor validates symmetry, a zero diagonal and non-negative entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExhaustedError,
    InfeasibleError,
    InvalidGraphError,
    InvalidPartitionError,
    MalformedHeaderError,
    NegativeEntryError,
    NonSymmetricError,
    NonzeroDiagonalError,
    ParseError,
)

SAMPLE_BUDGET = 10_000


class Multigraph:
    """Undirected loopless multigraph on vertices ``0..n-1``."""

    __slots__ = ("_mult", "_degrees")

    def __init__(self, mult):
        a = np.array(mult, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidGraphError(f"multiplicity matrix must be square and non-empty, got shape {a.shape}")
        if (a < 0).any():
            raise InvalidGraphError("negative multiplicity")
        if np.diagonal(a).any():
            raise InvalidGraphError("loops are not allowed (nonzero diagonal)")
        if not np.array_equal(a, a.T):
            raise InvalidGraphError("multiplicity matrix is not symmetric")
        a.flags.writeable = False
        deg = a.sum(axis=1)
        deg.flags.writeable = False
        self._mult = a
        self._degrees = deg

    @property
    def n(self) -> int:
        return self._mult.shape[0]

    @property
    def mult(self) -> np.ndarray:
        """Read-only multiplicity matrix."""
        return self._mult

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def num_edges(self) -> int:
        return int(self._mult.sum()) // 2

    def __getitem__(self, key):
        return int(self._mult[key])

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._mult.shape == other._mult.shape and np.array_equal(self._mult, other._mult)

    def __hash__(self):
        return hash((self.n, self._mult.tobytes()))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.num_edges})"

    def edges(self) -> list[tuple[int, int, int]]:
        """``(u, v, multiplicity)`` for every adjacent pair with ``u < v``."""
        iu, ju = np.nonzero(np.triu(self._mult, 1))
        return [(int(u), int(v), int(self._mult[u, v])) for u, v in zip(iu, ju)]

    def neighbors(self, v: int) -> list[int]:
        return [int(u) for u in np.nonzero(self._mult[v])[0]]

    def is_simple(self) -> bool:
        return bool((self._mult <= 1).all())

    def with_edge_delta(self, u: int, v: int, delta: int) -> "Multigraph":
        """Copy with the ``u``-``v`` multiplicity changed by ``delta``."""
        a = self._mult.copy()
        a[u, v] += delta
        a[v, u] += delta
        return Multigraph(a)

    def permute(self, perm: Sequence[int]) -> "Multigraph":
        """Relabel so that old vertex ``perm[i]`` becomes new vertex ``i``."""
        p = np.asarray(perm, dtype=np.int64)
        return Multigraph(self._mult[np.ix_(p, p)])

    def induced(self, vertices: Sequence[int]) -> "Multigraph":
        p = np.asarray(vertices, dtype=np.int64)
        return Multigraph(self._mult[np.ix_(p, p)])


@dataclass(frozen=True)
class Partition:
    """Ordered partition of ``{0..n-1}`` into non-empty blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        bl = tuple(tuple(sorted(int(v) for v in b)) for b in blocks)
        if any(len(b) == 0 for b in bl):
            raise InvalidPartitionError("empty block")
        seen = [v for b in bl for v in b]
        if len(seen) != len(set(seen)):
            raise InvalidPartitionError("blocks are not disjoint")
        size = len(seen) if n is None else n
        if set(seen) != set(range(size)):
            raise InvalidPartitionError(f"blocks do not cover 0..{size - 1}")
        object.__setattr__(self, "blocks", bl)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)

    def labels(self) -> np.ndarray:
        lab = np.empty(self.n, dtype=np.int64)
        for i, b in enumerate(self.blocks):
            lab[list(b)] = i
        return lab


# ---------------------------------------------------------------- .mg format

def parse_mg(text: str, source: str | None = None) -> Multigraph:
    """Parse the ``.mg`` text format (whitespace tolerant)."""
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise MalformedHeaderError("empty input", line=1, source=source)
    no, head = lines[0]
    if len(head) != 2 or head[0] != "mg":
        raise MalformedHeaderError("header must be 'mg <n>'", line=no, source=source)
    try:
        n = int(head[1])
    except ValueError:
        raise MalformedHeaderError(f"bad vertex count {head[1]!r}", line=no, source=source) from None
    if n < 1:
        raise MalformedHeaderError("vertex count must be >= 1", line=no, source=source)
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} matrix rows, found {len(rows)}", line=no, source=source)
    a = np.zeros((n, n), dtype=np.int64)
    for i, (no, toks) in enumerate(rows):
        if len(toks) != n:
            raise ParseError(f"row {i} has {len(toks)} entries, expected {n}", line=no, source=source)
        for j, tok in enumerate(toks):
            try:
                val = int(tok)
            except ValueError:
                raise ParseError(f"non-integer entry {tok!r}", line=no, source=source) from None
            if val < 0:
                raise NegativeEntryError(f"negative entry at ({i},{j})", line=no, source=source)
            a[i, j] = val
    for i in range(n):
        if a[i, i] != 0:
            raise NonzeroDiagonalError(f"nonzero diagonal at vertex {i}", line=rows[i][0], source=source)
    bad = np.argwhere(a != a.T)
    if len(bad):
        i, j = (int(x) for x in bad[0])
        raise NonSymmetricError(f"entry ({i},{j})={a[i, j]} but ({j},{i})={a[j, i]}",
                                line=rows[min(i, j)][0], source=source)
    return Multigraph(a)


def serialize_mg(g: Multigraph) -> str:
    """Canonical ``.mg`` text: single spaces, LF endings, trailing LF."""
    out = [f"mg {g.n}"]
    out.extend(" ".join(str(int(x)) for x in row) for row in g.mult)
    return "\n".join(out) + "\n"


def read_mg(path) -> Multigraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_mg(fh.read(), source=str(path))


def write_mg(g: Multigraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_mg(g))


# ---------------------------------------------------------------- basic queries

def degree_sequence(g: Multigraph) -> list[int]:
    return sorted((int(x) for x in g.degrees), reverse=True)


def is_regular(g: Multigraph, d: int | None = None) -> bool:
    deg = g.degrees
    if d is None:
        d = int(deg[0])
    return bool((deg == d).all())


def regular_degree(g: Multigraph) -> int | None:
    """Common degree of a regular multigraph, else ``None``."""
    return int(g.degrees[0]) if is_regular(g) else None


def underlying_simple_graph(g: Multigraph) -> Multigraph:
    return Multigraph((g.mult > 0).astype(np.int64))


def components(g: Multigraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    n = g.n
    adj = g.mult > 0
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for u in np.nonzero(adj[v] & ~seen)[0]:
                seen[u] = True
                stack.append(int(u))
                comp.append(int(u))
        comps.append(sorted(comp))
    return comps


def is_connected(g: Multigraph) -> bool:
    return len(components(g)) == 1


def is_complete_underlying(g: Multigraph) -> bool:
    """True when every pair of distinct vertices is adjacent."""
    off = ~np.eye(g.n, dtype=bool)
    return bool((g.mult[off] > 0).all())


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    n = sum(h.n for h in graphs)
    a = np.zeros((n, n), dtype=np.int64)
    k = 0
    for h in graphs:
        a[k:k + h.n, k:k + h.n] = h.mult
        k += h.n
    return Multigraph(a)


# ---------------------------------------------------------------- small families

def from_edges(n: int, edges: Iterable[tuple]) -> Multigraph:
    """Build from ``(u, v)`` or ``(u, v, mult)`` tuples; repeats accumulate."""
    a = np.zeros((n, n), dtype=np.int64)
    for e in edges:
        u, v = e[0], e[1]
        m = e[2] if len(e) > 2 else 1
        if u == v:
            raise InvalidGraphError(f"loop at vertex {u}")
        a[u, v] += m
        a[v, u] += m
    return Multigraph(a)


def complete_graph(n: int) -> Multigraph:
    return Multigraph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64))


def cycle_graph(n: int) -> Multigraph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Multigraph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Multigraph:
    return from_edges(n, [(0, i) for i in range(1, n)])


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)


def extremal_5vertex(k: int) -> Multigraph:
    """The 4k-regular 5-vertex multigraph with a central cut-vertex.

    Two heavy pairs ``{0,1}`` and ``{3,4}`` carry ``3k`` parallel edges each,
    and every outer vertex sends ``k`` edges to vertex 2.
    """
    if k < 1:
        raise InfeasibleError("k must be >= 1")
    heavy, light = 3 * k, k
    return from_edges(5, [(0, 1, heavy), (3, 4, heavy),
                          (0, 2, light), (1, 2, light), (3, 2, light), (4, 2, light)])


def extremal_6vertex(d: int) -> Multigraph:
    """The d-regular 6-vertex multigraph with a single cut-edge (d odd).

    Vertices ``0,1,2`` and ``3,4,5`` form two triangles; ``2`` and ``3`` are
    the cut-edge endpoints.
    """
    if d < 3 or d % 2 == 0:
        raise InfeasibleError("d must be odd and >= 3")
    hi, lo = (d + 1) // 2, (d - 1) // 2
    return from_edges(6, [(0, 1, hi), (0, 2, lo), (1, 2, lo),
                          (4, 5, hi), (4, 3, lo), (5, 3, lo),
                          (2, 3, 1)])


# ---------------------------------------------------------------- random sampling

def random_regular_multigraph(n: int, d: int, max_mult: int, seed: int,
                              budget: int = SAMPLE_BUDGET) -> Multigraph:
    """Configuration-model sample of a loopless d-regular multigraph.

    A uniform perfect matching of the ``n*d`` stubs is drawn and rejected if
    it creates a loop or a multiplicity above ``max_mult``.
    """
    if n < 2 or d < 1 or max_mult < 1:
        raise InfeasibleError("need n >= 2, d >= 1, max_mult >= 1")
    if (n * d) % 2:
        raise InfeasibleError(f"n*d = {n * d} is odd")
    if d > (n - 1) * max_mult:
        raise InfeasibleError(f"degree {d} exceeds (n-1)*max_mult = {(n - 1) * max_mult}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(budget):
        perm = rng.permutation(stubs)
        u, v = perm[0::2], perm[1::2]
        if (u == v).any():
            continue
        a = np.zeros((n, n), dtype=np.int64)
        np.add.at(a, (u, v), 1)
        a = a + a.T
        if a.max() > max_mult:
            continue
        return Multigraph(a)
    raise BudgetExhaustedError(f"no valid sample after {budget} attempts (n={n}, d={d}, max_mult={max_mult})")
