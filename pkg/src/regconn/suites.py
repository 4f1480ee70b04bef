"""Randomised and exhaustive property suites shared by the CLI and tests."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .connectivity import (
    brute_force_edge_connectivity,
    brute_force_vertex_connectivity,
    cheeger_sandwich,
    edge_connectivity,
    vertex_connectivity,
)
from .errors import PropertyViolation
from .graph import Multigraph, Partition, random_regular_multigraph
from .spectral import adjacency_spectrum, interlaces, quotient_matrix

SUITES = ("thm-soundness", "interlacing", "oracle-equivalence", "case-checks", "family-verify")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    counterexample: Multigraph | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str, graph: Multigraph | None = None):
        self.failures.append(message)
        if self.counterexample is None and graph is not None:
            self.counterexample = graph


def sweep_params(seed: int) -> tuple[int, int, int]:
    """(n, d, max_mult) for one soundness-sweep instance.

    d in [3, 8], n in [4, 16] with n*d even; every third seed with d <= 5
    and n >= 2d draws a simple graph so the simple-graph rules are exercised
    (denser simple draws are too rare under pairing rejection).
    """
    rng = np.random.default_rng([seed, 7919])
    d = int(rng.integers(3, 9))
    n = int(rng.integers(4, 17))
    if (n * d) % 2:
        n = n + 1 if n < 16 else n - 1
    simple = seed % 3 == 0 and d <= 5 and n >= 2 * d
    return n, d, 1 if simple else d


def random_partition(n: int, rng: np.random.Generator, s: int | None = None) -> Partition:
    """Random partition into ``s`` non-empty blocks, 1 <= s < n."""
    if s is None:
        s = int(rng.integers(1, n))
    order = rng.permutation(n)
    labels = np.empty(n, dtype=np.int64)
    labels[order[:s]] = np.arange(s)
    labels[order[s:]] = rng.integers(0, s, size=n - s)
    return Partition([np.nonzero(labels == b)[0].tolist() for b in range(s)], n)


def random_multigraph(n: int, rng: np.random.Generator, max_mult: int = 2) -> Multigraph:
    p = float(rng.uniform(0.2, 0.9))
    a = rng.integers(1, max_mult + 1, size=(n, n)) * (rng.random((n, n)) < p)
    a = np.triu(a, 1)
    return Multigraph(a + a.T)


def check_interlacing(g: Multigraph, p: Partition) -> bool:
    return interlaces(quotient_matrix(g, p).spectrum(), adjacency_spectrum(g))


def soundness_sweep(trials: int = 5000, seed: int = 0) -> SuiteResult:
    """Certificate soundness, quotient interlacing and the Cheeger sandwich
    on seeded random regular multigraphs."""
    res = SuiteResult("thm-soundness")
    for s in range(seed, seed + trials):
        n, d, mm = sweep_params(s)
        g = random_regular_multigraph(n, d, mm, s)
        cert = bounds.certify(g)
        for r in cert.violations():
            res.fail(f"seed {s}: {r.rule} (t={r.t}, {r.graph_class}) guarantees {r.conclusion} >= "
                     f"{r.guaranteed} but exact is {r.exact}", g)
        if not (cert.kappa <= cert.kappa_prime <= d):
            res.fail(f"seed {s}: kappa {cert.kappa} <= kappa' {cert.kappa_prime} <= d {d} fails", g)
        rng = np.random.default_rng([s, 1])
        if not check_interlacing(g, random_partition(n, rng)):
            res.fail(f"seed {s}: quotient spectrum does not interlace", g)
        try:
            cheeger_sandwich(g, d)
        except PropertyViolation as exc:
            res.fail(f"seed {s}: {exc}", g)
        res.checked += 1
    return res


def interlacing_suite(trials: int = 1000, seed: int = 0) -> SuiteResult:
    res = SuiteResult("interlacing")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(2, 13))
        g = random_multigraph(n, rng, 3)
        p = random_partition(n, rng)
        if not check_interlacing(g, p):
            res.fail(f"partition {p.blocks} does not interlace", g)
        res.checked += 1
    return res


def oracle_suite(trials: int = 500, seed: int = 0, max_n: int = 12) -> SuiteResult:
    res = SuiteResult("oracle-equivalence")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(2, max_n + 1))
        g = random_multigraph(n, rng, 3)
        ke, kb = edge_connectivity(g), brute_force_edge_connectivity(g)
        ve, vb = vertex_connectivity(g), brute_force_vertex_connectivity(g)
        if ke != kb:
            res.fail(f"edge connectivity {ke} != oracle {kb}", g)
        if ve != vb:
            res.fail(f"vertex connectivity {ve} != oracle {vb}", g)
        res.checked += 1
    return res


def case_suite(d_max: int = 21, n_max: int = 200) -> SuiteResult:
    res = SuiteResult("case-checks")
    for cid in bounds.CASE_IDS:
        mism = bounds.replicate_case(cid, d_max, n_max)
        res.checked += len(bounds.case_grid(cid, d_max, n_max))
        for m in mism:
            res.fail(f"{m[0]} {m[1]} at d={m[2]}, n={m[3]}: reported {m[4]}, computed {m[5]}")
    return res


def family_suite(orders=(10, 12, 14, 16, 18), sample: int | None = None, seed: int = 0,
                 tol: float = 1e-9) -> SuiteResult:
    from .enumeration import verify_family

    res = SuiteResult("family-verify")
    for i in orders:
        # sampling is a budget fallback for the largest family only
        smp = sample if i == 18 else None
        try:
            rep = verify_family(i, sample=smp, seed=seed, tol=tol)
        except PropertyViolation as exc:
            res.fail(str(exc))
            continue
        res.checked += rep.count
        tag = " (sampled)" if smp is not None else ""
        res.notes.append(f"A{i}: {rep.count} graphs{tag}, min lambda2 {rep.min_lambda2:.9f}, "
                         f"rho(3,{i}) {rep.rho:.9f}, margin {rep.margin:.9f}")
    return res
