"""Spectral thresholds that guarantee vertex- or edge-connectivity.

Each rule maps parameters ``(d, n, t, graph_class)`` to a threshold ``tau``
such that ``lambda2 < tau`` (``<=`` for ``krivelevich_sudakov``; ``mu2 >=
tau`` for ``fiedler``) forces the stated connectivity.  ``certify`` runs all
applicable rules on a graph and checks every fired guarantee against exact
connectivity.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .connectivity import edge_connectivity, vertex_connectivity
from .errors import InapplicableError
from .exact import bisect_root, charpoly_coeffs, charpoly_sign, poly_div_linear, poly_eval
from .graph import (
    Multigraph,
    is_complete_underlying,
    regular_degree,
)
from .spectral import adjacency_spectrum, eigenvalues_symmetric, laplacian_spectrum

FIRE_TOL = 1e-9

RULE_IDS = (
    "fiedler", "chandran", "krivelevich_sudakov", "cioaba_t", "cioaba_pi", "cioaba_t2",
    "o_mult_1", "o_mult_t", "o_vertex", "thm31", "thm32", "thm41", "thm42_rho",
)


@dataclass(frozen=True)
class RuleInfo:
    statistic: str      # "lambda2" or "mu2"
    comparison: str     # "<", "<=" or ">="
    conclusion: str     # "kappa" or "kappa_prime"
    classes: tuple      # graph classes the rule is stated for
    uses_t: bool
    uses_n: bool


RULES: dict[str, RuleInfo] = {
    "fiedler": RuleInfo("mu2", ">=", "kappa", ("simple",), True, False),
    "chandran": RuleInfo("lambda2", "<", "kappa_prime", ("simple",), False, True),
    "krivelevich_sudakov": RuleInfo("lambda2", "<=", "kappa_prime", ("simple",), False, False),
    "cioaba_t": RuleInfo("lambda2", "<", "kappa_prime", ("simple",), True, False),
    "cioaba_pi": RuleInfo("lambda2", "<", "kappa_prime", ("simple",), False, False),
    "cioaba_t2": RuleInfo("lambda2", "<", "kappa_prime", ("simple",), False, False),
    "o_mult_1": RuleInfo("lambda2", "<", "kappa_prime", ("multigraph",), False, False),
    "o_mult_t": RuleInfo("lambda2", "<", "kappa_prime", ("multigraph",), True, False),
    "o_vertex": RuleInfo("lambda2", "<", "kappa", ("multigraph",), False, False),
    "thm31": RuleInfo("lambda2", "<", "kappa", ("simple", "multigraph"), True, True),
    "thm32": RuleInfo("lambda2", "<", "kappa", ("multigraph",), False, True),
    "thm41": RuleInfo("lambda2", "<", "kappa_prime", ("multigraph",), True, True),
    "thm42_rho": RuleInfo("lambda2", "<", "kappa_prime", ("multigraph",), False, True),
}


@dataclass(frozen=True)
class BoundRule:
    id: str
    d: int
    n: int | None = None
    t: int | None = None
    graph_class: str = "multigraph"

    @property
    def info(self) -> RuleInfo:
        return RULES[self.id]


def _require(cond: bool, rule: BoundRule, predicate: str):
    if not cond:
        raise InapplicableError(f"{rule.id}: requires {predicate} (got d={rule.d}, n={rule.n}, t={rule.t}, "
                                f"class={rule.graph_class})")


# ---------------------------------------------------------------- closed forms

def phi(d: int, t: int, graph_class: str) -> int:
    """Minimum size of the side containing the separator (vertex version)."""
    if graph_class == "multigraph":
        return 3 if t == 1 else t + 1
    return d + 2 if t == 1 else d + 1


def psi(d: int, t: int) -> int:
    return 3 if t == 1 else 2


@lru_cache(maxsize=None)
def pi_root(d: int) -> float:
    """Largest root of x^3 - (d-3)x^2 - (3d-2)x - 2 (lies in (d-1, d))."""
    coeffs = [Fraction(1), Fraction(-(d - 3)), Fraction(-(3 * d - 2)), Fraction(-2)]
    return float(bisect_root(coeffs, d - 1, d, tol=Fraction(1, 10**14)))


def guaranteed_value(rule: BoundRule) -> int:
    """Connectivity lower bound the rule concludes when it fires."""
    if rule.id in ("chandran", "krivelevich_sudakov"):
        return rule.d
    if rule.id in ("cioaba_pi", "o_mult_1", "o_vertex", "thm32", "thm42_rho"):
        return 2
    if rule.id == "cioaba_t2":
        return 3
    return rule.t + 1


def evaluate_bound(rule: BoundRule) -> float:
    """Threshold for ``rule``; raises ``InapplicableError`` naming the
    violated predicate."""
    if rule.id not in RULES:
        raise InapplicableError(f"unknown rule {rule.id!r}")
    info = rule.info
    d, n, t = rule.d, rule.n, rule.t
    _require(rule.graph_class in ("simple", "multigraph"), rule, "graph_class in {simple, multigraph}")
    if "multigraph" not in info.classes:
        _require(rule.graph_class == "simple", rule, "a simple graph")
    if info.uses_t:
        _require(t is not None, rule, "a value of t")
    if info.uses_n:
        _require(n is not None, rule, "a value of n")
    _require(d is not None and d >= 1, rule, "d >= 1")

    rid = rule.id
    if rid == "fiedler":
        _require(t >= 0, rule, "t >= 0")
        return float(t + 1)
    if rid == "chandran":
        _require(n > d, rule, "n > d")
        return d - 1 - d / (n - d)
    if rid == "krivelevich_sudakov":
        return float(d - 2)
    if rid == "cioaba_t":
        _require(0 <= t < d, rule, "0 <= t < d")
        return d - 2 * t / (d + 1)
    if rid == "cioaba_pi":
        _require(d >= 3 and d % 2 == 1, rule, "odd d >= 3")
        return pi_root(d)
    if rid == "cioaba_t2":
        _require(d >= 3, rule, "d >= 3")
        return (d - 3 + math.sqrt((d + 3) ** 2 - 16)) / 2
    if rid == "o_mult_1":
        return (d - 1 + math.sqrt(9 * d * d - 10 * d + 17)) / 4
    if rid == "o_mult_t":
        _require(2 <= t <= d - 1, rule, "2 <= t <= d-1")
        return float(d - t + 1) if t % 2 == 1 else float(d - t)
    if rid == "o_vertex":
        return 3 * d / 4
    if rid == "thm31":
        _require(0 <= t <= d - 1, rule, "0 <= t <= d-1")
        if t == 0:
            return float(d)
        f = phi(d, t, rule.graph_class)
        _require(n > f, rule, f"n > phi(d,t) = {f}")
        return d - t * d / (2 * f) - t * d / (2 * (n - f))
    if rid == "thm32":
        _require(n >= 5 and d >= 3, rule, "n >= 5 and d >= 3")
        return thm32_bound(d, n)
    if rid == "thm41":
        _require(0 <= t <= d - 1, rule, "0 <= t <= d-1")
        if t == 0:
            return float(d)
        f = psi(d, t)
        _require(n > f, rule, f"n > psi(d,t) = {f}")
        return d - t / f - t / (n - f)
    if rid == "thm42_rho":
        _require(d >= 3 and d % 2 == 1, rule, "odd d >= 3")
        _require(n >= 6 and n % 2 == 0, rule, "even n >= 6")
        return rho(d, n)
    raise InapplicableError(f"unknown rule {rid!r}")  # pragma: no cover


# ---------------------------------------------------------------- vertex-cut quotient

def thm31_quotient_lambda2(d, n, boundary, side):
    """Second eigenvalue of the 2x2 quotient of a cut {S, S^c} with |S| = side."""
    return d - boundary / side - boundary / (n - side)


def thm32_quotient_lambda2(d, n, s1, m2):
    """Second root of the 3x3 quotient for a cut-vertex partition
    ``{S1, {v}, S2}`` with ``m2`` edges from v into S2 and ``m1 = d - m2``."""
    if not (d >= 3 and n >= 5):
        raise InapplicableError("needs d >= 3 and n >= 5")
    if not (2 <= s1 <= n - 3):
        raise InapplicableError("needs 2 <= s1 <= n-3")
    if not (0 < m2 < d):
        raise InapplicableError("needs 0 < m2 < d")
    s2 = n - 1 - s1
    m1 = d - m2
    b = d - m1 / s1 - m2 / s2
    c = m1 * m1 / s1 + m2 * m2 / s2 - m1 * m2 / (s1 * s2)
    return 0.5 * (b + math.sqrt(b * b + 4 * c))


def thm32_optimal_m2(d, n, s1):
    s2 = n - 1 - s1
    return d * (s2 + 2 * s1 * s2) / (n - 1 + 4 * s1 * s2)


def thm32_value_at_optimum(d, n, s1):
    s2 = n - 1 - s1
    return d - d * n / (n - 1 + 4 * s1 * s2)


def thm32_bound(d, n):
    return (8 * n - 25) * d / (9 * n - 25)


def case3_quotient_lambda2(d, s1, s2):
    """Second eigenvalue of the 2x2 quotient splitting at a cut-edge whose
    sides have ``s1 + 1`` and ``s2 + 1`` vertices."""
    if s1 < 1 or s2 < 1:
        raise InapplicableError("needs s1, s2 >= 1")
    return d - 1 / (s1 + 1) - 1 / (s2 + 1)


# ---------------------------------------------------------------- cut-edge quotients

def cut_edge_quotient(d, n, side: int) -> list[list[Fraction]]:
    """4x4 quotient for blocks {S1, {v1}, {v2}, S2}, where S1 has ``side``
    vertices, v1 v2 is the cut-edge, and S2 holds the other n - side - 2."""
    d = Fraction(d)
    a = (d - 1) / side
    b = (d - 1) / (n - side - 2)
    return [
        [d - a, a, 0, 0],
        [d - 1, 0, 1, 0],
        [0, 1, 0, d - 1],
        [0, 0, b, d - b],
    ]


def rho_matrix(d, n):
    if n <= 4:
        raise InapplicableError("needs n > 4")
    return cut_edge_quotient(d, n, 2)


def rho_prime_matrix(d, n):
    if n <= 6:
        raise InapplicableError("needs n > 6")
    return cut_edge_quotient(d, n, 4)


def _quotient_lambda2_exact(q, d, sizes) -> Fraction:
    """Largest root of det(xI - Q)/(x - d) by exact bisection, bracketed
    from a float estimate of the symmetrised quotient."""
    sz = np.sqrt(np.array(sizes, dtype=float))
    qf = np.array([[float(x) for x in row] for row in q])
    sym = qf * sz[:, None] / sz[None, :]
    est = eigenvalues_symmetric(0.5 * (sym + sym.T)).values[1]
    cubic = poly_div_linear(charpoly_coeffs(q), d)
    hi = Fraction(d)
    if poly_eval(cubic, hi) == 0:
        return hi
    for width in (1e-7, 1e-5, 1e-3, 1e-1):
        lo = Fraction(est - width)
        if poly_eval(cubic, lo) < 0 and poly_eval(cubic, min(hi, Fraction(est + width))) > 0:
            return bisect_root(cubic, lo, min(hi, Fraction(est + width)))
    raise ArithmeticError(f"could not bracket lambda2 near {est}")


@lru_cache(maxsize=None)
def rho_exact(d: int, n: int) -> Fraction:
    return _quotient_lambda2_exact(rho_matrix(d, n), d, (2, 1, 1, n - 4))


def rho(d: int, n: int) -> float:
    """Second-largest eigenvalue of the 4x4 cut-edge quotient with a
    2-vertex side (odd d >= 3, even n >= 6)."""
    if d < 3 or d % 2 == 0 or n < 6 or n % 2:
        raise InapplicableError(f"rho needs odd d >= 3 and even n >= 6 (got d={d}, n={n})")
    return float(rho_exact(d, n))


@lru_cache(maxsize=None)
def rho_prime_exact(d: int, n: int) -> Fraction:
    return _quotient_lambda2_exact(rho_prime_matrix(d, n), d, (4, 1, 1, n - 6))


def rho_prime(d: int, n: int) -> float:
    """Same as ``rho`` with a 4-vertex side (odd d >= 3, even n >= 10)."""
    if d < 3 or d % 2 == 0 or n < 10 or n % 2:
        raise InapplicableError(f"rho_prime needs odd d >= 3 and even n >= 10 (got d={d}, n={n})")
    return float(rho_prime_exact(d, n))


# ---------------------------------------------------------------- exact case checks

CASE_IDS = ("c2a", "c2b", "c2c", "c2d", "c3a", "c3b")


def case_point(case_id: str, d: int, n: int) -> Fraction:
    """Evaluation point x for a case, validating the (d, n) domain."""
    def need(cond, what):
        if not cond:
            raise InapplicableError(f"{case_id}: requires {what} (got d={d}, n={n})")

    if case_id == "c2a":
        need(d == 3 and n >= 10, "d = 3, n >= 10")
        return Fraction(1689, 600)
    if case_id == "c2b":
        need(d == 5 and n >= 10, "d = 5, n >= 10")
        return Fraction(47, 10)
    if case_id == "c2c":
        need(d == 7 and n >= 10, "d = 7, n >= 10")
        return Fraction(333, 50)
    if case_id == "c2d":
        need(d >= 3 and n >= 10, "d >= 3, n >= 10")
        return d - Fraction(1, 5) - Fraction(1, n - 5)
    if case_id == "c3a":
        need(d >= 3 and n >= 14, "d >= 3, n >= 14")
        return d - Fraction(1, 3) - Fraction(1, n - 3)
    if case_id == "c3b":
        need(d >= 3 and n >= 14, "d >= 3, n >= 14")
        return d - Fraction(1, 7) - Fraction(1, n - 7)
    raise InapplicableError(f"unknown case {case_id!r}")


def case_signs(case_id: str, d: int, n: int) -> dict:
    """Exact signs of det(xI - Q) and, for the c2 cases, det(xI - Q')."""
    x = case_point(case_id, d, n)
    out = {"x": x, "q": charpoly_sign(rho_matrix(d, n), x)}
    if case_id.startswith("c2"):
        out["q_prime"] = charpoly_sign(rho_prime_matrix(d, n), x)
    return out


def check_case(case_id: str, d: int, n: int) -> bool:
    """Whether the sign pattern the case relies on holds at (d, n).

    c2*: det(xI - Q') > 0 and det(xI - Q) < 0.  c3a: det(xI - Q) > 0.
    c3b: det(xI - Q) < 0.
    """
    s = case_signs(case_id, d, n)
    if case_id.startswith("c2"):
        return s["q_prime"] > 0 and s["q"] < 0
    if case_id == "c3a":
        return s["q"] > 0
    return s["q"] < 0


# Integer regions on which each sign condition is reported to hold, as
# predicates over the case's (d, n) domain.
REPORTED_REGIONS = {
    ("c2a", "q_prime_pos"): lambda d, n: n >= 13,
    ("c2a", "q_neg"): lambda d, n: n >= 10,
    ("c2b", "q_prime_pos"): lambda d, n: n >= 10,
    ("c2b", "q_neg"): lambda d, n: 10 <= n <= 17,
    ("c2c", "q_prime_pos"): lambda d, n: n >= 10,
    ("c2c", "q_neg"): lambda d, n: 10 <= n <= 15,
    ("c2d", "q_prime_pos"): lambda d, n: n >= 10 and d >= 3,
    ("c2d", "q_neg"): lambda d, n: ((d == 4 and n >= 21) or (d == 5 and n >= 14) or (d == 6 and n >= 12)
                                    or (d == 7 and n >= 11) or (d >= 8 and n >= 10)),
    ("c3a", "q_pos"): lambda d, n: n >= 14 and d >= 3,
    ("c3b", "q_neg"): lambda d, n: (d == 3 and n >= 19) or (d >= 4 and n >= 14),
}


def case_condition_holds(case_id: str, condition: str, d: int, n: int) -> bool:
    s = case_signs(case_id, d, n)
    if condition == "q_prime_pos":
        return s["q_prime"] > 0
    if condition == "q_neg":
        return s["q"] < 0
    if condition == "q_pos":
        return s["q"] > 0
    raise ValueError(condition)


def case_grid(case_id: str, d_max: int = 21, n_max: int = 200):
    """(d, n) points of a case's domain used for boundary replication."""
    fixed = {"c2a": 3, "c2b": 5, "c2c": 7}
    n_min = 10 if case_id.startswith("c2") else 14
    ds = [fixed[case_id]] if case_id in fixed else range(3, d_max + 1)
    return [(d, n) for d in ds for n in range(n_min, n_max + 1)]


def replicate_case(case_id: str, d_max: int = 21, n_max: int = 200) -> list[tuple]:
    """Grid points where a computed sign disagrees with the reported region."""
    mismatches = []
    conds = [c for (cid, c) in REPORTED_REGIONS if cid == case_id]
    for d, n in case_grid(case_id, d_max, n_max):
        for cond in conds:
            want = REPORTED_REGIONS[(case_id, cond)](d, n)
            got = case_condition_holds(case_id, cond, d, n)
            if want != got:
                mismatches.append((case_id, cond, d, n, want, got))
    return mismatches


# ---------------------------------------------------------------- certificates

@dataclass
class RuleResult:
    rule: str
    t: int | None
    graph_class: str
    statistic: str
    comparison: str
    threshold: float
    value: float
    fired: bool
    conclusion: str
    guaranteed: int
    exact: int
    sound: bool


@dataclass
class Certificate:
    n: int
    d: int | None
    lambda2: float
    mu2: float
    kappa: int
    kappa_prime: int
    results: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def fired(self) -> list:
        return [r for r in self.results if r.fired]

    @property
    def sound(self) -> bool:
        return all(r.sound for r in self.results)

    def violations(self) -> list:
        return [r for r in self.results if not r.sound]

    def best(self) -> dict:
        """Strongest fired guarantee per connectivity kind."""
        out = {}
        for r in self.fired:
            if r.guaranteed > out.get(r.conclusion, (-1,))[0]:
                out[r.conclusion] = (r.guaranteed, r.rule, r.t)
        return out

    def result(self, rule: str, t: int | None = None, graph_class: str | None = None):
        for r in self.results:
            if r.rule == rule and (t is None or r.t == t) and (graph_class is None or r.graph_class == graph_class):
                return r
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n, "d": self.d, "lambda2": self.lambda2, "mu2": self.mu2,
            "kappa": self.kappa, "kappa_prime": self.kappa_prime,
            "results": [asdict(r) for r in self.results],
            "skipped": [list(s) for s in self.skipped],
            "flags": list(self.flags),
            "sound": self.sound,
        }


def _fires(value: float, comparison: str, tau: float, tol: float) -> bool:
    if comparison == "<":
        return value < tau - tol
    if comparison == "<=":
        return value <= tau + tol
    return value >= tau - tol


def _duplicated_small_complete(g: Multigraph, t: int) -> bool:
    return is_complete_underlying(g) and g.n <= t + 1


def certify(g: Multigraph, t: int | None = None, tol: float = FIRE_TOL) -> Certificate:
    """Evaluate every applicable rule on ``g`` and check each fired guarantee
    against exact connectivity."""
    adj = adjacency_spectrum(g)
    lap = laplacian_spectrum(g)
    lam2 = adj.values[1] if g.n >= 2 else float("nan")
    m2 = lap.ascending()[1] if g.n >= 2 else float("nan")
    kappa = vertex_connectivity(g) if g.n >= 2 else 0
    kprime = edge_connectivity(g) if g.n >= 2 else 0
    d = regular_degree(g)
    cert = Certificate(g.n, d, lam2, m2, kappa, kprime)
    simple = g.is_simple()
    connected = kprime >= 1
    exact = {"kappa": kappa, "kappa_prime": kprime}
    stats = {"lambda2": lam2, "mu2": m2}

    def run(rule: BoundRule):
        try:
            tau = evaluate_bound(rule)
        except InapplicableError as exc:
            cert.skipped.append((rule.id, rule.t, rule.graph_class, str(exc)))
            return
        info = rule.info
        val = stats[info.statistic]
        fired = _fires(val, info.comparison, tau, tol)
        guar = guaranteed_value(rule)
        ex = exact[info.conclusion]
        cert.results.append(RuleResult(rule.id, rule.t, rule.graph_class, info.statistic, info.comparison,
                                       float(tau), float(val), fired, info.conclusion, guar, ex,
                                       (not fired) or ex >= guar))

    def skip(rid, reason, tt=None, cls=None):
        cert.skipped.append((rid, tt, cls, reason))

    min_deg = int(g.degrees.min())
    # threshold t+1 can only certify up to the minimum degree
    ts_f = [t] if t is not None else list(range(0, min_deg))
    if not simple:
        skip("fiedler", "graph has parallel edges")
    elif is_complete_underlying(g):
        skip("fiedler", "graph is complete")
    else:
        for tt in ts_f:
            run(BoundRule("fiedler", d or min_deg, g.n, tt, "simple"))

    if d is None:
        for rid in RULE_IDS[1:]:
            skip(rid, "graph is not regular")
        return cert

    ts = [t] if t is not None else list(range(1, d))
    classes = ("simple", "multigraph") if simple else ("multigraph",)
    for rid in ("chandran", "krivelevich_sudakov", "cioaba_t", "cioaba_pi", "cioaba_t2"):
        if not simple:
            skip(rid, "graph has parallel edges")
            continue
        for tt in (ts if RULES[rid].uses_t else [None]):
            run(BoundRule(rid, d, g.n, tt, "simple"))
    for rid in ("o_mult_1", "o_mult_t"):
        if not connected:
            skip(rid, "stated for connected multigraphs")
            continue
        for tt in (ts if RULES[rid].uses_t else [None]):
            run(BoundRule(rid, d, g.n, tt, "multigraph"))
    if g.n == 2:
        skip("o_vertex", "2-vertex multigraph excluded")
    else:
        run(BoundRule("o_vertex", d, g.n, None, "multigraph"))
    for rid in ("thm31", "thm41"):
        for cls in (classes if rid == "thm31" else ("multigraph",)):
            for tt in ts:
                if _duplicated_small_complete(g, tt):
                    msg = f"{rid}: excluded (duplicated complete graph on {g.n} <= t+1 = {tt + 1} vertices)"
                    if msg not in cert.flags:
                        cert.flags.append(msg)
                    skip(rid, "duplicated complete graph on at most t+1 vertices", tt, cls)
                    continue
                run(BoundRule(rid, d, g.n, tt, cls))
    run(BoundRule("thm32", d, g.n, None, "multigraph"))
    run(BoundRule("thm42_rho", d, g.n, None, "multigraph"))
    return cert
