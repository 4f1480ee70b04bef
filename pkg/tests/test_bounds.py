import math
from fractions import Fraction

import numpy as np
import pytest

from regconn.bounds import (
    CASE_IDS,
    RULE_IDS,
    BoundRule,
    case3_quotient_lambda2,
    case_signs,
    certify,
    check_case,
    evaluate_bound,
    replicate_case,
    rho,
    rho_exact,
    rho_prime,
    thm32_bound,
    thm32_optimal_m2,
    thm32_quotient_lambda2,
    thm32_value_at_optimum,
)
from regconn.errors import InapplicableError
from regconn.graph import (
    complete_graph,
    cycle_graph,
    disjoint_union,
    extremal_6vertex,
    random_regular_multigraph,
)
from regconn.spectral import lambda2


def closed_form(d):
    return (d - 1 + math.sqrt(9 * d * d - 10 * d + 17)) / 4


def test_threshold_examples():
    assert evaluate_bound(BoundRule("thm31", 3, 5, 1, "multigraph")) == pytest.approx(7 / 4)
    assert evaluate_bound(BoundRule("thm32", 4, 5)) == pytest.approx(3)
    pi = evaluate_bound(BoundRule("cioaba_pi", 3, None, None, "simple"))
    assert pi == pytest.approx(2.7785, abs=1e-4)
    assert abs(pi - (3 - 2 / 8)) < 0.05
    assert evaluate_bound(BoundRule("o_mult_1", 3)) == pytest.approx(rho(3, 6), abs=1e-9)


def test_inapplicable_names_predicate():
    with pytest.raises(InapplicableError, match="even n"):
        evaluate_bound(BoundRule("thm42_rho", 3, 7))
    with pytest.raises(InapplicableError, match="simple"):
        evaluate_bound(BoundRule("cioaba_pi", 3, None, None, "multigraph"))


def test_every_rule_has_some_applicable_point():
    for rid in RULE_IDS:
        ok = False
        for cls in ("simple", "multigraph"):
            for d in (3, 4, 5):
                try:
                    evaluate_bound(BoundRule(rid, d, 10, 1 if rid != "o_mult_t" else 2, cls))
                    ok = True
                except InapplicableError:
                    pass
        assert ok, rid


def test_rho_closed_form():
    for d in range(3, 22, 2):
        assert rho(d, 6) == pytest.approx(closed_form(d), abs=1e-12)
    assert rho(3, 6) == pytest.approx(2.561553, abs=1e-6)


def test_rho_monotone_and_above_prior():
    for d in (3, 5, 7):
        vals = [rho(d, n) for n in range(6, 40, 2)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        for n, v in zip(range(6, 40, 2), vals):
            assert v > d - 1 / 3 - 1 / (n - 3)


def test_rho_exact_is_root():
    from regconn.bounds import rho_matrix
    from regconn.exact import charpoly_value

    r = rho_exact(3, 14)
    q = rho_matrix(3, 14)
    eps = Fraction(1, 10**11)
    assert charpoly_value(q, r - eps) * charpoly_value(q, r + eps) <= 0
    assert rho_prime(3, 14) > 0


def test_thm32_optimum():
    rng = np.random.default_rng(3)
    for _ in range(20):
        d = int(rng.integers(3, 12))
        n = int(rng.integers(5, 40))
        s1 = int(rng.integers(2, n - 2))
        m = thm32_optimal_m2(d, n, s1)
        v = thm32_quotient_lambda2(d, n, s1, m)
        assert v == pytest.approx(thm32_value_at_optimum(d, n, s1), abs=1e-12)
        for m2 in np.linspace(0.01, d - 0.01, 50):
            assert thm32_quotient_lambda2(d, n, s1, m2) >= v - 1e-12
    for n in range(5, 30):
        best = min(range(2, n - 2), key=lambda s: thm32_value_at_optimum(4, n, s))
        assert thm32_value_at_optimum(4, n, best) == pytest.approx(thm32_bound(4, n), abs=1e-12)


def test_case3_quotient():
    assert case3_quotient_lambda2(3, 6, 6) == pytest.approx(19 / 7)
    assert case3_quotient_lambda2(3, 7, 6) > case3_quotient_lambda2(3, 6, 6)
    for n in range(14, 40):
        for s1 in range(6, n - 7):
            s2 = n - 2 - s1
            assert case3_quotient_lambda2(5, s1, s2) >= 5 - 1 / 7 - 1 / (n - 7) - 1e-12


def test_case_examples():
    c2a = {n: case_signs("c2a", 3, n) for n in (10, 12, 13)}
    assert c2a[10]["q"] == -1 and c2a[12]["q_prime"] == -1 and c2a[13]["q_prime"] == 1
    assert check_case("c2b", 5, 10) and check_case("c2b", 5, 12)
    assert not check_case("c3b", 3, 18) and check_case("c3b", 3, 19)
    assert check_case("c3b", 4, 14)


@pytest.mark.parametrize("cid", CASE_IDS)
def test_case_replication_small_grid(cid):
    assert replicate_case(cid, d_max=9, n_max=60) == []


def test_certify_k4():
    c = certify(complete_graph(4))
    r = c.result("krivelevich_sudakov")
    assert r.fired and r.guaranteed == 3 and c.kappa_prime == 3 and c.sound


def test_certify_tightness():
    c = certify(extremal_6vertex(3))
    r = c.result("thm42_rho")
    assert not r.fired and c.kappa_prime == 1
    assert abs(r.value - r.threshold) < 1e-12


def test_certify_disconnected():
    c = certify(disjoint_union(complete_graph(4), complete_graph(4)))
    assert c.fired == [] and c.sound


def test_certify_simple_5_regular():
    for s in range(200):
        g = random_regular_multigraph(12, 5, 1, s)
        if lambda2(g) <= 3:
            c = certify(g)
            assert c.result("krivelevich_sudakov").fired
            assert c.best()["kappa_prime"][0] == 5 and c.kappa_prime == 5
            return
    pytest.fail("no sample with lambda2 <= 3")


def test_certify_nonregular_only_fiedler():
    from regconn.graph import path_graph

    c = certify(path_graph(4))
    assert {r.rule for r in c.results} == {"fiedler"}
    assert c.result("fiedler", 0).threshold == 1 and c.sound


@pytest.mark.parametrize("seed", range(40))
def test_certificates_sound(seed):
    from regconn.suites import sweep_params

    n, d, mm = sweep_params(seed)
    assert certify(random_regular_multigraph(n, d, mm, seed)).sound


def test_cycle_rules():
    c = certify(cycle_graph(8))
    assert c.sound


# 6-regular, n = 9, kappa = 3: vertex 7 sends all six edges (three double
# edges) into the separator {2, 3, 5}.  lambda2 = 1.8749 sits below the
# vertex-cut threshold for t = 3 (1.95), which would claim kappa >= 4.
THM31_GAP = """mg 9
0 0 1 0 2 1 1 0 1
0 0 1 0 1 1 2 0 1
1 1 0 0 1 0 0 2 1
0 0 0 0 1 0 1 2 2
2 1 1 1 0 1 0 0 0
1 1 0 0 1 0 1 2 0
1 2 0 1 0 1 0 0 1
0 0 2 2 0 2 0 0 0
1 1 1 2 0 0 1 0 0
"""


def test_thm31_multigraph_gap_is_detected():
    from regconn.graph import parse_mg

    c = certify(parse_mg(THM31_GAP))
    assert c.kappa == 3 and c.lambda2 == pytest.approx(1.874855728, abs=1e-9)
    bad = c.violations()
    assert [(r.rule, r.t, r.graph_class) for r in bad] == [("thm31", 3, "multigraph")]
    assert not c.sound
