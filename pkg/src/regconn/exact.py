"""Exact rational linear algebra: Bareiss determinants and characteristic
polynomial signs.  ``fractions.Fraction`` is the rational type."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Rational = Fraction


def to_rational_matrix(m) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in m]


def bareiss_det_int(m: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m) -> Fraction:
    """Exact determinant of a rational matrix (rows scaled to integers)."""
    rows = to_rational_matrix(m)
    scale = Fraction(1)
    ints = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        ints.append([int(x * den) for x in row])
        scale /= den
    return bareiss_det_int(ints) * scale


def shifted(q, x) -> list[list[Fraction]]:
    """``x*I - q`` in exact arithmetic."""
    x = Fraction(x)
    n = len(q)
    return [[(x if i == j else 0) - Fraction(q[i][j]) for j in range(n)] for i in range(n)]


def charpoly_value(q, x) -> Fraction:
    """``det(x*I - q)``."""
    return det(shifted(q, x))


def charpoly_sign(q, x) -> int:
    """Exact sign of ``det(x*I - q)`` in {-1, 0, +1}."""
    v = charpoly_value(q, x)
    return (v > 0) - (v < 0)


def charpoly_coeffs(q) -> list[Fraction]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(x*I - q)``, highest power
    first (Faddeev-LeVerrier, exact)."""
    a = to_rational_matrix(q)
    n = len(a)
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        if k == 1:
            m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        else:
            am = _matmul(a, m)
            c = coeffs[-1]
            m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        am = _matmul(a, m)
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def _matmul(a, b):
    n, p, r = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(p)) for j in range(r)] for i in range(n)]


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_div_linear(coeffs: Sequence[Fraction], root) -> list[Fraction]:
    """Synthetic division by ``(x - root)``; the remainder must vanish."""
    root = Fraction(root)
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * root)
    rem = coeffs[-1] + out[-1] * root
    if rem != 0:
        raise ValueError(f"{root} is not a root (remainder {rem})")
    return out


def bisect_root(coeffs, lo, hi, tol=Fraction(1, 10**13)) -> Fraction:
    """Root of the polynomial in ``[lo, hi]`` given a strict sign change."""
    lo, hi = Fraction(lo), Fraction(hi)
    flo, fhi = poly_eval(coeffs, lo), poly_eval(coeffs, hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        # keep denominators small: snap mid to a dyadic with bounded bits
        mid = Fraction(round(mid * 2**60), 2**60)
        fm = poly_eval(coeffs, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2
