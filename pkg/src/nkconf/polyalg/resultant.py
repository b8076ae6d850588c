"""Sylvester resultants for eliminating one variable."""

from __future__ import annotations

from .poly import Poly, divexact


def sylvester_matrix(p: Poly, q: Poly, var: str) -> list[list[Poly]]:
    p, q = p._unify(q)
    m, n = p.degree(var), q.degree(var)
    if m < 1 or n < 1:
        raise ValueError(f"both polynomials need positive degree in {var}")
    zero = Poly.const(0, p.gens)
    pc = p.coeffs_in(var)[::-1]  # highest degree first
    qc = q.coeffs_in(var)[::-1]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    return rows


def det_bareiss(matrix: list[list[Poly]]) -> Poly:
    """Fraction-free determinant; every division is exact."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    gens = a[0][0].gens
    sign = 1
    prev = Poly.const(1, gens)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Poly.const(0, gens)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant(p: Poly, q: Poly, var: str) -> Poly:
    """Resultant of ``p`` and ``q`` with respect to ``var``."""
    return det_bareiss(sylvester_matrix(p, q, var))
