"""Gcds over the roots of a univariate polynomial (dynamic evaluation).

Arithmetic in ``Q[x]/(g)`` for squarefree ``g`` is done without factoring
``g``: whenever a leading coefficient is a zero divisor, ``g`` is split by a
gcd and each factor is handled on its own.
"""

from __future__ import annotations

from .poly import Poly, divexact, divmod_lex, gcd


class _Split(Exception):
    def __init__(self, parts: tuple[Poly, Poly]):
        self.parts = parts


def reduce_mod(p: Poly, g: Poly, x: str, y: str) -> Poly:
    """Reduce every coefficient of ``p`` (in ``y``) modulo ``g(x)``."""
    cs = p.coeffs_in(y)
    out = [divmod_lex(c, g)[1] if not c.is_zero() else c for c in cs]
    return Poly.from_coeffs(out, y, p.gens)


def inverse_mod(a: Poly, g: Poly, x: str) -> Poly:
    """Inverse of ``a`` modulo ``g``; raises ``_Split`` on a zero divisor."""
    d = gcd(a, g)
    if not d.is_constant():
        raise _Split((d, divexact(g, d).monic()))
    # extended Euclid in Q[x]
    r0, r1 = g, a
    s0, s1 = Poly.const(0, a.gens), Poly.const(1, a.gens)
    while not r1.is_zero():
        q, r = divmod_lex(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    # r0 is a nonzero constant here
    return divmod_lex(s0 * (1 / r0.constant_value()), g)[1]


def _monic(p: Poly, g: Poly, x: str, y: str) -> Poly:
    inv = inverse_mod(p.lc_in(y), g, x)
    return reduce_mod(p * inv, g, x, y)


def _rem(a: Poly, b: Poly, g: Poly, x: str, y: str) -> Poly:
    """Remainder of ``a`` by ``b`` (monic in ``y``) over ``Q[x]/(g)``."""
    yv = Poly.var(y, a.gens)
    db = b.degree(y)
    while not a.is_zero() and a.degree(y) >= db:
        k = a.degree(y) - db
        a = reduce_mod(a - a.lc_in(y) * yv ** k * b, g, x, y)
    return a


def _gcd_list(g: Poly, polys: list[Poly], x: str, y: str) -> Poly:
    ps = [reduce_mod(p, g, x, y) for p in polys]
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        return Poly.const(0, g.gens)
    a = _monic(ps[0], g, x, y)
    for b in ps[1:]:
        while not b.is_zero():
            b = _monic(b, g, x, y)
            a, b = b, _rem(a, b, g, x, y)
        if a.degree(y) <= 0:
            return Poly.const(1, g.gens)
    return a


def gcd_over_roots(g: Poly, polys: list[Poly], x: str, y: str) -> list[tuple[Poly, Poly]]:
    """Split ``g`` into coprime factors ``g_i`` with a gcd ``h_i`` in ``y`` each.

    For every root ``r`` of ``g_i`` the polynomials ``p(r, y)`` have gcd
    ``h_i(r, y)``; ``h_i`` is monic in ``y`` with coefficients reduced
    modulo ``g_i``, ``1`` when there is no common root and ``0`` when all of
    them vanish identically.
    """
    gens = tuple(dict.fromkeys([v for q in polys for v in q.gens] + list(g.gens) + [x, y]))
    polys = [q.with_gens(gens) for q in polys]
    g = g.with_gens(gens).monic()
    todo = [g]
    out = []
    while todo:
        gi = todo.pop()
        try:
            out.append((gi, _gcd_list(gi, polys, x, y)))
        except _Split as s:
            todo.extend(s.parts)
    out.sort(key=lambda t: (t[0].degree(), str(t[0])))
    return out
