"""Homogeneous coordinate vectors with polynomial entries.

Points and lines of the real projective plane are both represented by
vectors in R^3; incidence is orthogonality, and join/meet are cross products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd, lcm

from ..polyalg import Poly, divexact, gcd

Vec = tuple[Poly, Poly, Poly]


class DegenerateError(ValueError):
    """Cross product of proportional vectors (join/meet of coincident elements)."""


def vec(coords, gens: tuple[str, ...] = ()) -> Vec:
    return tuple(x if isinstance(x, Poly) else Poly.const(x, gens) for x in coords)  # type: ignore[return-value]


def is_zero_vec(v: Vec) -> bool:
    return all(x.is_zero() for x in v)


def raw_cross(u: Vec, v: Vec) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Vec, v: Vec) -> Poly:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _rational_content(v: Vec) -> Fraction:
    num, den = 0, 1
    for x in v:
        for c in x.terms.values():
            num = igcd(num, c.numerator)
            den = lcm(den, c.denominator)
    return Fraction(num, den)


def normalize(v: Vec, polynomial: bool = True) -> tuple[Vec, Poly | None]:
    """Divide out the common polynomial factor and the positive rational content.

    Returns the normalised vector and the stripped non-constant factor (or
    ``None``).  Signs are kept.  ``polynomial=False`` only removes the
    rational content.
    """
    if is_zero_vec(v):
        raise DegenerateError("zero vector")
    if not polynomial:
        c = _rational_content(v)
        return tuple(x * (1 / c) for x in v), None  # type: ignore[return-value]
    g = None
    for x in v:
        if not x.is_zero():
            g = x if g is None else gcd(g, x)
            if g.is_constant():
                break
    stripped = None
    if g is not None and not g.is_constant():
        g = g.primitive()
        v = tuple(divexact(x, g) for x in v)  # type: ignore[assignment]
        stripped = g
    c = _rational_content(v)
    if c != 1:
        v = tuple(x * (1 / c) for x in v)  # type: ignore[assignment]
    return v, stripped


def cross(u: Vec, v: Vec) -> Vec:
    """Join of two points or meet of two lines, content-normalised.

    Raises ``DegenerateError`` if the inputs are proportional.  A stripped
    common factor is dropped here; use ``cross_with_factor`` to keep it.
    """
    return cross_with_factor(u, v)[0]


def cross_with_factor(u: Vec, v: Vec) -> tuple[Vec, Poly | None]:
    w = raw_cross(u, v)
    if is_zero_vec(w):
        raise DegenerateError("proportional vectors have no join/meet")
    return normalize(w)


E1 = (1, 0, 0)
E2 = (0, 1, 0)
E3 = (0, 0, 1)


def _sign_first(v: Vec) -> Vec:
    for x in v:
        if not x.is_zero():
            return v if x.leading_coefficient() > 0 else tuple(-y for y in v)  # type: ignore[return-value]
    return v


def _sign_last(v: Vec) -> Vec:
    for x in reversed(v):
        if not x.is_zero():
            return v if x.leading_coefficient() > 0 else tuple(-y for y in v)  # type: ignore[return-value]
    return v


@dataclass(frozen=True)
class PencilBranch:
    """Lines (or points) through a pivot under side conditions.

    The affine family is ``base + t * direction``; ``direction`` alone is the
    member missed by it (parameter at infinity).
    """

    base: Vec
    direction: Vec
    zero: tuple[Poly, ...] = ()  # side conditions: these vanish
    nonzero: tuple[Poly, ...] = ()  # side conditions: these do not vanish

    def member(self, t: Poly) -> Vec:
        return tuple(a + t * b for a, b in zip(self.base, self.direction))  # type: ignore[return-value]


def pencil(point: Vec) -> list[PencilBranch]:
    """Parametrise the vectors orthogonal to ``point``.

    For a rational pivot this is a single branch; e.g. the pivot ``[1,1,0]``
    gives ``[1,-1,t]`` and ``[1,0,0]`` gives ``[0,1,t]``.  A symbolic pivot
    ``(a,b,c)`` splits into ``b != 0``, ``b = 0, c != 0`` and ``b = c = 0``.
    """
    if is_zero_vec(point):
        raise DegenerateError("zero pivot")
    gens = point[0].gens
    e1, e2, e3 = (vec(E, gens) for E in (E1, E2, E3))
    a, b, c = point
    options = [
        ([], [b], raw_cross(point, e3), raw_cross(e1, point)),
        ([b], [c], raw_cross(point, e2), raw_cross(e1, point)),
        ([b, c], [a], raw_cross(point, e3), raw_cross(e2, point)),
    ]
    out = []
    for zeros, nonzeros, l0, l1 in options:
        zeros = [z for z in zeros if not z.is_zero()]
        if any(z.is_constant() for z in zeros):
            continue  # a nonzero constant cannot vanish
        if any(nz.is_zero() for nz in nonzeros):
            continue
        nonzeros = [nz for nz in nonzeros if not nz.is_constant()]
        out.append(PencilBranch(_sign_first(l0), _sign_last(l1), tuple(zeros), tuple(nonzeros)))
        if not zeros and not nonzeros:
            break
    return out


def as_fractions(v: Vec) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(x.constant_value() for x in v)  # type: ignore[return-value]


def proportional(u, v) -> bool:
    """Projective equality of two vectors (entries Poly or numbers)."""
    u = vec(u)
    v = vec(v)
    return all(x.is_zero() for x in raw_cross(u, v)) and not is_zero_vec(u) and not is_zero_vec(v)
