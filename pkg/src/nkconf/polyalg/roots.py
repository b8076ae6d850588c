"""Real root isolation for univariate rational polynomials via Sturm chains."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .poly import Poly, gcd, squarefree_part

Dense = list  # coefficients, lowest degree first


def to_dense(p: Poly) -> tuple[Dense, str | None]:
    fv = p.free_vars()
    if len(fv) > 1:
        raise ValueError(f"expected a univariate polynomial, got {p}")
    if not fv:
        return ([p.constant_value()] if p else []), None
    var = fv[0]
    return [c.constant_value() if c else Fraction(0) for c in p.coeffs_in(var)], var


def from_dense(coeffs: Dense, var: str) -> Poly:
    return Poly({(i,): c for i, c in enumerate(coeffs) if c}, (var,))


def _trim(a: Dense) -> Dense:
    while a and a[-1] == 0:
        a.pop()
    return a


def horner(a: Dense, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _rem(a: Dense, b: Dense) -> Dense:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] / lb
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a.pop()
        _trim(a)
    return a


def _deriv(a: Dense) -> Dense:
    return [i * c for i, c in enumerate(a)][1:]


def sturm_chain(a: Dense) -> list[Dense]:
    """Signed remainder sequence ``p, p', -rem(p, p'), ...``."""
    a = _trim(list(a))
    if not a:
        raise ValueError("zero polynomial")
    chain = [a]
    d = _deriv(a)
    if d:
        chain.append(d)
    while len(chain) > 1 and len(chain[-1]) > 1:
        r = _rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain: list[Dense], x: Fraction) -> int:
    signs = [s for s in (_sign(horner(q, x)) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _variations_inf(chain: list[Dense], positive: bool) -> int:
    signs = []
    for q in chain:
        s = _sign(q[-1])
        if not positive and (len(q) - 1) % 2:
            s = -s
        signs.append(s)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def cauchy_bound(a: Dense) -> Fraction:
    a = _trim(list(a))
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=Fraction(0))


def count_real_roots(p: Poly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (whole line when omitted)."""
    a, _ = to_dense(p)
    if not a:
        raise ValueError("zero polynomial")
    chain = sturm_chain(a)
    vlo = _variations_inf(chain, False) if lo is None else _variations(chain, Fraction(lo))
    vhi = _variations_inf(chain, True) if hi is None else _variations(chain, Fraction(hi))
    return vlo - vhi


@dataclass(frozen=True)
class RealRoot:
    """A real algebraic number: the unique root of ``poly`` in ``(lo, hi)``.

    ``poly`` is squarefree; ``lo == hi`` marks an exact rational root.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def var(self) -> str:
        return self.poly.free_vars()[0]

    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("root is irrational")
        return self.lo

    def refine(self, width: Fraction) -> "RealRoot":
        """Bisect until the interval is narrower than ``width``."""
        if self.is_rational:
            return self
        a, _ = to_dense(self.poly)
        lo, hi = self.lo, self.hi
        slo = _sign(horner(a, lo))
        while hi - lo >= width:
            mid = (lo + hi) / 2
            sm = _sign(horner(a, mid))
            if sm == 0:
                return RealRoot(self.poly, mid, mid)
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return RealRoot(self.poly, lo, hi)

    def approx(self) -> float:
        r = self.refine(Fraction(1, 2**60))
        return float((r.lo + r.hi) / 2)

    def as_json(self) -> dict:
        if self.is_rational:
            return {"value": str(self.lo)}
        return {"poly": str(self.poly), "interval": [str(self.lo), str(self.hi)], "approx": self.approx()}


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the open interval ``(lo, hi)``."""
    if lo >= hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    fl = floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    a, b = lo - fl, hi - fl
    if a == 0:
        return fl + Fraction(1, floor(1 / b) + 1)
    return fl + 1 / simplest_between(1 / b, 1 / a)


def _rational_root_in(a: Dense, lo: Fraction, hi: Fraction) -> Fraction | None:
    """The rational root of integer-normalised ``a`` in ``(lo, hi)``, if any."""
    ints = _integer_coeffs(a)
    lead = abs(ints[-1])
    width = Fraction(1, lead * lead + 1)
    s = _sign(horner(a, lo))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        sm = _sign(horner(a, mid))
        if sm == 0:
            return mid
        if sm == s:
            lo = mid
        else:
            hi = mid
    q = simplest_between(lo, hi)
    if q.denominator <= lead and horner(a, q) == 0:
        return q
    return None


def _integer_coeffs(a: Dense) -> list[int]:
    from math import lcm

    m = 1
    for c in a:
        m = lcm(m, c.denominator)
    return [int(c * m) for c in a]


def isolate_real_roots(p: Poly) -> list[RealRoot]:
    """Disjoint isolating intervals, one per distinct real root, in increasing order.

    Rational roots are returned exactly.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.is_constant():
        return []
    var = p.free_vars()[0]
    sq = squarefree_part(p, var)
    a, _ = to_dense(sq)
    chain = sturm_chain(a)
    bound = cauchy_bound(a)
    lo, hi = -bound, bound
    total = _variations_inf(chain, False) - _variations_inf(chain, True)
    out: list[RealRoot] = []
    stack = [(lo, hi, total)]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            r = _rational_root_in(a, lo, hi) if horner(a, hi) != 0 else hi
            out.append(RealRoot(sq, r, r) if r is not None else RealRoot(sq, lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = _variations(chain, mid)
        left = _variations(chain, lo) - vm
        if horner(a, mid) == 0:
            out.append(RealRoot(sq, mid, mid))
            # keep (lo, mid) and (mid, hi) with non-root endpoints
            eps = (hi - lo) / 4
            while True:
                m1, m2 = mid - eps, mid + eps
                if horner(a, m1) != 0 and horner(a, m2) != 0 and \
                        _variations(chain, m1) - _variations(chain, m2) == 1:
                    break
                eps /= 2
            stack.append((lo, m1, _variations(chain, lo) - _variations(chain, m1)))
            stack.append((m2, hi, _variations(chain, m2) - _variations(chain, hi)))
            continue
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def sign_at_root(p: Poly, root: RealRoot) -> int:
    """Exact sign of ``p`` at the algebraic number ``root``."""
    if p.is_zero():
        return 0
    fv = p.free_vars()
    if not fv:
        return _sign(p.constant_value())
    if len(fv) > 1 or (fv[0] != root.var):
        raise ValueError(f"{p} is not univariate in {root.var}")
    a, _ = to_dense(p)
    if root.is_rational:
        return _sign(horner(a, root.lo))
    g = gcd(p, root.poly)
    if not g.is_constant() and count_real_roots(g, root.lo, root.hi) > 0:
        return 0
    sq = squarefree_part(p, fv[0])
    r = root
    while count_real_roots(sq, r.lo, r.hi) > 0:
        r = r.refine((r.hi - r.lo) / 2)
        if r.is_rational:
            return _sign(horner(a, r.lo))
    return _sign(horner(a, r.hi))
