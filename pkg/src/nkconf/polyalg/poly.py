"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as ``{exponent tuple: Fraction}`` over an ordered tuple of
generator names.  Binary operations between polynomials over different
generator tuples first merge the generators (order of first appearance).
Canonical term order is graded lexicographic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as igcd
from typing import Iterable, Mapping

Number = int | Fraction


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _grlex(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


class Poly:
    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Number] | None = None, gens: Iterable[str] = ()):
        self.gens = tuple(gens)
        n = len(self.gens)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            if c == 0:
                continue
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match generators {self.gens}")
            clean[exp] = _frac(c)
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c: Number, gens: Iterable[str] = ()) -> "Poly":
        gens = tuple(gens)
        return cls({(0,) * len(gens): c}, gens)

    @classmethod
    def var(cls, name: str, gens: Iterable[str] | None = None) -> "Poly":
        gens = tuple(gens) if gens is not None else (name,)
        if name not in gens:
            gens = gens + (name,)
        exp = tuple(1 if g == name else 0 for g in gens)
        return cls({exp: 1}, gens)

    @classmethod
    def _raw(cls, terms: dict, gens: tuple) -> "Poly":
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        return p

    # generator bookkeeping

    def with_gens(self, gens: tuple[str, ...]) -> "Poly":
        if gens == self.gens:
            return self
        idx = []
        for g in self.gens:
            if g in gens:
                idx.append(gens.index(g))
            else:
                idx.append(None)
        out = {}
        for exp, c in self.terms.items():
            new = [0] * len(gens)
            for e, j in zip(exp, idx):
                if e:
                    if j is None:
                        raise ValueError(f"generator {self.gens} not contained in {gens}")
                    new[j] = e
            out[tuple(new)] = c
        return Poly._raw(out, gens)

    def _unify(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if self.gens == other.gens:
            return self, other
        gens = self.gens + tuple(g for g in other.gens if g not in self.gens)
        return self.with_gens(gens), other.with_gens(gens)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.gens)
        return NotImplemented

    def free_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.gens)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(g for g, u in zip(self.gens, used) if u)

    def compact(self) -> "Poly":
        """Drop generators that do not occur."""
        return self.with_gens(self.free_vars())

    # predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # arithmetic

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.gens)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._unify(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(out, a.gens)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw({}, self.gens)
            return Poly._raw({e: c * other for e, c in self.terms.items()}, self.gens)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._unify(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(out, a.gens)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.gens)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / _frac(other))
        if isinstance(other, Poly):
            return divexact(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.gens)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._unify(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            c = self.compact()
            self._hash = hash(frozenset((tuple(sorted(zip(c.gens, e))), v) for e, v in c.terms.items()))
        return self._hash

    # structure

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.gens:
            return 0
        i = self.gens.index(var)
        return max(e[i] for e in self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex)
        return exp, self.terms[exp]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def coeffs_in(self, var: str) -> list["Poly"]:
        """Coefficients of ``self`` viewed in ``var``; index ``i`` holds the coefficient of ``var**i``."""
        if var not in self.gens:
            return [self] if self.terms else []
        i = self.gens.index(var)
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            buckets.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        if not buckets:
            return []
        d = max(buckets)
        return [Poly._raw(buckets.get(k, {}), self.gens) for k in range(d + 1)]

    @staticmethod
    def from_coeffs(coeffs: list["Poly"], var: str, gens: tuple[str, ...]) -> "Poly":
        x = Poly.var(var, gens)
        result = Poly._raw({}, x.gens)
        for k, c in enumerate(coeffs):
            if c:
                result = result + c * x ** k
        return result

    def lc_in(self, var: str) -> "Poly":
        cs = self.coeffs_in(var)
        return cs[-1] if cs else Poly._raw({}, self.gens)

    def diff(self, var: str) -> "Poly":
        if var not in self.gens:
            return Poly._raw({}, self.gens)
        i = self.gens.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return Poly._raw(out, self.gens)

    # evaluation and substitution

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        """Evaluate at a full rational point."""
        missing = [g for g in self.free_vars() if g not in values]
        if missing:
            raise ValueError(f"no value for {missing}")
        vals = [_frac(values.get(g, 0)) for g in self.gens]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def subs(self, values: Mapping[str, "Poly | Number"]) -> "Poly":
        """Substitute polynomials (or numbers) for some generators."""
        if not any(g in values for g in self.free_vars()):
            return self
        keep = tuple(g for g in self.gens if g not in values)
        reps = {}
        for g, v in values.items():
            if g in self.gens:
                reps[g] = v if isinstance(v, Poly) else Poly.const(v, keep)
        result = Poly._raw({}, keep)
        for e, c in self.terms.items():
            mono = {}
            t = None
            for g, k in zip(self.gens, e):
                if not k:
                    continue
                if g in reps:
                    f = reps[g] ** k
                    t = f if t is None else t * f
                else:
                    mono[g] = k
            m = Poly({tuple(mono.get(g, 0) for g in keep): c}, keep)
            result = result + (m if t is None else m * t)
        return result

    def substitute_rational_function(self, var: str, num: "Poly", den: "Poly") -> tuple["Poly", int]:
        """Clear ``den`` after substituting ``var = num/den``.

        Returns ``(N, k)`` with ``self(var=num/den) == N / den**k`` and
        ``k = deg_var(self)``.  The caller must record ``den != 0``.
        """
        if den.is_zero():
            raise ZeroDivisionError("substitution denominator is identically zero")
        cs = self.coeffs_in(var)
        k = len(cs) - 1
        if k < 0:
            return self, 0
        total = None
        for i, c in enumerate(cs):
            if not c:
                continue
            term = c * num ** i * den ** (k - i)
            total = term if total is None else total + term
        if total is None:
            total = Poly._raw({}, self.gens)
        return total, k

    # normalisation

    def content(self) -> Fraction:
        """Rational content; its sign matches the leading (grlex) coefficient."""
        if not self.terms:
            raise ValueError("zero polynomial has no content")
        nums = 0
        dens = 1
        for c in self.terms.values():
            nums = igcd(nums, c.numerator)
            dens = dens * c.denominator // igcd(dens, c.denominator)
        sign = 1 if self.leading_coefficient() > 0 else -1
        return Fraction(sign * nums, dens)

    def primitive(self) -> "Poly":
        return self * (1 / self.content())

    def monic(self) -> "Poly":
        return self * (1 / self.leading_coefficient())

    # text form

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __lt__(self, other: "Poly") -> bool:
        return sort_key(self) < sort_key(other)


def sort_key(p: Poly) -> tuple:
    """Deterministic ordering key (degree first, then terms by name)."""
    c = p.compact()
    named = sorted(
        ((tuple((g, k) for g, k in zip(c.gens, e) if k), v) for e, v in c.terms.items()),
        key=lambda t: (-sum(k for _, k in t[0]), t[0]),
    )
    return (p.degree(), [(m, (v.numerator, v.denominator)) for m, v in named])


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def parse_poly(text: str, gens: Iterable[str] = ()) -> Poly:
    """Parse text such as ``3/2*theta^2 - vartheta + 1`` or ``(t+1)^2*(t-3)``.

    Grammar: sums and differences of products; factors are integers,
    identifiers, parenthesised expressions and ``^`` with integer exponents.
    ``/`` is allowed between rational constants only.
    """
    gens = tuple(gens)
    tokens = []
    for m in _TOKEN.finditer(text):
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif op is not None and not op.isspace():
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos += 1
        return tok

    def expr() -> Poly:
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        total = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
            total = total + term() * sign
        return total

    def term() -> Poly:
        value = power()
        while peek() in (("op", "*"), ("op", "/")):
            if take()[1] == "*":
                value = value * power()
            else:
                d = power()
                if not d.is_constant() or d.is_zero():
                    raise ValueError(f"cannot parse polynomial {text!r}: division by {d}")
                value = value * (1 / d.constant_value())
        return value

    def power() -> Poly:
        base = atom()
        if peek() == ("op", "^"):
            take()
            return base ** take("num")[1]
        return base

    def atom() -> Poly:
        kind, val = peek()
        if kind == "num":
            take()
            return Poly.const(val, gens)
        if kind == "var":
            take()
            return Poly.var(val, gens)
        if (kind, val) == ("op", "("):
            take()
            inner = expr()
            take("op", ")")
            return inner
        if (kind, val) == ("op", "-"):
            take()
            return -atom()
        raise ValueError(f"cannot parse polynomial {text!r}")

    if not tokens:
        raise ValueError("empty polynomial")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return result


# exact division, remainders and gcds


def divmod_lex(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Multivariate division by a single divisor in lex order.

    The remainder is zero iff ``b`` divides ``a``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = a._unify(b)
    bl = max(b.terms)
    bc = b.terms[bl]
    q: dict = {}
    r: dict = {}
    work = dict(a.terms)
    gens = a.gens
    while work:
        e = max(work)
        c = work[e]
        if all(x >= y for x, y in zip(e, bl)):
            qe = tuple(x - y for x, y in zip(e, bl))
            qc = c / bc
            q[qe] = q.get(qe, 0) + qc
            for be, bcoef in b.terms.items():
                te = tuple(x + y for x, y in zip(qe, be))
                v = work.get(te, 0) - qc * bcoef
                if v:
                    work[te] = v
                else:
                    work.pop(te, None)
        else:
            r[e] = c
            del work[e]
    return Poly._raw({k: v for k, v in q.items() if v}, gens), Poly._raw(r, gens)


def divides(b: Poly, a: Poly) -> bool:
    if b.is_zero():
        return a.is_zero()
    return divmod_lex(a, b)[1].is_zero()


def divexact(a: Poly, b: Poly) -> Poly:
    q, r = divmod_lex(a, b)
    if not r.is_zero():
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def prem(a: Poly, b: Poly, var: str) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` in ``var``."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero")
    a, b = a._unify(b)
    n = b.degree(var)
    lc = b.lc_in(var)
    x = Poly.var(var, a.gens)
    r = a
    e = max(a.degree(var) - n + 1, 0)
    while not r.is_zero() and r.degree(var) >= n:
        d = r.degree(var)
        r = lc * r - r.lc_in(var) * x ** (d - n) * b
        e -= 1
    if e > 0:
        r = r * lc ** e
    return r


def _main_var(a: Poly, b: Poly) -> str | None:
    a, b = a._unify(b)
    used = set(a.free_vars()) | set(b.free_vars())
    for g in a.gens:
        if g in used:
            return g
    return None


def _normalize(p: Poly) -> Poly:
    return p.monic() if p.terms else p


def content_in(p: Poly, var: str) -> Poly:
    """gcd of the coefficients of ``p`` in ``var`` (monic)."""
    g = Poly._raw({}, p.gens)
    for c in p.coeffs_in(var):
        if c:
            g = gcd(g, c)
            if g.is_constant():
                return Poly.const(1, p.gens)
    return g


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (leading grlex coefficient 1)."""
    a, b = a._unify(b)
    if a.is_zero():
        return _normalize(b)
    if b.is_zero():
        return _normalize(a)
    if a.is_constant() or b.is_constant():
        return Poly.const(1, a.gens)
    if len(set(a.free_vars()) | set(b.free_vars())) > 1 and _coprime_by_specialization(a, b):
        return Poly.const(1, a.gens)
    x = _main_var(a, b)
    if x not in a.free_vars():
        return gcd(a, content_in(b, x))
    if x not in b.free_vars():
        return gcd(content_in(a, x), b)
    ca, cb = content_in(a, x), content_in(b, x)
    c = gcd(ca, cb)
    pa, pb = divexact(a, ca), divexact(b, cb)
    if pa.degree(x) < pb.degree(x):
        pa, pb = pb, pa
    if set(pa.free_vars()) | set(pb.free_vars()) == {x}:
        g = _univariate_euclid(pa, pb, x)
    else:
        while not pb.is_zero():
            r = prem(pa, pb, x)
            pa, pb = pb, (_pp_in(r, x) if not r.is_zero() else r)
            if not pb.is_zero() and pb.degree(x) == 0:
                pa = Poly.const(1, a.gens)
                break
        g = _pp_in(pa, x)
    return _normalize(c * g)


_PROBES = (Fraction(2), Fraction(-3), Fraction(5), Fraction(7, 2), Fraction(-11, 3), Fraction(13))


def _coprime_by_specialization(a: Poly, b: Poly) -> bool:
    """Sufficient test for ``gcd(a, b) == 1``.

    A common factor of positive degree in ``x`` keeps that degree after fixing
    the other variables anywhere the leading coefficient of ``a`` in ``x`` is
    nonzero, so coprime specialisations for every ``x`` rule it out.
    """
    fa, fb = set(a.free_vars()), set(b.free_vars())
    for x in sorted(fa & fb):
        others = sorted((fa | fb) - {x})
        lc = a.lc_in(x)
        for shift in range(len(_PROBES)):
            point = {v: _PROBES[(i + shift) % len(_PROBES)] for i, v in enumerate(others)}
            if lc.evaluate(point) != 0:
                break
        else:
            return False
        ua, ub = a.subs(point), b.subs(point)
        if not _univariate_euclid(ua, ub, x).is_constant():
            return False
    return True


def _pp_in(p: Poly, var: str) -> Poly:
    return divexact(p, content_in(p, var))


def _univariate_euclid(a: Poly, b: Poly, var: str) -> Poly:
    while not b.is_zero():
        a, b = b, divmod_lex(a, b)[1]
    return _normalize(a)


def squarefree_part(p: Poly, var: str | None = None) -> Poly:
    """``p / gcd(p, p')`` for a univariate polynomial, made monic."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if var is None:
        fv = p.free_vars()
        if len(fv) > 1:
            raise ValueError("squarefree_part needs a univariate polynomial")
        if not fv:
            return Poly.const(1, p.gens)
        var = fv[0]
    g = gcd(p, p.diff(var))
    return _normalize(divexact(p, g))


def content_and_primitive(p: Poly) -> tuple[Fraction, Poly]:
    if p.is_zero():
        raise ValueError("zero polynomial has no content")
    c = p.content()
    return c, p * (1 / c)
