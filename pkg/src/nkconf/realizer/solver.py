"""Exact decision procedure for small polynomial systems ``E = 0, I != 0``.

Handles systems with at most two active variables by factor cancellation,
univariate gcds with Sturm root isolation, linear substitution and
elimination by pseudo-remainders or resultants.  Systems without equalities
are settled by searching a grid of small rationals.  Anything else is
reported as undecided rather than guessed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..polyalg import Poly, RealRoot, divexact, gcd, isolate_real_roots, prem, resultant, sign_at_root
from ..polyalg.poly import content_in
from ..polyalg.tower import gcd_over_roots

REALIZABLE = "REALIZABLE"
NOT_REALIZABLE = "NOT_REALIZABLE"
UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Item:
    poly: Poly
    source: str


@dataclass
class Witness:
    """A real point: rational values, at most one algebraic coordinate, and
    coordinates given as rational functions of the algebraic one."""

    rationals: dict[str, Fraction] = field(default_factory=dict)
    root: tuple[str, RealRoot] | None = None
    functions: dict[str, tuple[Poly, Poly]] = field(default_factory=dict)

    def sign(self, p: Poly) -> int:
        """Exact sign of ``p`` at this point."""
        q = p.subs(self.rationals) if self.rationals else p
        for var, (num, den) in self.functions.items():
            if var in q.free_vars():
                q, k = q.substitute_rational_function(var, num, den)
                if k % 2 and self._sign_plain(den) < 0:
                    q = -q
        return self._sign_plain(q)

    def _sign_plain(self, q: Poly) -> int:
        q = q.subs(self.rationals) if self.rationals else q
        if q.is_constant():
            v = q.constant_value()
            return (v > 0) - (v < 0)
        if self.root is None or set(q.free_vars()) != {self.root[0]}:
            raise ValueError(f"witness does not fix all variables of {q}")
        return sign_at_root(q, self.root[1])

    def is_rational(self) -> bool:
        return self.root is None and not self.functions

    def to_json(self) -> dict:
        out = {k: str(v) for k, v in sorted(self.rationals.items())}
        if self.root is not None:
            out[self.root[0]] = self.root[1].as_json()
        for k, (num, den) in sorted(self.functions.items()):
            out[k] = {"numerator": str(num), "denominator": str(den)}
        return out


@dataclass
class Outcome:
    status: str
    certificate: list[dict] = field(default_factory=list)
    witness: Witness | None = None
    reason: str = ""


def _step(rule: str, **kw) -> dict:
    d = {"rule": rule}
    d.update({k: (str(v) if isinstance(v, Poly) else v) for k, v in kw.items()})
    return d


class Solver:
    """Case-splitting solver; ``budget`` bounds the number of explored cases."""

    def __init__(self, max_vars: int = 2, budget: int = 200, samples: int = 4000):
        self.max_vars = max_vars
        self.budget = budget
        self.samples = samples

    def solve(self, eqs: list[Item], neqs: list[Item]) -> Outcome:
        self.budget_left = self.budget
        return self._solve(list(eqs), list(neqs), [])

    # main recursion

    def _solve(self, eqs: list[Item], neqs: list[Item], cert: list[dict]) -> Outcome:
        self.budget_left -= 1
        if self.budget_left < 0:
            return Outcome(UNDECIDED, cert, reason="case budget exhausted")
        cert = list(cert)
        closed = self._constants(eqs, neqs, cert)
        if closed:
            return closed
        eqs = [e for e in eqs if not e.poly.is_zero()]
        neqs = _dedupe([i for i in neqs if not i.poly.is_constant()])
        eqs, closed = self._cancel(eqs, neqs, cert)
        if closed:
            return closed
        eqs = _dedupe(eqs)
        if not eqs:
            return self._sample(neqs, cert)
        active = sorted({v for it in eqs + neqs for v in it.poly.free_vars()})
        if len(active) > self.max_vars:
            return Outcome(UNDECIDED, cert, reason=f"{len(active)} active variables exceed the limit of {self.max_vars}")
        uni = self._univariate_groups(eqs)
        if uni:
            return self._roots(uni, eqs, neqs, cert)
        if len(active) == 1:
            raise AssertionError("univariate equalities must have been grouped")
        return self._eliminate(eqs, neqs, active, cert)

    def _constants(self, eqs, neqs, cert) -> Outcome | None:
        bad_e = [e for e in eqs if e.poly.is_constant() and not e.poly.is_zero()]
        bad_i = [i for i in neqs if i.poly.is_zero()]
        if not bad_e and not bad_i:
            return None
        for i in bad_i:
            cert.append(_step("forced incidence", source=i.source, text="0 != 0"))
        for e in bad_e:
            cert.append(_step("missing incidence", source=e.source, poly=e.poly, text=f"{e.poly} = 0"))
        return Outcome(NOT_REALIZABLE, cert)

    def _cancel(self, eqs, neqs, cert):
        """Divide every equality by its common factors with the inequalities."""
        out = []
        for e in eqs:
            p = e.poly
            removed = []
            fv = set(p.free_vars())
            for i in neqs:
                if not fv & set(i.poly.free_vars()):
                    continue
                g = gcd(p, i.poly)
                while not g.is_constant():
                    p = divexact(p, g)
                    removed.append({"factor": str(g.primitive()), "nonzero_by": i.source, "nonzero_poly": str(i.poly)})
                    g = gcd(p, i.poly)
                fv = set(p.free_vars())
                if p.is_constant():
                    break
            if removed:
                cert.append(_step("cancel", source=e.source, equation=e.poly, factors=removed, remaining=p))
            if p.is_constant():
                cert.append(_step("contradiction", source=e.source,
                                  text=f"every factor of {e.poly} is nonzero"))
                return out, Outcome(NOT_REALIZABLE, cert)
            out.append(Item(p.primitive(), e.source))
        return out, None

    # univariate

    def _univariate_groups(self, eqs) -> dict[str, list[Item]]:
        groups: dict[str, list[Item]] = {}
        for e in eqs:
            fv = e.poly.free_vars()
            if len(fv) == 1:
                groups.setdefault(fv[0], []).append(e)
        return groups

    def _roots(self, uni, eqs, neqs, cert) -> Outcome:
        var = min(uni, key=lambda v: (min(e.poly.degree() for e in uni[v]), v))
        group = sorted(uni[var], key=lambda e: (e.poly.degree(), str(e.poly)))
        g = group[0].poly
        for e in group[1:]:
            g = gcd(g, e.poly)
            if g.is_constant():
                break
        cert.append(_step("univariate gcd", variable=var, sources=[e.source for e in group],
                          polys=[str(e.poly) for e in group], gcd=g))
        if g.is_constant():
            cert.append(_step("contradiction", text=f"the equalities in {var} have no common root"))
            return Outcome(NOT_REALIZABLE, cert)
        roots = isolate_real_roots(g)
        if not roots:
            cert.append(_step("contradiction", poly=g, text=f"{g} has no real root"))
            return Outcome(NOT_REALIZABLE, cert)
        undecided = None
        for r in roots:
            sub = list(cert)
            sub.append(_step("root", variable=var, poly=g, root=r.as_json()))
            if r.is_rational:
                val = r.value()
                res = self._solve([Item(e.poly.subs({var: val}), e.source) for e in eqs],
                                  [Item(i.poly.subs({var: val}), i.source) for i in neqs], sub)
                if res.status == REALIZABLE:
                    res.witness.rationals[var] = val
                    _resolve_functions(res.witness)
                    return res
            else:
                res = self._algebraic(var, r, eqs, neqs, sub)
                if res.status == REALIZABLE:
                    return res
            if res.status == UNDECIDED:
                undecided = undecided or res
            cert = res.certificate if res.status == NOT_REALIZABLE else cert
        if undecided:
            return Outcome(UNDECIDED, cert, reason=undecided.reason)
        return Outcome(NOT_REALIZABLE, cert)

    def _algebraic(self, var: str, r: RealRoot, eqs, neqs, cert) -> Outcome:
        """Fix ``var`` at an irrational root; other variables must stay free."""
        others = sorted({v for it in eqs + neqs for v in it.poly.free_vars()} - {var})
        if not others:
            for e in eqs:
                if sign_at_root(e.poly, r) != 0:
                    cert.append(_step("root rejected", source=e.source, poly=e.poly, root=r.as_json(),
                                      text="equality does not vanish"))
                    return Outcome(NOT_REALIZABLE, cert)
            for i in neqs:
                if sign_at_root(i.poly, r) == 0:
                    cert.append(_step("root rejected", source=i.source, poly=i.poly, root=r.as_json(),
                                      text=f"{i.poly} vanishes at the root"))
                    return Outcome(NOT_REALIZABLE, cert)
            return Outcome(REALIZABLE, cert, Witness(root=(var, r)))
        if any(any(sign_at_root(c, r) != 0 for c in _coefficients(e.poly, others)) for e in eqs):
            return self._over_root(var, r, others, eqs, neqs, cert)
        live = []
        for i in neqs:
            cs = _coefficients(i.poly, others)
            if all(sign_at_root(c, r) == 0 for c in cs):
                cert.append(_step("root rejected", source=i.source, poly=i.poly, root=r.as_json(),
                                  coefficients_in=others, text=f"{i.poly} vanishes at the root"))
                return Outcome(NOT_REALIZABLE, cert)
            live.append(i)
        # each remaining inequality excludes finitely many values of the others
        for point in itertools.islice(_grid(len(others)), self.samples):
            vals = dict(zip(others, point))
            if all(sign_at_root(i.poly.subs(vals), r) != 0 for i in live):
                return Outcome(REALIZABLE, cert, Witness(rationals=vals, root=(var, r)))
        return Outcome(UNDECIDED, cert, reason="no sample point found over an irrational root")

    def _over_root(self, var: str, r: RealRoot, others, eqs, neqs, cert) -> Outcome:
        """Common roots in a second variable while ``var`` is fixed at ``r``."""
        if len(others) > 1:
            return Outcome(UNDECIDED, cert, reason="equalities in several variables over an irrational root")
        y = others[0]
        pieces = gcd_over_roots(r.poly, [e.poly for e in eqs], var, y)
        gi, h = next((gi, h) for gi, h in pieces if sign_at_root(gi, r) == 0)
        cert.append(_step("gcd over root", variable=y, root_variable=var, polys=[str(e.poly) for e in eqs],
                          root=r.as_json(), factor=gi, gcd=h))
        if h.is_constant():
            cert.append(_step("root rejected", text=f"the equalities have no common {y} at this root"))
            return Outcome(NOT_REALIZABLE, cert)
        if h.degree(y) > 1:
            return Outcome(UNDECIDED, cert, reason=f"degree {h.degree(y)} gcd in {y} over an irrational root")
        # h = y + c(var): the common value of y is unique
        value = -h.coeffs_in(y)[0]
        one = Poly.const(1, value.gens)
        for i in neqs:
            q = i.poly.subs({y: value})
            if sign_at_root(q, r) == 0:
                cert.append(_step("root rejected", source=i.source, poly=q, root=r.as_json(),
                                  text=f"vanishes at {y} = {value}"))
                return Outcome(NOT_REALIZABLE, cert)
        return Outcome(REALIZABLE, cert, Witness(root=(var, r), functions={y: (value, one)}))

    # two variables

    def _eliminate(self, eqs, neqs, active, cert) -> Outcome:
        # split off contents so that every equality is primitive in each variable
        for e in eqs:
            for v in active:
                if e.poly.degree(v) < 1:
                    continue
                cont = content_in(e.poly, v)
                if not cont.is_constant():
                    return self._split_content(e, v, cont, eqs, neqs, cert)
        linear = [(e, v) for e in eqs for v in active if e.poly.degree(v) == 1]
        if linear:
            e, v = min(linear, key=lambda ev: (ev[0].poly.degree(), len(ev[0].poly.terms), ev[1]))
            return self._substitute(e, v, eqs, neqs, cert)
        for v in reversed(active):  # eliminate the most recent parameter first
            quads = sorted((e for e in eqs if e.poly.degree(v) == 2), key=lambda e: (len(e.poly.terms), e.source))
            for a, b in itertools.combinations(quads, 2):
                r = prem(a.poly, b.poly, v)
                if r.is_zero():
                    continue
                cert.append(_step("pseudo-remainder", variable=v, sources=[a.source, b.source],
                                  polys=[str(a.poly), str(b.poly)], result=r))
                return self._solve(eqs + [Item(r, f"prem({a.source},{b.source})")], neqs, cert)
        pairs = []
        for v in active:
            with_v = [e for e in eqs if e.poly.degree(v) >= 1]
            for a, b in itertools.combinations(with_v, 2):
                pairs.append((a.poly.degree(v) * b.poly.degree(v), v, a, b))
        for _, v, a, b in sorted(pairs, key=lambda t: (t[0], t[1], t[2].source, t[3].source)):
            r = resultant(a.poly, b.poly, v)
            if r.is_zero():
                continue
            cert.append(_step("resultant", variable=v, sources=[a.source, b.source],
                              polys=[str(a.poly), str(b.poly)], result=r))
            return self._solve(eqs + [Item(r, f"res({a.source},{b.source})")], neqs, cert)
        return self._curve(eqs, neqs, active, cert)

    def _split_content(self, e, v, cont, eqs, neqs, cert) -> Outcome:
        rest = [x for x in eqs if x is not e]
        reduced = Item(divexact(e.poly, cont), e.source)
        cert.append(_step("split content", source=e.source, variable=v, equation=e.poly, content=cont))
        a = self._solve(rest + [Item(cont, e.source + " content")], neqs, cert + [_step("case", text=f"{cont} = 0")])
        if a.status == REALIZABLE:
            return a
        b = self._solve(rest + [reduced], neqs + [Item(cont, e.source + " content")],
                        a.certificate + [_step("case", text=f"{cont} != 0")])
        return _combine(a, b)

    def _substitute(self, e, v, eqs, neqs, cert) -> Outcome:
        """Solve ``e = a*v + b`` for ``v`` (case ``a != 0``) or force ``a = b = 0``."""
        b_, a_ = e.poly.coeffs_in(v)
        num, den = -b_, a_
        cert.append(_step("linear", source=e.source, variable=v, equation=e.poly, numerator=num, denominator=den))
        rest = [x for x in eqs if x is not e]
        sub_eqs = [Item(x.poly.substitute_rational_function(v, num, den)[0], x.source) for x in rest]
        sub_neqs = [Item(x.poly.substitute_rational_function(v, num, den)[0], x.source) for x in neqs]
        sub_neqs.append(Item(den, f"denominator of {v}"))
        first = self._solve(sub_eqs, sub_neqs, cert + [_step("case", text=f"{den} != 0")])
        if first.status == REALIZABLE:
            w = first.witness
            if w.root is None:
                w.rationals[v] = _eval_ratio(num, den, w.rationals)
            else:
                w.functions[v] = (num.subs(w.rationals), den.subs(w.rationals))
            return first
        if den.is_constant():
            return first
        second = self._solve(rest + [Item(den, f"{e.source} leading"), Item(b_, f"{e.source} constant")], neqs,
                             first.certificate + [_step("case", text=f"{den} = 0")])
        return _combine(first, second)

    def _curve(self, eqs, neqs, active, cert) -> Outcome:
        """One-dimensional solution set: probe rational values of one variable."""
        u = active[0]
        for val in itertools.islice(_rationals(), 40):
            sub_eqs = [Item(e.poly.subs({u: val}), e.source) for e in eqs]
            sub_neqs = [Item(i.poly.subs({u: val}), i.source) for i in neqs]
            saved = self.budget_left
            res = self._solve(sub_eqs, sub_neqs, [])
            self.budget_left = saved
            if res.status == REALIZABLE:
                res.witness.rationals[u] = val
                _resolve_functions(res.witness)
                res.certificate = cert + [_step("probe", variable=u, value=str(val))] + res.certificate
                return res
        return Outcome(UNDECIDED, cert, reason="positive-dimensional equality set; no rational probe succeeded")

    # no equalities

    def _sample(self, neqs, cert) -> Outcome:
        vars_ = sorted({v for i in neqs for v in i.poly.free_vars()})
        if not vars_:
            return Outcome(REALIZABLE, cert, Witness())
        for point in itertools.islice(_grid(len(vars_)), self.samples):
            vals = dict(zip(vars_, point))
            if all(i.poly.evaluate(vals) != 0 for i in neqs):
                cert.append(_step("sample", values={k: str(x) for k, x in vals.items()}))
                return Outcome(REALIZABLE, cert, Witness(rationals=vals))
        return Outcome(UNDECIDED, cert, reason="no sample point avoids all inequalities")


def _combine(a: Outcome, b: Outcome) -> Outcome:
    if b.status == REALIZABLE:
        return b
    if a.status == NOT_REALIZABLE and b.status == NOT_REALIZABLE:
        return Outcome(NOT_REALIZABLE, b.certificate)
    und = a if a.status == UNDECIDED else b
    return Outcome(UNDECIDED, b.certificate, reason=und.reason)


def _dedupe(items: list[Item]) -> list[Item]:
    seen = {}
    for it in items:
        key = it.poly.primitive() if not it.poly.is_zero() else it.poly
        seen.setdefault(key, it)
    return list(seen.values())


def _coefficients(p: Poly, others: list[str]) -> list[Poly]:
    """Coefficients of ``p`` viewed as a polynomial in ``others``."""
    out = [p]
    for v in others:
        out = [c for q in out for c in q.coeffs_in(v) if not c.is_zero()]
    return out


def _eval_ratio(num: Poly, den: Poly, vals: dict) -> Fraction:
    return num.evaluate(vals) / den.evaluate(vals)


def _resolve_functions(w: Witness) -> None:
    """Turn rational-function coordinates into numbers once their argument is rational."""
    if w.root is not None:
        return
    for var, (num, den) in list(w.functions.items()):
        w.rationals[var] = _eval_ratio(num, den, w.rationals)
        del w.functions[var]


def _rationals():
    """0, 1, -1, 2, -2, 1/2, -1/2, 3, ... ordered by height."""
    seen = set()
    for h in itertools.count(1):
        for q in range(1, h + 1):
            for p in range(0, h + 1):
                if max(p, q) != h:
                    continue
                x = Fraction(p, q)
                for y in (x, -x):
                    if y not in seen:
                        seen.add(y)
                        yield y


def _grid(n: int):
    """Tuples of small rationals in order of increasing index sum."""
    pool: list[Fraction] = []
    gen = _rationals()
    for total in itertools.count(0):
        while len(pool) <= total:
            pool.append(next(gen))
        for idx in _compositions(total, n):
            yield tuple(pool[i] for i in idx)


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest
