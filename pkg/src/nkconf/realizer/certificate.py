"""Independent replay of NOT_REALIZABLE certificates.

Every step that makes an algebraic claim carries the polynomials it was
derived from, so each claim can be recomputed from the step alone.  The
checker shares the polynomial kernel with the solver but none of its
control flow.
"""

from __future__ import annotations

from fractions import Fraction

from ..polyalg import Poly, RealRoot, count_real_roots, divides, gcd, parse_poly, prem, resultant, sign_at_root
from ..polyalg.poly import content_in
from ..polyalg.tower import gcd_over_roots
from .system import Branch

TERMINAL = {"forced incidence", "missing incidence", "contradiction", "root rejected", "degenerate"}
SUBSTITUTING = {"root", "linear", "probe", "case"}


def _p(text: str) -> Poly:
    return parse_poly(text)


def associated(a: Poly, b: Poly) -> bool:
    """True if ``a = k*b`` for a nonzero rational ``k``."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    gens = tuple(sorted(set(a.free_vars()) | set(b.free_vars())))
    a, b = a.with_gens(gens), b.with_gens(gens)
    exp = next(iter(a.terms))
    if exp not in b.terms:
        return False
    return (a - b * (a.terms[exp] / b.terms[exp])).is_zero()


def _root(data: dict, var: str) -> RealRoot:
    if "value" in data:
        v = Fraction(data["value"])
        return RealRoot(Poly.var(var) - v, v, v)
    return RealRoot(_p(data["poly"]), Fraction(data["interval"][0]), Fraction(data["interval"][1]))


def _root_var(data: dict, fallback: str) -> str:
    if "poly" in data:
        fv = _p(data["poly"]).free_vars()
        return fv[0] if fv else fallback
    return fallback


def _is_root(r: RealRoot) -> bool:
    if r.is_rational:
        return r.poly.evaluate({r.var: r.lo}) == 0
    return count_real_roots(r.poly, r.lo, r.hi) == 1 and r.poly.evaluate({r.var: r.lo}) != 0 \
        and r.poly.evaluate({r.var: r.hi}) != 0


def _check_step(step: dict, prev: dict | None, branch: Branch | None, pristine: bool) -> str | None:
    rule = step["rule"]
    if rule == "forced incidence":
        if branch is not None and pristine:
            if not any(i.source == step["source"] and i.poly.is_zero() for i in branch.inequalities):
                return f"no vanishing inequality {step['source']} in the system"
        return None
    if rule == "missing incidence":
        q = _p(step["poly"])
        if not q.is_constant() or q.is_zero():
            return f"{q} is not a nonzero constant"
        if branch is not None and pristine:
            if not any(e.source == step["source"] and associated(e.poly, q) for e in branch.equalities):
                return f"no equality {step['source']} = {q} in the system"
        return None
    if rule == "cancel":
        eq = _p(step["equation"])
        prod = _p(step["remaining"])
        for f in step["factors"]:
            fac = _p(f["factor"])
            if fac.is_constant():
                return f"cancelled factor {fac} is constant"
            if not divides(fac, _p(f["nonzero_poly"])):
                return f"{fac} does not divide {f['nonzero_poly']}"
            prod = prod * fac
        if not associated(eq, prod):
            return f"factors do not multiply to {eq}"
        return None
    if rule == "contradiction":
        if "poly" in step:
            q = _p(step["poly"])
            return None if not q.is_zero() and count_real_roots(q) == 0 else f"{q} has a real root"
        if prev is None:
            return "contradiction without a premise"
        if prev["rule"] == "cancel":
            q = _p(prev["remaining"])
            return None if q.is_constant() and not q.is_zero() else "cancellation left a nonconstant factor"
        if prev["rule"] == "univariate gcd":
            q = _p(prev["gcd"])
            return None if q.is_constant() and not q.is_zero() else "gcd is not constant"
        return f"contradiction does not follow from {prev['rule']}"
    if rule == "univariate gcd":
        polys = [_p(t) for t in step["polys"]]
        g = polys[0]
        for q in polys[1:]:
            g = gcd(g, q)
        return None if associated(g, _p(step["gcd"])) else f"gcd is {g}, not {step['gcd']}"
    if rule == "root":
        r = _root(step["root"], step["variable"])
        if not _is_root(r):
            return "interval does not isolate a root"
        return None if sign_at_root(_p(step["poly"]), r) == 0 else "root is not a root of the gcd"
    if rule == "root rejected":
        if "poly" not in step:
            if prev is not None and prev["rule"] == "gcd over root" and _p(prev["gcd"]).is_constant():
                return None
            return "rejection without a constant gcd over the root"
        q = _p(step["poly"])
        var = _root_var(step["root"], "")
        r = _root(step["root"], var)
        if not _is_root(r):
            return "interval does not isolate a root"
        if "coefficients_in" in step:
            cs = [q]
            for v in step["coefficients_in"]:
                cs = [c for x in cs for c in x.coeffs_in(v) if not c.is_zero()] if v in q.gens else cs
            return None if all(sign_at_root(c, r) == 0 for c in cs) else "inequality does not vanish identically"
        s = sign_at_root(q, r)
        if step.get("text") == "equality does not vanish":
            return None if s != 0 else "equality vanishes at the root"
        return None if s == 0 else "inequality is nonzero at the root"
    if rule == "gcd over root":
        x, y = step["root_variable"], step["variable"]
        r = _root(step["root"], x)
        pieces = gcd_over_roots(r.poly, [_p(t) for t in step["polys"]], x, y)
        for gi, h in pieces:
            if associated(gi, _p(step["factor"])) and sign_at_root(gi, r) == 0:
                want = _p(step["gcd"])
                return None if (h - want).is_zero() or associated(h, want) else "gcd over the root differs"
        return "factor of the minimal polynomial not reproduced"
    if rule in ("pseudo-remainder", "resultant"):
        a, b = (_p(t) for t in step["polys"])
        v = step["variable"]
        got = prem(a, b, v) if rule == "pseudo-remainder" else resultant(a, b, v)
        return None if associated(got, _p(step["result"])) else f"{rule} does not reproduce"
    if rule == "split content":
        got = content_in(_p(step["equation"]), step["variable"])
        return None if associated(got, _p(step["content"])) else "content differs"
    if rule == "linear":
        v = Poly.var(step["variable"])
        lhs = _p(step["denominator"]) * v - _p(step["numerator"])
        return None if associated(lhs, _p(step["equation"])) else "linear solve does not match the equation"
    if rule in ("case", "sample", "probe", "degenerate"):
        return None
    return f"unknown rule {rule!r}"


def check_steps(steps: list[dict], branch: Branch | None = None) -> list[str]:
    """Problems found while replaying one branch's steps; empty when valid."""
    problems = []
    prev = None
    pristine = True
    for n, step in enumerate(steps):
        msg = _check_step(step, prev, branch, pristine)
        if msg:
            problems.append(f"step {n} ({step['rule']}): {msg}")
        if step["rule"] in SUBSTITUTING:
            pristine = False
        prev = step
    if not steps or steps[-1]["rule"] not in TERMINAL:
        problems.append("certificate does not end in a contradiction")
    return problems


def check_certificate(certificate: list[dict], branches: list[Branch] | None = None) -> list[str]:
    """Replay a NOT_REALIZABLE certificate (a list of per-branch step logs).

    With ``branches`` (from ``build_branches``) the opening constant steps
    are also matched against the original constraint system.
    """
    problems = []
    if branches is not None and len(certificate) != len(branches):
        problems.append(f"{len(certificate)} branch logs for {len(branches)} branches")
    paired = zip(certificate, branches) if branches is not None else ((e, None) for e in certificate)
    for entry, br in paired:
        for msg in check_steps(entry["steps"], br):
            problems.append(f"[{entry['branch']}] {msg}")
    return problems
