"""Decide geometric realizability of a configuration along a construction sequence."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..construction import ConstructionSequence, plan_min_free
from ..incidence import Configuration
from .solver import NOT_REALIZABLE, REALIZABLE, UNDECIDED, Item, Solver, Witness
from .system import Branch, build_branches


@dataclass
class Verdict:
    status: str
    sequence: str
    variables: int
    certificate: list[dict] = field(default_factory=list)
    witness: dict | None = None  # coordinates keyed "P:A" / "L:a"
    parameters: dict | None = None
    reason: str = ""
    branches: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "sequence": self.sequence,
            "variables": self.variables,
            "certificate": self.certificate,
            "witness": self.witness,
            "parameters": self.parameters,
            "reason": self.reason,
            "branches": self.branches,
        }


def _fmt(x: Fraction) -> str:
    return str(x)


def witness_coordinates(br: Branch, w: Witness) -> dict[str, list[str]]:
    """Coordinates of every element at the witness, as strings.

    Rational witnesses give exact rationals; otherwise entries are polynomials
    in the algebraic parameter.
    """
    out = {}
    for (kind, label), v in sorted(br.vectors.items()):
        coords = []
        for x in v:
            y = x.subs(w.rationals) if w.rationals else x
            for var, (num, den) in w.functions.items():
                if var in y.free_vars():
                    y, k = y.substitute_rational_function(var, num, den)
            coords.append(_fmt(y.constant_value()) if y.is_constant() else str(y))
        out[f"{kind}:{label}"] = _scale(coords)
    return out


def _scale(coords: list[str]) -> list[str]:
    """Clear denominators of a rational vector (projective rescaling)."""
    try:
        vals = [Fraction(c) for c in coords]
    except ValueError:
        return coords
    from math import gcd, lcm

    d = lcm(*(v.denominator for v in vals))
    ints = [int(v * d) for v in vals]
    g = gcd(*ints) or 1
    return [str(i // g) for i in ints]


def check_rational_witness(c: Configuration, coords: dict[str, list[str]]) -> list[str]:
    """Independent check of exact rational coordinates; returns the problems found."""
    pts = {p: [Fraction(x) for x in coords[f"P:{p}"]] for p in c.points}
    lns = {l: [Fraction(x) for x in coords[f"L:{l}"]] for l in c.lines}
    problems = [f"{k} is the zero vector" for k, v in list(pts.items()) + list(lns.items()) if not any(v)]
    for p, u in pts.items():
        for l, v in lns.items():
            on = sum(a * b for a, b in zip(u, v)) == 0
            if on != c.is_incident(p, l):
                problems.append(f"{p}-{l}: {'unwanted' if on else 'missing'} incidence")
    return problems


def check_witness(c: Configuration, br: Branch, w: Witness) -> list[str]:
    """Check a possibly algebraic witness by exact sign evaluation."""
    problems = []
    for (kind, label), v in br.vectors.items():
        if all(w.sign(x) == 0 for x in v):
            problems.append(f"{label} is the zero vector")
    for p in c.points:
        for l in c.lines:
            u, v = br.vectors[("P", p)], br.vectors[("L", l)]
            d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
            on = w.sign(d) == 0
            if on != c.is_incident(p, l):
                problems.append(f"{p}-{l}: {'unwanted' if on else 'missing'} incidence")
    return problems


def realize(c: Configuration, seq: ConstructionSequence | None = None, max_vars: int = 2,
            strip: bool = True, budget: int = 200_000) -> Verdict:
    """Decide whether ``c`` has a realization with straight lines in the real plane.

    Without ``seq`` a sequence with the fewest free steps is planned first.
    Every branch of the symbolic construction is solved separately; the
    configuration is realizable iff some branch has a verified witness.
    """
    if seq is None:
        seq = plan_min_free(c, budget=budget).sequence
    branches = build_branches(c, seq, strip=strip)
    nvars = len(branches[0].params) if branches else 0
    summaries = []
    certificate: list[dict] = []
    undecided_reason = ""
    for br in branches:
        summary = {"choices": br.choices, "equalities": len(br.equalities),
                   "inequalities": len(br.inequalities)}
        summaries.append(summary)
        if br.degenerate:
            summary["status"] = NOT_REALIZABLE
            cert = [{"rule": "degenerate", "text": br.degenerate}]
        else:
            solver = Solver(max_vars=max_vars)
            out = solver.solve([Item(e.poly, e.source) for e in br.equalities],
                               [Item(i.poly, i.source) for i in br.inequalities])
            summary["status"] = out.status
            cert = out.certificate
            if out.status == REALIZABLE:
                problems = check_witness(c, br, out.witness)
                coords = witness_coordinates(br, out.witness)
                if out.witness.is_rational():
                    problems += check_rational_witness(c, coords)
                if problems:
                    summary["status"] = UNDECIDED
                    undecided_reason = "witness failed verification: " + "; ".join(problems[:3])
                    continue
                return Verdict(REALIZABLE, str(seq), nvars, cert, coords, out.witness.to_json(),
                               branches=summaries)
            if out.status == UNDECIDED:
                undecided_reason = undecided_reason or out.reason
        label = " / ".join(br.choices) if br.choices else "main"
        certificate.append({"branch": label, "steps": cert})
    if any(s["status"] == UNDECIDED for s in summaries):
        return Verdict(UNDECIDED, str(seq), nvars, certificate, reason=undecided_reason, branches=summaries)
    return Verdict(NOT_REALIZABLE, str(seq), nvars, certificate, branches=summaries)


def polys_in_certificate(v: Verdict) -> list[str]:
    """All polynomial strings mentioned in a certificate (for inspection)."""
    out = []
    for br in v.certificate:
        for s in br["steps"]:
            for k in ("equation", "gcd", "result", "remaining", "numerator", "denominator"):
                if k in s:
                    out.append(s[k])
    return out

