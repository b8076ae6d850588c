"""Symbolic construction of a configuration along a construction sequence.

Each free step introduces one parameter; every other element is the cross
product of two already placed neighbours.  Incidences become polynomial
equalities, non-incidences and non-degeneracy factors become inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..construction import ConstructionSequence, Step
from ..incidence import Configuration
from ..polyalg import Poly
from .vectors import DegenerateError, PencilBranch, Vec, dot, normalize, pencil, raw_cross, vec

Node = tuple[str, str]

FRAME = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))


def parameter_names(count: int) -> tuple[str, ...]:
    names = ["theta", "vartheta"]
    names += [f"t{i}" for i in range(3, count + 1)]
    return tuple(names[:count])


@dataclass(frozen=True)
class Constraint:
    """``poly = 0`` (kind ``eq``) or ``poly != 0`` (kind ``neq``)."""

    kind: str
    poly: Poly
    source: str  # e.g. "R-h" for the pair (point R, line h), or "nondegenerate h"

    def to_json(self) -> dict:
        return {"kind": self.kind, "poly": str(self.poly), "source": self.source}


@dataclass
class Branch:
    """One symbolic construction: a choice of pencil branch for each free step."""

    params: tuple[str, ...]
    vectors: dict[Node, Vec] = field(default_factory=dict)
    order: list[Node] = field(default_factory=list)
    equalities: list[Constraint] = field(default_factory=list)
    inequalities: list[Constraint] = field(default_factory=list)
    choices: list[str] = field(default_factory=list)
    degenerate: str | None = None  # set if two elements were forced to coincide

    def copy(self) -> "Branch":
        return Branch(self.params, dict(self.vectors), list(self.order), list(self.equalities),
                      list(self.inequalities), list(self.choices), self.degenerate)

    def constant_conflicts(self) -> list[Constraint]:
        """Equalities that are nonzero constants and inequalities that are identically zero."""
        bad = [e for e in self.equalities if e.poly.is_constant() and not e.poly.is_zero()]
        bad += [i for i in self.inequalities if i.poly.is_zero()]
        return bad

    def to_json(self) -> dict:
        return {
            "choices": self.choices,
            "vectors": {f"{k}:{x}": [str(c) for c in v] for (k, x), v in sorted(self.vectors.items())},
            "equalities": [e.to_json() for e in self.equalities],
            "inequalities": [i.to_json() for i in self.inequalities],
            "degenerate": self.degenerate,
        }


def _pair_name(a: Node, b: Node) -> str:
    p, l = (a, b) if a[0] == "P" else (b, a)
    return f"{p[1]}-{l[1]}"


class _Builder:
    def __init__(self, c: Configuration, seq: ConstructionSequence, strip: bool = True):
        self.c = c
        self.strip = strip
        self.seq = seq
        self.params = parameter_names(seq.free_count + seq.restarts)  # a restart needs two
        self.adj: dict[Node, set[Node]] = {}
        for l, pts in c.line_points.items():
            for p in pts:
                self.adj.setdefault(("P", p), set()).add(("L", l))
                self.adj.setdefault(("L", l), set()).add(("P", p))

    def const(self, v) -> Vec:
        return vec(v, self.params)

    def place(self, br: Branch, node: Node, v: Vec) -> None:
        """Record ``node`` and emit its constraints against placed counterparts."""
        br.vectors[node] = v
        br.order.append(node)
        for other in br.order[:-1]:
            if other[0] == node[0]:
                continue
            d = dot(v, br.vectors[other])
            src = _pair_name(node, other)
            if other in self.adj.get(node, ()):
                if not d.is_zero():
                    br.equalities.append(Constraint("eq", d, src))
            else:
                br.inequalities.append(Constraint("neq", d, src))
        # distinct elements of the same kind must not coincide; for two points
        # this is implied by the line through one of them missing the other,
        # which the girth condition guarantees, so it is not emitted separately

    def determined(self, br: Branch, node: Node) -> None:
        # neighbours in label order, so the result does not depend on how
        # elements were grouped into steps
        nbrs = sorted(o for o in br.order if o in self.adj.get(node, ()))
        if len(nbrs) < 2:
            raise ValueError(f"{node[1]} has fewer than two placed neighbours")
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                w = raw_cross(br.vectors[nbrs[i]], br.vectors[nbrs[j]])
                if any(not x.is_zero() for x in w):
                    v, factor = normalize(w, polynomial=self.strip)
                    if i or j != 1:
                        br.choices.append(f"{node[1]} from {nbrs[i][1]},{nbrs[j][1]}")
                    if factor is not None:
                        br.inequalities.append(Constraint("neq", factor, f"nondegenerate {node[1]}"))
                    self.place(br, node, v)
                    return
        a, b = nbrs[0][1], nbrs[1][1]
        br.degenerate = f"{a} and {b} coincide identically, so {node[1]} is undetermined"
        raise DegenerateError(br.degenerate)

    def free(self, br: Branch, step: Step, t: Poly) -> list[Branch]:
        node = (step.kind, step.elements[0])
        piv = br.vectors[step.pivot]
        out = []
        cases = pencil(piv)
        for n, pb in enumerate(cases, 1):
            for at_infinity in (False, True):
                nb = br.copy()
                self._side_conditions(nb, pb, node)
                v = pb.direction if at_infinity else pb.member(t)
                tag = f"{node[1]} = " + ("direction" if at_infinity else "base + " + str(t))
                if len(cases) > 1:
                    tag += f" (pencil case {n})"
                nb.choices.append(tag)
                self.place(nb, node, v)
                out.append(nb)
        return out

    def _side_conditions(self, br: Branch, pb: PencilBranch, node: Node) -> None:
        for z in pb.zero:
            br.equalities.append(Constraint("eq", z, f"pencil case for {node[1]}"))
        for nz in pb.nonzero:
            br.inequalities.append(Constraint("neq", nz, f"pencil case for {node[1]}"))

    def restart(self, br: Branch, node: Node, s: Poly, t: Poly) -> list[Branch]:
        """A free element with no placed neighbour ranges over the whole plane."""
        one, zero = Poly.const(1, self.params), Poly.const(0, self.params)
        out = []
        for v in ((s, t, one), (one, s, zero), (zero, one, zero)):
            nb = br.copy()
            nb.choices.append(f"restart {node[1]} = [{', '.join(map(str, v))}]")
            self.place(nb, node, v)
            out.append(nb)
        return out


def build_branches(c: Configuration, seq: ConstructionSequence, strip: bool = True) -> list[Branch]:
    """Run the sequence symbolically and return one ``Branch`` per pencil choice.

    The four base points get the standard projective frame.  A branch whose
    construction degenerates keeps its partial state and sets ``degenerate``.
    With ``strip=False`` common polynomial factors stay in the vectors, which
    keeps the equalities larger but closer to a hand computation.
    """
    b = _Builder(c, seq, strip)
    root = Branch(b.params)
    for node, coords in zip((("P", x) for x in seq.base), FRAME):
        b.place(root, node, b.const(coords))
    live = [root]
    finished: list[Branch] = []
    free_index = 0
    for step in seq.steps[1:]:
        if step.free:
            node = (step.kind, step.elements[0])
            nxt = []
            if step.restart:
                s, t = (Poly.var(x, b.params) for x in b.params[free_index:free_index + 2])
                free_index += 2
                for br in live:
                    nxt.extend(b.restart(br, node, s, t))
            else:
                t = Poly.var(b.params[free_index], b.params)
                free_index += 1
                for br in live:
                    nxt.extend(b.free(br, step, t))
            live = nxt
            continue
        nxt = []
        for br in live:
            try:
                for e in step.elements:
                    b.determined(br, (step.kind, e))
                nxt.append(br)
            except DegenerateError:
                finished.append(br)
        live = nxt
    return live + finished
