"""Projective bases and construction sequences.

A sequence starts from four base points and repeatedly adds *all* unplaced
elements incident to at least two placed ones (a determined step); when there
are none it adds one element incident to exactly one placed element (a free
step).  Elements are addressed as ``("P", label)`` or ``("L", label)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .incidence import Configuration

Node = tuple[str, str]


class SequenceError(ValueError):
    """A sequence that does not follow the construction rule for its configuration."""


class NoProjectiveBase(ValueError):
    """The structure has no four points forming a projective base."""


def is_projective_base(c: Configuration, quad) -> bool:
    pts = list(quad)
    if len(set(pts)) != 4:
        return False
    for t in combinations(pts, 3):
        ts = set(t)
        if not any(len(ts.intersection(c.line_points[l])) == 2 for l in c.lines):
            return False
    return True


def find_projective_bases(c: Configuration) -> list[tuple[str, str, str, str]]:
    """All projective bases as sorted 4-tuples, in lexicographic order."""
    # a triple passes iff some line meets it in exactly two points
    ok_triples = set()
    pts = sorted(c.points)
    for l in c.lines:
        on = sorted(c.line_points[l])
        onset = set(on)
        for a, b in combinations(on, 2):
            for x in pts:
                if x not in onset:
                    ok_triples.add(tuple(sorted((a, b, x))))
    out = []
    for quad in combinations(pts, 4):
        if all(t in ok_triples for t in combinations(quad, 3)):
            out.append(quad)
    return out


@dataclass(frozen=True)
class Step:
    kind: str  # "P" or "L"
    elements: tuple[str, ...]
    free: bool = False
    pivot: Node | None = None  # the single placed neighbour of a free element
    restart: bool = False  # free element with no placed neighbour (new component)

    def label(self) -> str:
        body = _join(self.elements)
        return f"[{body}]" if self.free else body


def _join(labels) -> str:
    labels = list(labels)
    if all(len(x) == 1 for x in labels):
        return "".join(labels)
    return ",".join(labels)


@dataclass(frozen=True)
class ConstructionSequence:
    base: tuple[str, ...]
    steps: tuple[Step, ...]  # steps[0] holds the base points

    @property
    def free_steps(self) -> list[Step]:
        return [s for s in self.steps if s.free]

    @property
    def free_count(self) -> int:
        return sum(1 for s in self.steps if s.free)

    @property
    def restarts(self) -> int:
        return sum(1 for s in self.steps if s.restart)

    def nodes(self):
        for s in self.steps:
            for e in s.elements:
                yield (s.kind, e)

    def __str__(self) -> str:
        return " - ".join(s.label() for s in self.steps)

    def to_json(self) -> dict:
        return {
            "sequence": str(self),
            "base": list(self.base),
            "free_count": self.free_count,
            "restarts": self.restarts,
            "free_steps": [{"kind": s.kind, "element": s.elements[0],
                            "pivot": list(s.pivot) if s.pivot else None} for s in self.free_steps],
        }


class _Graph:
    """Integer-indexed Levi graph used by the sequence machinery."""

    def __init__(self, c: Configuration):
        self.c = c
        self.nodes: list[Node] = [("P", p) for p in c.points] + [("L", l) for l in c.lines]
        self.index = {v: i for i, v in enumerate(self.nodes)}
        self.adj: list[list[int]] = [[] for _ in self.nodes]
        for l, pts in c.incident:
            li = self.index[("L", l)]
            for p in pts:
                pi = self.index[("P", p)]
                self.adj[li].append(pi)
                self.adj[pi].append(li)
        self.key = [(0 if k == "P" else 1, x) for k, x in self.nodes]


class _State:
    __slots__ = ("g", "placed", "count")

    def __init__(self, g: _Graph, placed=None, count=None):
        self.g = g
        self.placed = placed if placed is not None else [False] * len(g.nodes)
        self.count = count if count is not None else [0] * len(g.nodes)

    def copy(self) -> "_State":
        return _State(self.g, list(self.placed), list(self.count))

    def place(self, i: int) -> None:
        self.placed[i] = True
        for j in self.g.adj[i]:
            self.count[j] += 1

    def determined(self) -> list[int]:
        return [i for i, (p, n) in enumerate(zip(self.placed, self.count)) if not p and n >= 2]

    def free_candidates(self) -> list[int]:
        return [i for i, (p, n) in enumerate(zip(self.placed, self.count)) if not p and n == 1]

    def done(self) -> bool:
        return all(self.placed)

    def pivot(self, i: int) -> int:
        return next(j for j in self.g.adj[i] if self.placed[j])


def _lookahead_score(st: _State, i: int, depth: int = 2) -> int:
    s = st.copy()
    s.place(i)
    total = 0
    for _ in range(depth):
        det = s.determined()
        if not det:
            break
        total += len(det)
        for j in det:
            s.place(j)
    return total


def _order_candidates(st: _State, cands: list[int]) -> list[int]:
    g = st.g
    return sorted(cands, key=lambda i: (-_lookahead_score(st, i), g.key[i]))


def _preferred(st: _State, cands: list[int], last_kind: str) -> list[int]:
    want = "L" if last_kind == "P" else "P"
    same = [i for i in cands if st.g.nodes[i][0] == want]
    return same or cands


def _make_step(g: _Graph, idx: list[int], free=False, pivot=None, restart=False) -> Step:
    kinds = {g.nodes[i][0] for i in idx}
    if len(kinds) != 1:
        raise AssertionError("mixed step")  # cannot happen: see module docstring
    labels = tuple(sorted(g.nodes[i][1] for i in idx))
    return Step(kinds.pop(), labels, free, g.nodes[pivot] if pivot is not None else None, restart)


def _restart_choice(st: _State) -> int:
    g = st.g
    rest = [i for i, p in enumerate(st.placed) if not p]
    return min(rest, key=lambda i: g.key[i])


def _advance(st: _State, last_kind: str) -> Step | None:
    """Apply one determined step, if any, and return it."""
    det = st.determined()
    if not det:
        return None
    step = _make_step(st.g, det)
    for i in det:
        st.place(i)
    return step


def build_sequence(c: Configuration, base, policy: str = "lookahead") -> ConstructionSequence:
    """Construction sequence from ``base``; free steps follow ``policy``.

    ``policy`` is ``"lookahead"`` (maximise elements determined in the next
    two rounds, ties lexicographic) or ``"lex"``.
    """
    base = tuple(base)
    if not is_projective_base(c, base):
        raise NoProjectiveBase(f"{base} is not a projective base")
    g = _Graph(c)
    st = _State(g)
    for p in base:
        st.place(g.index[("P", p)])
    steps = [Step("P", tuple(base))]
    last = "P"
    while not st.done():
        step = _advance(st, last)
        if step is None:
            cands = st.free_candidates()
            if cands:
                cands = _preferred(st, cands, last)
                if policy == "lookahead":
                    choice = _order_candidates(st, cands)[0]
                else:
                    choice = min(cands, key=lambda i: g.key[i])
                step = _make_step(g, [choice], free=True, pivot=st.pivot(choice))
            else:
                choice = _restart_choice(st)
                step = _make_step(g, [choice], free=True, restart=True)
            st.place(choice)
        steps.append(step)
        last = step.kind
    return ConstructionSequence(base, tuple(steps))


def check_sequence(c: Configuration, seq: ConstructionSequence) -> list[str]:
    """Independent replay of the step rule; returns a list of problems (empty if valid)."""
    problems = []
    if not is_projective_base(c, seq.base):
        problems.append(f"X0 = {seq.base} is not a projective base")
    placed: set[Node] = set()

    def nbrs(v: Node):
        kind, x = v
        return [("L", l) for l in c.point_lines[x]] if kind == "P" else [("P", p) for p in c.line_points[x]]

    everything = [("P", p) for p in c.points] + [("L", l) for l in c.lines]
    for idx, step in enumerate(seq.steps):
        group = {(step.kind, e) for e in step.elements}
        for v in group:
            if v not in set(everything):
                problems.append(f"step {idx}: unknown element {v}")
        if idx == 0:
            if step.kind != "P" or set(step.elements) != set(seq.base):
                problems.append("step 0 must list the base points")
            placed |= group
            continue
        if group & placed:
            problems.append(f"step {idx}: element placed twice")
        det = {v for v in everything if v not in placed and sum(u in placed for u in nbrs(v)) >= 2}
        if step.free:
            if det:
                problems.append(f"step {idx}: free step while {sorted(det)} are determined")
            if len(group) != 1:
                problems.append(f"step {idx}: free step must be a single element")
            else:
                (v,) = group
                k = sum(u in placed for u in nbrs(v))
                if k != (0 if step.restart else 1):
                    problems.append(f"step {idx}: free element {v[1]} has {k} placed neighbours")
        else:
            if group != det:
                missing = sorted(x for _, x in det - group)
                extra = sorted(x for _, x in group - det)
                problems.append(f"step {idx}: determined group mismatch (missing {missing}, extra {extra})")
        placed |= group
    if placed != set(everything):
        problems.append(f"sequence leaves {sorted(x for _, x in set(everything) - placed)} unplaced")
    return problems


def parse_sequence(c: Configuration, text: str) -> ConstructionSequence:
    """Parse the dash-separated form, e.g. ``ABCD - dikpqr - E - [f] - LRS``."""
    groups = [g.strip() for g in text.split(" - ")]
    if not groups or not groups[0]:
        raise SequenceError("empty sequence")
    pset, lset = set(c.points), set(c.lines)
    steps = []
    expected = "P"
    placed: set[Node] = set()
    for gi, raw in enumerate(groups):
        free = raw.startswith("[") and raw.endswith("]")
        body = raw[1:-1] if free else raw
        labels = _split_group(body, pset | lset)
        in_p = all(x in pset for x in labels)
        in_l = all(x in lset for x in labels)
        if in_p and in_l:
            kind = expected
        elif in_p:
            kind = "P"
        elif in_l:
            kind = "L"
        else:
            raise SequenceError(f"group {raw!r} mixes or names unknown elements")
        pivot = None
        restart = False
        if free:
            if len(labels) != 1:
                raise SequenceError(f"free group {raw!r} must be a single element")
            x = labels[0]
            nb = c.point_lines[x] if kind == "P" else c.line_points[x]
            other = "L" if kind == "P" else "P"
            placed_nb = [y for y in nb if (other, y) in placed]
            if len(placed_nb) == 1:
                pivot = (other, placed_nb[0])
            elif not placed_nb:
                restart = True
        steps.append(Step(kind, tuple(labels), free, pivot, restart))
        placed |= {(kind, x) for x in labels}
        expected = "L" if kind == "P" else "P"
    if steps[0].kind != "P" or len(steps[0].elements) != 4:
        raise SequenceError("first group must be four base points")
    return ConstructionSequence(tuple(steps[0].elements), tuple(steps))


def _split_group(body: str, known: set[str]) -> list[str]:
    if "," in body or " " in body.strip():
        return [x for x in body.replace(",", " ").split() if x]
    if body in known and len(body) > 1 and not all(ch in known for ch in body):
        return [body]
    return list(body)


@dataclass
class Plan:
    base: tuple[str, ...]
    sequence: ConstructionSequence
    free_count: int
    exhausted: bool  # search budget ran out before optimality was proven
    nodes_explored: int

    def to_json(self) -> dict:
        d = self.sequence.to_json()
        d.update({"budget_exhausted": self.exhausted, "nodes_explored": self.nodes_explored})
        return d


def _complete(st: _State, steps: list[Step], last: str, budget: list[int], best: list,
              base: tuple, free_so_far: int) -> None:
    """Branch-and-bound over free-step choices."""
    g = st.g
    while True:
        if budget[0] <= 0:
            return
        budget[0] -= 1
        if st.done():
            if best[0] is None or free_so_far < best[0][0]:
                best[0] = (free_so_far, base, list(steps))
            return
        step = _advance(st, last)
        if step is None:
            break
        steps = steps + [step]
        last = step.kind
    if best[0] is not None and free_so_far + 1 >= best[0][0]:
        return
    cands = st.free_candidates()
    if not cands:
        choice = _restart_choice(st)
        s = st.copy()
        s.place(choice)
        _complete(s, steps + [_make_step(g, [choice], free=True, restart=True)], g.nodes[choice][0],
                  budget, best, base, free_so_far + 1)
        return
    for choice in _order_candidates(st, _preferred(st, cands, last)):
        s = st.copy()
        s.place(choice)
        step = _make_step(g, [choice], free=True, pivot=st.pivot(choice))
        _complete(s, steps + [step], step.kind, budget, best, base, free_so_far + 1)
        if best[0] is not None and best[0][0] <= free_so_far + 1:
            return


def plan_min_free(c: Configuration, budget: int = 200_000, bases=None) -> Plan:
    """Sequence with the fewest free steps over all bases (within ``budget`` steps).

    Bases are scanned in lexicographic order; the first base reaching the
    minimum wins, so the result is deterministic.
    """
    bases = list(bases) if bases is not None else find_projective_bases(c)
    if not bases:
        raise NoProjectiveBase("structure has no projective base")
    g = _Graph(c)
    # greedy pass for an upper bound
    best_seq = None
    for b in bases:
        seq = build_sequence(c, b)
        if best_seq is None or seq.free_count < best_seq.free_count:
            best_seq = seq
            if seq.free_count == 0:
                return Plan(b, seq, 0, False, 0)
    best = [(best_seq.free_count, best_seq.base, list(best_seq.steps))]
    left = [budget]
    for b in bases:
        st = _State(g)
        for p in b:
            st.place(g.index[("P", p)])
        before = best[0][0]
        _complete(st, [Step("P", tuple(b))], "P", left, best, tuple(b), 0)
        if left[0] <= 0:
            break
        if best[0][0] < before and best[0][0] == 0:
            break
    free, base, steps = best[0]
    seq = ConstructionSequence(base, tuple(steps))
    return Plan(base, seq, free, left[0] <= 0, budget - left[0])


def min_free_for_base(c: Configuration, base, budget: int = 50_000) -> Plan:
    return plan_min_free(c, budget=budget, bases=[tuple(base)])


def rank_bases(c: Configuration, limit: int | None = None) -> list[ConstructionSequence]:
    """Greedy sequences for every projective base, fewest free steps first.

    Ties keep the lexicographic order of the bases.
    """
    seqs = [build_sequence(c, b) for b in find_projective_bases(c)]
    seqs.sort(key=lambda s: s.free_count)  # stable
    return seqs[:limit] if limit is not None else seqs
