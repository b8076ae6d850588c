"""Induced embeddings of a pattern structure into a host configuration.

The search replays a construction sequence of the pattern: once the four
points of a projective base have images, every element incident to two
placed elements has a forced image (a join or meet in the host), and only
elements with a single placed neighbour cause branching.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .construction import find_projective_bases
from .corpus import load_fixture
from .incidence import Configuration

Node = tuple[str, str]

PATTERN_NAMES = ("pappus", "non_pappus", "desargues", "non_desargues")


@dataclass(frozen=True, order=True)
class Embedding:
    """Injective maps pattern points -> host points and pattern lines -> host lines."""

    points: tuple[tuple[str, str], ...]
    lines: tuple[tuple[str, str], ...]

    @property
    def point_map(self) -> dict[str, str]:
        return dict(self.points)

    @property
    def line_map(self) -> dict[str, str]:
        return dict(self.lines)

    def __str__(self) -> str:
        return ", ".join(f"{a}->{b}" for a, b in self.points + self.lines)

    def to_json(self) -> dict:
        return {"points": dict(self.points), "lines": dict(self.lines)}


def pattern(name: str) -> Configuration:
    """One of the bundled patterns: pappus, non_pappus, desargues, non_desargues."""
    if name not in PATTERN_NAMES:
        raise KeyError(f"unknown pattern {name!r}; choose from {', '.join(PATTERN_NAMES)}")
    return load_fixture(name)


class _Side:
    """Adjacency of one structure, indexed by node, with a role-swap view."""

    def __init__(self, c: Configuration):
        self.c = c
        self.adj: dict[Node, frozenset[Node]] = {}
        for p, ls in c.point_lines.items():
            self.adj[("P", p)] = frozenset(("L", l) for l in ls)
        for l, ps in c.line_points.items():
            self.adj[("L", l)] = frozenset(("P", p) for p in ps)
        self.nodes = {"P": [("P", p) for p in c.points], "L": [("L", l) for l in c.lines]}

    def common(self, a: Node, b: Node) -> Node | None:
        """Join of two points or meet of two lines, if present."""
        both = self.adj[a] & self.adj[b]
        return next(iter(both)) if len(both) == 1 else None


def _other(kind: str) -> str:
    return "L" if kind == "P" else "P"


class _Search:
    def __init__(self, pat: Configuration, host: Configuration, limit: int | None):
        self.pat = _Side(pat)
        self.host = _Side(host)
        self.pins = [(("P", p), ("L", l)) for p, l in pat.nonincidences]
        self.limit = limit
        self.found: set[Embedding] = set()

    def full(self) -> bool:
        return self.limit is not None and len(self.found) >= self.limit

    # consistency

    def accept(self, phi: dict[Node, Node], x: Node) -> bool:
        """Check ``q in x <=> phi(q) in phi(x)`` for every placed ``q`` of the other kind."""
        hx = phi[x]
        hadj = self.host.adj[hx]
        padj = self.pat.adj[x]
        for q, hq in phi.items():
            if q[0] == x[0]:
                continue
            if (q in padj) != (hq in hadj):
                return False
        return True

    def assign(self, phi, used, x: Node, hx: Node) -> bool:
        if hx in used:
            return False
        if len(self.host.adj[hx]) < len(self.pat.adj[x]):
            return False
        phi[x] = hx
        used.add(hx)
        if self.accept(phi, x):
            return True
        del phi[x]
        used.discard(hx)
        return False

    # replay

    def construct(self, phi, used, kind: str) -> bool | None:
        """Place every element of ``kind`` with two placed neighbours.

        Returns ``None`` on rejection, otherwise whether anything was placed.
        Elements are visited in pattern order and each sees earlier placements.
        """
        placed_any = False
        for x in self.pat.nodes[kind]:
            if x in phi:
                continue
            nb = [q for q in self.pat.adj[x] if q in phi]
            if len(nb) < 2:
                continue
            nb.sort()
            hx = self.host.common(phi[nb[0]], phi[nb[1]])
            if hx is None or not self.assign(phi, used, x, hx):
                return None
            placed_any = True
        return placed_any

    def grow(self, phi: dict[Node, Node], used: set[Node], kind: str) -> None:
        if self.full():
            return
        stalled = 0
        while stalled < 2:
            res = self.construct(phi, used, kind)
            if res is None:
                return
            stalled = 0 if res else stalled + 1
            kind = _other(kind)  # role swap
        if len(phi) == len(self.pat.adj):
            self.record(phi)
            return
        x, pivot = self.free_choice(phi, kind)
        if pivot is not None:
            cands = sorted(h for h in self.host.adj[phi[pivot]] if h not in used)
        else:
            cands = [h for h in self.host.nodes[x[0]] if h not in used]
        for hx in cands:
            child, cused = dict(phi), set(used)
            if self.assign(child, cused, x, hx):
                self.grow(child, cused, _other(x[0]))
            if self.full():
                return

    def free_choice(self, phi, kind: str) -> tuple[Node, Node | None]:
        """Unplaced element with one placed neighbour, preferring ``kind``."""
        for k in (kind, _other(kind)):
            for x in self.pat.nodes[k]:
                if x not in phi:
                    nb = [q for q in self.pat.adj[x] if q in phi]
                    if len(nb) == 1:
                        return x, nb[0]
        # disconnected pattern: start a new component anywhere
        x = next(x for k in ("P", "L") for x in self.pat.nodes[k] if x not in phi)
        return x, None

    def record(self, phi) -> None:
        for p, l in self.pins:
            if phi[l] in self.host.adj[phi[p]]:
                return
        pts = tuple(sorted((x[1], h[1]) for x, h in phi.items() if x[0] == "P"))
        lns = tuple(sorted((x[1], h[1]) for x, h in phi.items() if x[0] == "L"))
        self.found.add(Embedding(pts, lns))

    # drivers

    def run_with_base(self, base: tuple[str, ...], host_bases) -> None:
        pnodes = [("P", p) for p in base]
        for hb in host_bases:
            for perm in itertools.permutations(hb):
                phi: dict[Node, Node] = {}
                used: set[Node] = set()
                ok = all(self.assign(phi, used, x, ("P", h)) for x, h in zip(pnodes, perm))
                if ok:
                    self.grow(phi, used, "L")
                if self.full():
                    return

    def run_plain(self) -> None:
        """Backtracking in breadth-first order, for patterns without a base."""
        order: list[Node] = []
        seen: set[Node] = set()
        for start in self.pat.nodes["P"] + self.pat.nodes["L"]:
            if start in seen:
                continue
            queue = [start]
            seen.add(start)
            while queue:
                x = queue.pop(0)
                order.append(x)
                for y in sorted(self.pat.adj[x]):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        self._plain(order, 0, {}, set())

    def _plain(self, order, i, phi, used) -> None:
        if self.full():
            return
        if i == len(order):
            self.record(phi)
            return
        x = order[i]
        anchor = next((q for q in self.pat.adj[x] if q in phi), None)
        cands = self.host.adj[phi[anchor]] if anchor else self.host.nodes[x[0]]
        for hx in sorted(cands):
            if self.assign(phi, used, x, hx):
                self._plain(order, i + 1, phi, used)
                del phi[x]
                used.discard(hx)


def enumerate_embeddings(pat: Configuration, host: Configuration, limit: int | None = None) -> list[Embedding]:
    """All induced embeddings of ``pat`` into ``host``, sorted.

    An embedding maps points to points and lines to lines injectively with
    ``q on l <=> phi(q) on phi(l)`` for all pattern pairs; pinned
    non-incidences of the pattern must be non-incidences in the host.
    ``limit`` stops the search early.
    """
    s = _Search(pat, host, limit)
    bases = find_projective_bases(pat)
    if bases:
        s.run_with_base(bases[0], find_projective_bases(host))
    else:
        s.run_plain()
    return sorted(s.found)


def is_embedding(pat: Configuration, host: Configuration, e: Embedding) -> bool:
    """Independent post-hoc check of an embedding over all pattern pairs."""
    pm, lm = e.point_map, e.line_map
    if set(pm) != set(pat.points) or set(lm) != set(pat.lines):
        return False
    if len(set(pm.values())) != len(pm) or len(set(lm.values())) != len(lm):
        return False
    for p in pat.points:
        for l in pat.lines:
            if pat.is_incident(p, l) != host.is_incident(pm[p], lm[l]):
                return False
    return all(not host.is_incident(pm[p], lm[l]) for p, l in pat.nonincidences)


def theorem_compatible(host: Configuration) -> dict:
    """Pappus and Desargues compatibility: no non-Pappus / non-Desargues embedding."""
    out = {}
    for theorem in ("pappus", "desargues"):
        hits = enumerate_embeddings(pattern("non_" + theorem), host, limit=1)
        out[theorem] = not hits
        out[theorem + "_violation"] = hits[0].to_json() if hits else None
    return out
