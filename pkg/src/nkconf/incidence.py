"""Abstract point-line incidence structures, their text format, and Levi graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path


class FormatError(ValueError):
    """Raised for malformed incidence-table documents."""


@dataclass(frozen=True)
class Configuration:
    """Labeled points and lines with, per line, the ordered list of its points.

    ``k`` is set when the document claims to be an (n_k) configuration.
    ``nonincidences`` pins (point, line) pairs that a pattern requires to be
    non-incident; ``cyclic`` carries optional cyclic-order data keyed by
    ``("line", label)`` or ``("point", label)``.
    """

    points: tuple[str, ...]
    lines: tuple[str, ...]
    incident: tuple[tuple[str, tuple[str, ...]], ...]
    k: int | None = None
    n: int | None = None
    nonincidences: tuple[tuple[str, str], ...] = ()
    cyclic: tuple[tuple[tuple[str, str], tuple[str, ...]], ...] = ()
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def from_lines(cls, rows: dict[str, list[str]] | list[tuple[str, list[str]]], points=None,
                   k: int | None = None, name: str = "", nonincidences=(), cyclic=()) -> "Configuration":
        items = list(rows.items()) if isinstance(rows, dict) else list(rows)
        if points is None:
            seen: dict[str, None] = {}
            for _, pts in items:
                for p in pts:
                    seen.setdefault(p)
            points = list(seen)
        lines = [l for l, _ in items]
        _check_unique(points, "point")
        _check_unique(lines, "line")
        pset = set(points)
        for l, pts in items:
            if len(set(pts)) != len(pts):
                raise FormatError(f"point listed twice on line {l}")
            for p in pts:
                if p not in pset:
                    raise FormatError(f"line {l} lists unknown point {p}")
        n = len(points) if k is not None else None
        return cls(tuple(points), tuple(lines), tuple((l, tuple(p)) for l, p in items), k=k, n=n,
                   nonincidences=tuple(nonincidences), cyclic=tuple(cyclic), name=name)

    # views

    @property
    def line_points(self) -> dict[str, tuple[str, ...]]:
        if "lp" not in self._cache:
            self._cache["lp"] = dict(self.incident)
        return self._cache["lp"]

    @property
    def point_lines(self) -> dict[str, tuple[str, ...]]:
        if "pl" not in self._cache:
            out: dict[str, list[str]] = {p: [] for p in self.points}
            for l, pts in self.incident:
                for p in pts:
                    out[p].append(l)
            self._cache["pl"] = {p: tuple(ls) for p, ls in out.items()}
        return self._cache["pl"]

    @property
    def flags(self) -> frozenset[tuple[str, str]]:
        if "flags" not in self._cache:
            self._cache["flags"] = frozenset((p, l) for l, pts in self.incident for p in pts)
        return self._cache["flags"]

    def is_incident(self, point: str, line: str) -> bool:
        return (point, line) in self.flags

    def join(self, p: str, q: str) -> str | None:
        """The line through two points, if any."""
        common = set(self.point_lines[p]) & set(self.point_lines[q])
        return next(iter(common)) if len(common) == 1 else (min(common) if common else None)

    def meet(self, l: str, m: str) -> str | None:
        common = set(self.line_points[l]) & set(self.line_points[m])
        return next(iter(common)) if len(common) == 1 else (min(common) if common else None)

    def relabel(self, point_map: dict[str, str], line_map: dict[str, str]) -> "Configuration":
        rows = [(line_map[l], [point_map[p] for p in pts]) for l, pts in self.incident]
        return Configuration.from_lines(
            rows, points=[point_map[p] for p in self.points], k=self.k, name=self.name,
            nonincidences=[(point_map[p], line_map[l]) for p, l in self.nonincidences])

    def canonical(self) -> "Configuration":
        """Points and lines sorted by label; in-line order kept."""
        rows = sorted(self.incident)
        return Configuration.from_lines(rows, points=sorted(self.points), k=self.k, name=self.name,
                                        nonincidences=sorted(self.nonincidences), cyclic=sorted(self.cyclic))

    def connected_components(self) -> list[tuple[set[str], set[str]]]:
        seen_p: set[str] = set()
        seen_l: set[str] = set()
        comps = []
        for start in self.points:
            if start in seen_p:
                continue
            ps, ls = {start}, set()
            stack = [("P", start)]
            while stack:
                kind, x = stack.pop()
                nbrs = self.point_lines[x] if kind == "P" else self.line_points[x]
                for y in nbrs:
                    bucket = ls if kind == "P" else ps
                    if y not in bucket:
                        bucket.add(y)
                        stack.append(("L" if kind == "P" else "P", y))
            seen_p |= ps
            seen_l |= ls
            comps.append((ps, ls))
        for l in self.lines:
            if l not in seen_l:
                comps.append((set(), {l}))
        return comps

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "points": list(self.points),
            "lines": {l: list(p) for l, p in self.incident},
            "nonincidences": [list(x) for x in self.nonincidences],
        }


def _check_unique(labels, what: str) -> None:
    seen = set()
    for x in labels:
        if x in seen:
            raise FormatError(f"duplicate {what} label {x!r}")
        seen.add(x)


# text format


def parse_configuration(text: str, name: str = "") -> Configuration:
    """Parse an incidence-table document.

    First non-comment line is ``config <n> <k>`` or ``structure``; then one
    ``<line>: <points...>`` row per line, optional ``points: ...``,
    ``nonincidence: <point> <line>`` and ``cyclic line|point <label>: ...`` rows.
    """
    header = None
    rows: list[tuple[str, list[str]]] = []
    points_decl: list[str] | None = None
    nonincidences = []
    cyclic = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if parts[0] == "config" and len(parts) == 3:
                try:
                    header = ("config", int(parts[1]), int(parts[2]))
                except ValueError:
                    raise FormatError(f"line {lineno}: malformed header {line!r}") from None
                if header[1] < 1 or header[2] < 1:
                    raise FormatError(f"line {lineno}: malformed header {line!r}")
            elif parts == ["structure"]:
                header = ("structure",)
            else:
                raise FormatError(f"line {lineno}: malformed header {line!r}")
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected '<label>: ...' row, got {line!r}")
        head_parts = head.split()
        body = tail.split()
        if head_parts == ["nonincidence"]:
            if len(body) != 2:
                raise FormatError(f"line {lineno}: nonincidence needs <point> <line>")
            nonincidences.append((body[0], body[1]))
        elif head_parts == ["points"]:
            points_decl = body
        elif len(head_parts) == 3 and head_parts[0] == "cyclic" and head_parts[1] in ("line", "point"):
            cyclic.append(((head_parts[1], head_parts[2]), tuple(body)))
        elif len(head_parts) == 1:
            rows.append((head_parts[0], body))
        else:
            raise FormatError(f"line {lineno}: cannot parse {line!r}")
    if header is None:
        raise FormatError("missing header")
    k = header[2] if header[0] == "config" else None
    c = Configuration.from_lines(rows, points=points_decl, k=k, name=name,
                                 nonincidences=nonincidences, cyclic=cyclic)
    if header[0] == "config":
        c = Configuration(c.points, c.lines, c.incident, k=k, n=header[1], nonincidences=c.nonincidences,
                          cyclic=c.cyclic, name=name)
    for p, l in c.nonincidences:
        if p not in c.point_lines or l not in c.line_points:
            raise FormatError(f"nonincidence names unknown element {p} {l}")
        if c.is_incident(p, l):
            raise FormatError(f"nonincidence {p} {l} contradicts an incidence")
    for (kind, label), seq in c.cyclic:
        known = c.line_points if kind == "line" else c.point_lines
        if label not in known:
            raise FormatError(f"cyclic data for unknown {kind} {label}")
    return c


def load_configuration(path: str | Path) -> Configuration:
    path = Path(path)
    return parse_configuration(path.read_text(), name=path.stem)


def serialize(c: Configuration, comments: list[str] | None = None) -> str:
    """Canonical text form: sorted labels, in-line order preserved."""
    c = c.canonical()
    out = [f"# {x}" for x in comments or []]
    out.append(f"config {c.n} {c.k}" if c.k is not None else "structure")
    listed = {p for _, pts in c.incident for p in pts}
    if c.k is None or listed != set(c.points):
        out.append("points: " + " ".join(c.points))
    for l, pts in c.incident:
        out.append(f"{l}: " + " ".join(pts))
    for p, l in c.nonincidences:
        out.append(f"nonincidence: {p} {l}")
    for (kind, label), seq in c.cyclic:
        out.append(f"cyclic {kind} {label}: " + " ".join(seq))
    return "\n".join(out) + "\n"


# validation


@dataclass
class ValidationReport:
    n: int
    k: int
    violations: list[dict] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "certified": self.certified, "violations": self.violations}


def digons(c: Configuration) -> list[tuple[str, str, str, str]]:
    """Pairs of points sharing two or more lines, as ``(p, q, l, m)``."""
    out = []
    for l, m in combinations(c.lines, 2):
        common = sorted(set(c.line_points[l]) & set(c.line_points[m]))
        for p, q in combinations(common, 2):
            out.append((p, q, l, m))
    return sorted(out)


def validate(c: Configuration, n: int, k: int) -> ValidationReport:
    """List every violated (n_k) axiom; an empty list certifies ``c``."""
    rep = ValidationReport(n, k)
    v = rep.violations
    if len(c.points) != n:
        v.append({"kind": "point-count", "expected": n, "found": len(c.points)})
    if len(c.lines) != n:
        v.append({"kind": "line-count", "expected": n, "found": len(c.lines)})
    for l, pts in sorted(c.incident):
        if len(pts) != k:
            v.append({"kind": "line-degree", "line": l, "expected": k, "found": len(pts)})
    for p, ls in sorted(c.point_lines.items()):
        if len(ls) != k:
            v.append({"kind": "point-degree", "point": p, "expected": k, "found": len(ls)})
    for p, q, l, m in digons(c):
        v.append({"kind": "digon", "points": [p, q], "lines": [l, m]})
    return rep


def is_nk(c: Configuration) -> bool:
    if c.k is None or c.n is None:
        return False
    return validate(c, c.n, c.k).certified


def dual(c: Configuration) -> Configuration:
    """Swap the roles of points and lines (incidence transposed)."""
    rows = [(p, list(c.point_lines[p])) for p in c.points]
    cyc = [(("point" if kind == "line" else "line", label), seq) for (kind, label), seq in c.cyclic]
    d = Configuration.from_lines(rows, points=list(c.lines), k=c.k, name=c.name + "*" if c.name else "",
                                 nonincidences=[(l, p) for p, l in c.nonincidences], cyclic=cyc)
    if c.n is not None:
        d = Configuration(d.points, d.lines, d.incident, k=c.k, n=c.n, nonincidences=d.nonincidences,
                          cyclic=d.cyclic, name=d.name)
    return d


def same_structure(a: Configuration, b: Configuration) -> bool:
    """Equal label sets and identical incidence (order of listing ignored)."""
    return set(a.points) == set(b.points) and set(a.lines) == set(b.lines) and a.flags == b.flags


# Levi graph


@dataclass(frozen=True)
class LeviGraph:
    points: tuple[str, ...]
    lines: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # (point, line)

    @property
    def nodes(self) -> list[tuple[str, str]]:
        return [("P", p) for p in self.points] + [("L", l) for l in self.lines]

    def adjacency(self) -> dict[tuple[str, str], set[tuple[str, str]]]:
        adj = {v: set() for v in self.nodes}
        for p, l in self.edges:
            adj[("P", p)].add(("L", l))
            adj[("L", l)].add(("P", p))
        return adj

    def girth(self) -> float:
        """Length of a shortest cycle by BFS from every node (inf if acyclic)."""
        adj = self.adjacency()
        best = float("inf")
        for s in adj:
            dist = {s: 0}
            parent = {s: None}
            queue = [s]
            for u in queue:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        best = min(best, dist[u] + dist[w] + 1)
        return best

    def to_json(self) -> dict:
        return {
            "nodes": [f"{k}:{x}" for k, x in self.nodes],
            "edges": [[p, l] for p, l in self.edges],
        }


def levi_graph(c: Configuration) -> LeviGraph:
    edges = tuple(sorted((p, l) for l, pts in c.incident for p in pts))
    return LeviGraph(tuple(c.points), tuple(c.lines), edges)


def export_json(c: Configuration) -> str:
    doc = {"configuration": c.to_json(), "levi_graph": levi_graph(c).to_json()}
    return json.dumps(doc, sort_keys=True, indent=2)
