"""Levi-graph automorphisms, self-dualities and self-polarities."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import gcd

from .incidence import Configuration

PRESERVING = "preserving"
DUALITY = "duality"


@dataclass(frozen=True)
class Correspondence:
    """A Levi-graph bijection.

    ``preserving``: ``point_image`` maps points to points and ``line_image``
    lines to lines.  ``duality``: ``point_image`` maps points to lines and
    ``line_image`` lines to points.
    """

    kind: str
    point_image: tuple[tuple[str, str], ...]
    line_image: tuple[tuple[str, str], ...]

    @classmethod
    def make(cls, kind: str, point_image: dict, line_image: dict) -> "Correspondence":
        return cls(kind, tuple(sorted(point_image.items())), tuple(sorted(line_image.items())))

    @property
    def pmap(self) -> dict[str, str]:
        return dict(self.point_image)

    @property
    def lmap(self) -> dict[str, str]:
        return dict(self.line_image)

    def node_map(self) -> dict[tuple[str, str], tuple[str, str]]:
        pk, lk = ("P", "L") if self.kind == PRESERVING else ("L", "P")
        m = {("P", p): (pk, q) for p, q in self.point_image}
        m.update({("L", l): (lk, q) for l, q in self.line_image})
        return m

    @classmethod
    def from_node_map(cls, m: dict) -> "Correspondence":
        pi = {x: y for (k, x), (_, y) in m.items() if k == "P"}
        li = {x: y for (k, x), (_, y) in m.items() if k == "L"}
        some = next(k2 for (k, _), (k2, _) in m.items() if k == "P")
        return cls.make(PRESERVING if some == "P" else DUALITY, pi, li)

    def compose(self, other: "Correspondence") -> "Correspondence":
        """``self`` after ``other``."""
        a, b = self.node_map(), other.node_map()
        return Correspondence.from_node_map({v: a[b[v]] for v in b})

    def is_identity(self) -> bool:
        return self.kind == PRESERVING and all(x == y for x, y in self.point_image + self.line_image)

    def order(self) -> int:
        m = self.node_map()
        seen = set()
        result = 1
        for v in m:
            if v in seen:
                continue
            n, w = 0, v
            while True:
                seen.add(w)
                w = m[w]
                n += 1
                if w == v:
                    break
            result = result * n // gcd(result, n)
        return result

    def cycle_notation(self) -> str:
        m = self.node_map()
        seen = set()
        out = []
        for v in sorted(m, key=lambda x: (x[0] != "P", x[1])):
            if v in seen:
                continue
            cyc, w = [], v
            while w not in seen:
                seen.add(w)
                cyc.append(w[1])
                w = m[w]
            if self.kind == PRESERVING and v[0] == "L":
                continue
            out.append("(" + ",".join(cyc) + ")")
        return "".join(out)


@dataclass(frozen=True)
class AutGroup:
    elements: tuple[Correspondence, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def preserving(self) -> tuple[Correspondence, ...]:
        return tuple(e for e in self.elements if e.kind == PRESERVING)

    @property
    def dualities(self) -> tuple[Correspondence, ...]:
        return tuple(e for e in self.elements if e.kind == DUALITY)

    def element_order_multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(e.order() for e in self.elements).items()))

    def is_abelian(self) -> bool:
        els = self.elements
        return all(a.compose(b) == b.compose(a) for i, a in enumerate(els) for b in els[i + 1:])

    def to_json(self) -> dict:
        try:
            name = classify_group(self)
        except ValueError:
            name = None
        return {
            "order": self.order,
            "preserving_order": len(self.preserving),
            "self_dual": bool(self.dualities),
            "element_orders": {str(k): v for k, v in self.element_order_multiset().items()},
            "group": name,
        }


def _levi(c: Configuration):
    nodes = [("P", p) for p in c.points] + [("L", l) for l in c.lines]
    index = {v: i for i, v in enumerate(nodes)}
    adj = [set() for _ in nodes]
    for l, pts in c.incident:
        li = index[("L", l)]
        for p in pts:
            pi = index[("P", p)]
            adj[li].add(pi)
            adj[pi].add(li)
    return nodes, index, adj


def _search_order(n: int, adj) -> tuple[list[int], list[int | None]]:
    """Greedy order: next node has the most already-ordered neighbours."""
    order: list[int] = []
    parent: list[int | None] = [None] * n
    placed = [False] * n
    links = [0] * n
    for _ in range(n):
        best = max((i for i in range(n) if not placed[i]), key=lambda i: (links[i], -i))
        if links[best]:
            parent[best] = min(u for u in adj[best] if placed[u])
        placed[best] = True
        order.append(best)
        for w in adj[best]:
            links[w] += 1
    return order, parent


def _distance_profile(adj, s: int) -> tuple:
    dist = {s: 0}
    queue = [s]
    for u in queue:
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return tuple(sorted(Counter(dist.values()).items()))


def levi_automorphisms(c: Configuration, kinds=(PRESERVING, DUALITY)) -> list[Correspondence]:
    """All Levi-graph automorphisms of the requested kinds, canonically sorted."""
    nodes, index, adj = _levi(c)
    n = len(nodes)
    order, parent = _search_order(n, adj)
    deg = [len(a) for a in adj]
    profile = [_distance_profile(adj, i) for i in range(n)]
    is_point = [v[0] == "P" for v in nodes]
    results = []
    for kind in kinds:
        if kind == DUALITY and (len(c.points) != len(c.lines)):
            continue
        img = [-1] * n
        used = [False] * n

        def compatible(v: int, w: int) -> bool:
            if used[w] or deg[v] != deg[w] or profile[v] != profile[w]:
                return False
            if (is_point[v] == is_point[w]) != (kind == PRESERVING):
                return False
            k = 0
            for u in adj[v]:
                if img[u] >= 0:
                    if img[u] not in adj[w]:
                        return False
                    k += 1
            # image neighbours must all come from neighbours of v
            k2 = sum(1 for x in adj[w] if used[x])
            return k == k2

        def rec(pos: int) -> None:
            if pos == n:
                m = {nodes[i]: nodes[img[i]] for i in range(n)}
                results.append(Correspondence.from_node_map(m) if n else None)
                return
            v = order[pos]
            par = parent[v]
            if par is None:
                cands = range(n)
            else:
                cands = set(adj[img[par]])
                for u in adj[v]:
                    if img[u] >= 0:
                        cands &= adj[img[u]]
                cands = sorted(cands)
            for w in cands:
                if compatible(v, w):
                    img[v] = w
                    used[w] = True
                    rec(pos + 1)
                    used[w] = False
                    img[v] = -1

        rec(0)
    results = [r for r in results if r is not None]
    return sorted(set(results), key=_canon_key)


def _canon_key(e: Correspondence):
    return (e.kind != PRESERVING, not e.is_identity(), e.point_image, e.line_image)


def automorphism_group(c: Configuration) -> AutGroup:
    return AutGroup(tuple(levi_automorphisms(c)))


# group identification by order and element-order profile

_PROFILES: dict[tuple, list[str]] = {}


def _reg(name: str, profile: dict[int, int], abelian: bool | None = None) -> None:
    key = (sum(profile.values()), tuple(sorted(profile.items())), abelian)
    _PROFILES.setdefault(key, []).append(name)


for _n in (1, 2, 3, 5, 7, 11, 13):
    _reg("1" if _n == 1 else f"Z{_n}", {1: 1} if _n == 1 else {1: 1, _n: _n - 1})
_reg("Z4", {1: 1, 2: 1, 4: 2})
_reg("Z2^2", {1: 1, 2: 3})
_reg("Z6", {1: 1, 2: 1, 3: 2, 6: 2})
_reg("S3", {1: 1, 2: 3, 3: 2})
_reg("Z8", {1: 1, 2: 1, 4: 2, 8: 4})
_reg("Z4xZ2", {1: 1, 2: 3, 4: 4})
_reg("Z2^3", {1: 1, 2: 7})
_reg("D8", {1: 1, 2: 5, 4: 2})
_reg("Q8", {1: 1, 2: 1, 4: 6})
_reg("Z9", {1: 1, 3: 2, 9: 6})
_reg("Z3^2", {1: 1, 3: 8})
_reg("Z10", {1: 1, 2: 1, 5: 4, 10: 4})
_reg("D10", {1: 1, 2: 5, 5: 4})
_reg("Z12", {1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 12: 4})
_reg("Z6xZ2", {1: 1, 2: 3, 3: 2, 6: 6})
_reg("A4", {1: 1, 2: 3, 3: 8})
_reg("D12", {1: 1, 2: 7, 3: 2, 6: 2})
_reg("Dic12", {1: 1, 2: 1, 3: 2, 4: 6, 6: 2})
_reg("Z14", {1: 1, 2: 1, 7: 6, 14: 6})
_reg("D14", {1: 1, 2: 7, 7: 6})
_reg("Z15", {1: 1, 3: 2, 5: 4, 15: 8})
# order 16: profiles separate only together with commutativity, and not always
_reg("Z16", {1: 1, 2: 1, 4: 2, 8: 4, 16: 8}, True)
_reg("Z8xZ2", {1: 1, 2: 3, 4: 4, 8: 8}, True)
_reg("M16", {1: 1, 2: 3, 4: 4, 8: 8}, False)
_reg("Z4^2", {1: 1, 2: 3, 4: 12}, True)
_reg("Q8xZ2", {1: 1, 2: 3, 4: 12}, False)
_reg("Z4:Z4", {1: 1, 2: 3, 4: 12}, False)
_reg("Z4xZ2^2", {1: 1, 2: 7, 4: 8}, True)
_reg("Pauli", {1: 1, 2: 7, 4: 8}, False)
_reg("Z2^2:Z4", {1: 1, 2: 7, 4: 8}, False)
_reg("Z2^4", {1: 1, 2: 15}, True)
_reg("D8xZ2", {1: 1, 2: 11, 4: 4}, False)
_reg("D16", {1: 1, 2: 9, 4: 2, 8: 4}, False)
_reg("SD16", {1: 1, 2: 5, 4: 6, 8: 4}, False)
_reg("Q16", {1: 1, 2: 1, 4: 10, 8: 4}, False)


def classify_profile(profile: dict[int, int], abelian: bool | None = None) -> str:
    """Group name from its element-order multiset (commutativity needed for order 16)."""
    order = sum(profile.values())
    if order > 16:
        raise ValueError(f"classification supports order <= 16, got {order}")
    key_items = tuple(sorted(profile.items()))
    names = _PROFILES.get((order, key_items, None))
    if names is None:
        names = _PROFILES.get((order, key_items, abelian), [])
        if abelian is None:
            names = _PROFILES.get((order, key_items, True), []) + _PROFILES.get((order, key_items, False), [])
    if not names:
        raise ValueError(f"no group of order {order} has element orders {dict(key_items)}")
    return "|".join(names)


def classify_group(g: AutGroup) -> str:
    if g.order > 16:
        raise ValueError(f"classification supports order <= 16, got {g.order}")
    abelian = g.is_abelian() if g.order == 16 else None
    return classify_profile(g.element_order_multiset(), abelian)


# permutations in cycle notation

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> dict[str, str]:
    """``(A)(B,C)(D,E)`` -> ``{"A": "A", "B": "C", "C": "B", ...}``."""
    perm: dict[str, str] = {}
    rest = _CYCLE.sub("", text).strip()
    if rest:
        raise ValueError(f"unexpected text {rest!r} in cycle notation")
    for m in _CYCLE.finditer(text):
        items = [x.strip() for x in m.group(1).split(",") if x.strip()]
        for i, x in enumerate(items):
            if x in perm:
                raise ValueError(f"{x} occurs twice")
            perm[x] = items[(i + 1) % len(items)]
    return perm


def parse_pairs(text: str) -> list[tuple[str, str]]:
    """``(A,a)(B,b)`` -> ``[("A", "a"), ("B", "b")]``."""
    out = []
    for m in _CYCLE.finditer(text):
        items = [x.strip() for x in m.group(1).split(",")]
        if len(items) != 2:
            raise ValueError(f"expected a pair, got ({m.group(1)})")
        out.append((items[0], items[1]))
    return out


def induced_automorphism(c: Configuration, point_perm: dict[str, str]) -> Correspondence | None:
    """Extend a point permutation to lines; ``None`` if incidence is not preserved."""
    perm = {p: point_perm.get(p, p) for p in c.points}
    if sorted(perm.values()) != sorted(c.points):
        raise ValueError("not a permutation of the points")
    by_set = {frozenset(pts): l for l, pts in c.incident}
    limg = {}
    for l, pts in c.incident:
        target = by_set.get(frozenset(perm[p] for p in pts))
        if target is None:
            return None
        limg[l] = target
    if len(set(limg.values())) != len(limg):
        return None
    return Correspondence.make(PRESERVING, perm, limg)


def duality_from_pairs(c: Configuration, pairs) -> Correspondence:
    """Involutory duality exchanging each point with its paired line."""
    pmap, lmap = {}, {}
    for p, l in pairs:
        if p not in c.point_lines or l not in c.line_points:
            raise ValueError(f"label mismatch in pair ({p},{l})")
        pmap[p] = l
        lmap[l] = p
    if set(pmap) != set(c.points) or set(lmap) != set(c.lines):
        raise ValueError("pairs must cover every point and line exactly once")
    return Correspondence.make(DUALITY, pmap, lmap)


def letter_pairs(c: Configuration) -> list[tuple[str, str]]:
    """The pairing (A,a)(B,b)... of upper-case points with lower-case lines."""
    return [(p, p.lower()) for p in sorted(c.points)]


def is_automorphism(c: Configuration, s: Correspondence) -> bool:
    pm, lm = s.pmap, s.lmap
    if s.kind == PRESERVING:
        if sorted(pm) != sorted(c.points) or sorted(pm.values()) != sorted(c.points):
            raise ValueError("label mismatch")
        if sorted(lm) != sorted(c.lines) or sorted(lm.values()) != sorted(c.lines):
            raise ValueError("label mismatch")
        return all(c.is_incident(pm[p], lm[l]) == c.is_incident(p, l) for p in c.points for l in c.lines)
    return is_self_duality(c, s)


def is_self_duality(c: Configuration, s: Correspondence) -> bool:
    if s.kind != DUALITY:
        raise ValueError("expected a duality")
    pm, lm = s.pmap, s.lmap
    if sorted(pm) != sorted(c.points) or sorted(pm.values()) != sorted(c.lines):
        raise ValueError("label mismatch: point images must be the lines")
    if sorted(lm) != sorted(c.lines) or sorted(lm.values()) != sorted(c.points):
        raise ValueError("label mismatch: line images must be the points")
    return all(c.is_incident(lm[l], pm[p]) == c.is_incident(p, l) for p in c.points for l in c.lines)


# cyclic orders


@dataclass(frozen=True)
class TopologicalData:
    """Cyclic order of points along each line and of lines around each point."""

    along_line: tuple[tuple[str, tuple[str, ...]], ...]
    around_point: tuple[tuple[str, tuple[str, ...]], ...]

    @classmethod
    def from_configuration(cls, c: Configuration) -> "TopologicalData":
        lines = tuple((lab, seq) for (kind, lab), seq in c.cyclic if kind == "line")
        points = tuple((lab, seq) for (kind, lab), seq in c.cyclic if kind == "point")
        return cls(tuple(sorted(lines)), tuple(sorted(points)))

    def check(self, c: Configuration) -> None:
        for l, seq in self.along_line:
            if l not in c.line_points or sorted(seq) != sorted(c.line_points[l]):
                raise ValueError(f"cyclic order of line {l} is not a permutation of its points")
        for p, seq in self.around_point:
            if p not in c.point_lines or sorted(seq) != sorted(c.point_lines[p]):
                raise ValueError(f"cyclic order around point {p} is not a permutation of its lines")
        if len(self.along_line) != len(c.lines) or len(self.around_point) != len(c.points):
            raise ValueError("cyclic data must cover every line and every point")


def same_cycle(a, b, allow_reversal: bool) -> bool:
    a, b = list(a), list(b)
    if len(a) != len(b) or sorted(a) != sorted(b):
        return False
    if not a:
        return True
    variants = [b, b[::-1]] if allow_reversal else [b]
    for v in variants:
        i = v.index(a[0])
        if v[i:] + v[:i] == a:
            return True
    return False


def polarity_check(c: Configuration, t: TopologicalData, s: Correspondence) -> dict[str, bool]:
    """Self-polarity test in both conventions: ``strict`` (rotations only) and ``tolerant``."""
    if not is_self_duality(c, s):
        raise ValueError("not a self-duality")
    t.check(c)
    pm, lm = s.pmap, s.lmap
    around = dict(t.around_point)
    along = dict(t.along_line)
    out = {}
    for name, rev in (("strict", False), ("tolerant", True)):
        ok = True
        for l, seq in t.along_line:
            if not same_cycle([pm[p] for p in seq], around[lm[l]], rev):
                ok = False
                break
        if ok:
            for p, seq in t.around_point:
                if not same_cycle([lm[l] for l in seq], along[pm[p]], rev):
                    ok = False
                    break
        out[name] = ok
    return out


def is_self_polarity(c: Configuration, t: TopologicalData, s: Correspondence, allow_reversal: bool = True) -> bool:
    return polarity_check(c, t, s)["tolerant" if allow_reversal else "strict"]
