"""Affine pictures of rational witnesses: cyclic orders and SVG output."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cmp_to_key

from ..incidence import Configuration
from ..symmetry import TopologicalData

Point2 = tuple[Fraction, Fraction]


def _vectors(coords: dict[str, list[str]], kind: str) -> dict[str, tuple[Fraction, ...]]:
    out = {}
    for key, v in coords.items():
        k, label = key.split(":", 1)
        if k == kind:
            try:
                out[label] = tuple(Fraction(x) for x in v)
            except ValueError:
                raise ValueError("drawing needs a witness with rational coordinates") from None
    return out


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def affine_chart(coords: dict[str, list[str]]) -> dict[str, Point2]:
    """Affine coordinates of the points after a projective change of chart.

    The line at infinity is the first small integer vector missing every
    point, so no point of the witness is sent to infinity.
    """
    pts = _vectors(coords, "P")
    for m in itertools.product(range(-3, 4), repeat=3):
        if any(m) and all(_dot(m, p) != 0 for p in pts.values()):
            break
    else:
        raise ValueError("no chart avoids all points")
    # complete m to a basis with two unit vectors
    units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a, b in itertools.combinations(units, 2):
        det = (m[0] * (a[1] * b[2] - a[2] * b[1]) - m[1] * (a[0] * b[2] - a[2] * b[0])
               + m[2] * (a[0] * b[1] - a[1] * b[0]))
        if det:
            break
    return {k: (_dot(a, p) / _dot(m, p), _dot(b, p) / _dot(m, p)) for k, p in sorted(pts.items())}


def _half_plane(d: Point2) -> Point2:
    dx, dy = d
    return d if dy > 0 or (dy == 0 and dx > 0) else (-dx, -dy)


def _angle_cmp(u: Point2, v: Point2) -> int:
    cr = u[0] * v[1] - u[1] * v[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def cyclic_orders(c: Configuration, coords: dict[str, list[str]]) -> TopologicalData:
    """Cyclic orders of a rational witness, computed exactly.

    Points on a line are sorted along its affine direction; lines through a
    point are sorted by slope angle in ``[0, pi)``.  Both are cyclic orders
    of the projective picture up to rotation and reversal.
    """
    xy = affine_chart(coords)
    along = []
    for l, ps in sorted(c.line_points.items()):
        ps = list(ps)
        p0, p1 = xy[ps[0]], xy[ps[1]]
        d = (p1[0] - p0[0], p1[1] - p0[1])
        along.append((l, tuple(sorted(ps, key=lambda p: xy[p][0] * d[0] + xy[p][1] * d[1]))))
    around = []
    for p, ls in sorted(c.point_lines.items()):
        dirs = {}
        for l in ls:
            q = next(q for q in c.line_points[l] if q != p)
            dirs[l] = _half_plane((xy[q][0] - xy[p][0], xy[q][1] - xy[p][1]))
        order = sorted(ls, key=cmp_to_key(lambda a, b: _angle_cmp(dirs[a], dirs[b])))
        around.append((p, tuple(order)))
    return TopologicalData(tuple(along), tuple(around))


def render_svg(c: Configuration, coords: dict[str, list[str]], size: int = 600) -> str:
    """SVG picture of a rational witness: labelled points and lines clipped to a disk."""
    xy = {k: (float(x), float(y)) for k, (x, y) in affine_chart(coords).items()}
    cx = sum(x for x, _ in xy.values()) / len(xy)
    cy = sum(y for _, y in xy.values()) / len(xy)
    reach = max(math.hypot(x - cx, y - cy) for x, y in xy.values()) or 1.0
    radius = 1.25 * reach
    scale = 0.45 * size / radius

    def screen(x: float, y: float) -> tuple[float, float]:
        return size / 2 + (x - cx) * scale, size / 2 - (y - cy) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<circle cx="{size / 2:.2f}" cy="{size / 2:.2f}" r="{radius * scale:.2f}" '
           'fill="none" stroke="#ccc"/>']
    for l, ps in sorted(c.line_points.items()):
        (x0, y0), (x1, y1) = xy[ps[0]], xy[ps[1]]
        dx, dy = x1 - x0, y1 - y0
        norm = math.hypot(dx, dy)
        dx, dy = dx / norm, dy / norm
        # foot of the perpendicular from the centre, then half the chord
        t = (cx - x0) * dx + (cy - y0) * dy
        fx, fy = x0 + t * dx, y0 + t * dy
        half = math.sqrt(max(radius ** 2 - (fx - cx) ** 2 - (fy - cy) ** 2, 0.0))
        ax, ay = screen(fx - half * dx, fy - half * dy)
        bx, by = screen(fx + half * dx, fy + half * dy)
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                   f'stroke="#369" stroke-width="1"><title>{l}</title></line>')
    for p, (x, y) in sorted(xy.items()):
        sx, sy = screen(x, y)
        out.append(f'<circle cx="{sx:.2f}" cy="{sy:.2f}" r="4" fill="#c33"/>')
        out.append(f'<text x="{sx + 6:.2f}" y="{sy - 6:.2f}" font-size="12">{p}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
