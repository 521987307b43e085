"""Shared test helpers: independent oracles and random geometry generators."""

from __future__ import annotations

import math
from fractions import Fraction

from quasifractal.geometry import Loop, Point2, Segment

F = Fraction


def pt(x, y) -> Point2:
    return Point2(F(x), F(y))


def square_loop(x, y, side) -> Loop:
    x, y, side = F(x), F(y), F(side)
    return Loop((pt(x, y), pt(x + side, y), pt(x + side, y + side), pt(x, y + side)))


def winding_oracle(loop: Loop, p: Point2) -> int:
    """Floating-point angle summation, independent of the crossing counter."""
    total = 0.0
    rel = [(float(v.x - p.x), float(v.y - p.y)) for v in loop.vertices]
    n = len(rel)
    for i in range(n):
        x1, y1 = rel[i]
        x2, y2 = rel[(i + 1) % n]
        total += math.atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2)
    turns = total / (2.0 * math.pi)
    nearest = round(turns)
    assert abs(turns - nearest) < 1e-6, f"angle sum {turns} is not near an integer"
    return int(nearest)


def union_length_oracle(segments) -> Fraction:
    """Brute-force union measure: per carrier, sweep elementary gaps.

    Groups axis-parallel segments by carrier, cuts the line at every
    endpoint, and adds up each elementary gap covered by at least one
    segment. Independent of the production interval-merge code.
    """
    carriers: dict = {}
    for seg in segments:
        a, b = seg.a.coords, seg.b.coords
        axis = next(i for i in range(len(a)) if a[i] != b[i])
        key = (axis,) + tuple(c for i, c in enumerate(a) if i != axis)
        lo, hi = min(a[axis], b[axis]), max(a[axis], b[axis])
        carriers.setdefault(key, []).append((lo, hi))
    total = F(0)
    for intervals in carriers.values():
        cuts = sorted({c for pair in intervals for c in pair})
        for left, right in zip(cuts, cuts[1:]):
            if any(lo <= left and right <= hi for lo, hi in intervals):
                total += right - left
    return total


def convex_loop(rng, span: int = 12, points: int = 8) -> Loop:
    """Random CCW convex polygon with integer vertices (monotone chain)."""
    while True:
        raw = {(rng.randint(-span, span), rng.randint(-span, span)) for _ in range(points)}
        hull = _hull(sorted(raw))
        if len(hull) >= 3:
            return Loop(tuple(pt(x, y) for x, y in hull))


def _hull(pts):
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    if len(pts) < 3:
        return []
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def random_point_off_loop(rng, loop: Loop, span: int = 30) -> Point2:
    from quasifractal.geometry import on_segment

    while True:
        p = pt(F(rng.randint(-4 * span, 4 * span), 4), F(rng.randint(-4 * span, 4 * span), 4))
        if not any(on_segment(p, a, b) for a, b in loop.edges()):
            return p


def segments_of_loop(loop: Loop):
    verts = loop.vertices
    n = len(verts)
    return [Segment(verts[i], verts[(i + 1) % n]) for i in range(n)]
