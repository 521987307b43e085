"""Sierpinski carpet and gasket subdivision with removed-piece bookkeeping.

Both constructions keep track of two populations per stage: the cells still
in the fractal approximation, and the open pieces removed so far (the
bounded complement components of the limit set). Kept cells and removed
pieces together partition the starting cell exactly, which is what makes
the completed object an ordinary 2-dimensional square or triangle; the
fractal approximation itself is the topological boundary of the removed
interiors plus the unbounded outside.

The gasket uses the base triangle (0,0), (1,0), (1/2,1): the statements
being tracked are affine-invariant, and rational vertices keep every
computation exact (an equilateral base would force irrational heights).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import CapacityError, ParameterError
from .geometry import Loop, Point2, Segment, midpoint, signed_area

CARPET = "carpet"
GASKET = "gasket"

CARPET_DEPTH_CAP = 7
GASKET_DEPTH_CAP = 12


@dataclass(frozen=True)
class SquareCell:
    """An axis-aligned kept square of the carpet."""

    corner: Point2
    side: Fraction

    @property
    def area(self) -> Fraction:
        return self.side * self.side

    def boundary_loop(self) -> Loop:
        x, y, s = self.corner.x, self.corner.y, self.side
        return Loop((Point2(x, y), Point2(x + s, y), Point2(x + s, y + s), Point2(x, y + s)))

    def boundary_segments(self) -> tuple[Segment, ...]:
        v = self.boundary_loop().vertices
        return tuple(Segment(v[i], v[(i + 1) % 4]) for i in range(4))


@dataclass(frozen=True)
class TriangleCell:
    """A kept triangle of the gasket, vertices in counterclockwise order."""

    v0: Point2
    v1: Point2
    v2: Point2

    @property
    def area(self) -> Fraction:
        return signed_area(self.boundary_loop())

    def boundary_loop(self) -> Loop:
        return Loop((self.v0, self.v1, self.v2))

    def boundary_segments(self) -> tuple[Segment, ...]:
        return (
            Segment(self.v0, self.v1),
            Segment(self.v1, self.v2),
            Segment(self.v2, self.v0),
        )


PlanarCell = Union[SquareCell, TriangleCell]


@dataclass(frozen=True)
class Piece:
    """A removed complement component: CCW boundary loop plus birth level."""

    boundary: Loop
    birth_level: int
    label: str

    @property
    def area(self) -> Fraction:
        return signed_area(self.boundary)


@dataclass
class PieceSet:
    """Stage snapshot: kept cells at `level`, removed pieces of levels <= level."""

    kind: str
    level: int
    kept: list[PlanarCell]
    removed: list[Piece]


def _carpet_children(cell: SquareCell):
    third = cell.side / 3
    x0, y0 = cell.corner.x, cell.corner.y
    xs = (x0, x0 + third, x0 + third + third)
    ys = (y0, y0 + third, y0 + third + third)
    kept: list[SquareCell] = []
    for iy in range(3):
        for ix in range(3):
            if ix == 1 and iy == 1:
                continue
            kept.append(SquareCell(Point2(xs[ix], ys[iy]), third))
    center = Loop(
        (
            Point2(xs[1], ys[1]),
            Point2(xs[2], ys[1]),
            Point2(xs[2], ys[2]),
            Point2(xs[1], ys[2]),
        )
    )
    return kept, [center]


def _gasket_children(cell: TriangleCell):
    m01 = midpoint(cell.v0, cell.v1)
    m12 = midpoint(cell.v1, cell.v2)
    m20 = midpoint(cell.v2, cell.v0)
    kept = [
        TriangleCell(cell.v0, m01, m20),
        TriangleCell(m01, cell.v1, m12),
        TriangleCell(m20, m12, cell.v2),
    ]
    removed = [Loop((m01, m12, m20))]
    return kept, removed


def _expand(cells: list[PlanarCell], kind: str):
    subdivide = _carpet_children if kind == CARPET else _gasket_children
    kept: list[PlanarCell] = []
    removed: list[Loop] = []
    for cell in cells:
        k, r = subdivide(cell)
        kept.extend(k)
        removed.extend(r)
    return kept, removed


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def base_cell(kind: str) -> PlanarCell:
    if kind == CARPET:
        return SquareCell(Point2(Fraction(0), Fraction(0)), Fraction(1))
    if kind == GASKET:
        return TriangleCell(
            Point2(Fraction(0), Fraction(0)),
            Point2(Fraction(1), Fraction(0)),
            Point2(Fraction(1, 2), Fraction(1)),
        )
    raise ParameterError(f"unknown planar variant {kind!r} (expected carpet or gasket)")


def build_planar(
    kind: str,
    depth: int,
    depth_cap: Union[int, None] = None,
    workers: int = 1,
) -> PieceSet:
    """Deterministic subdivision to the given depth.

    Carpet: each square splits 3x3 and the center square is removed.
    Gasket: each triangle splits at edge midpoints and the middle triangle
    is removed. Removed pieces keep their birth level and CCW boundary.
    """
    base = base_cell(kind)
    if depth_cap is None:
        depth_cap = CARPET_DEPTH_CAP if kind == CARPET else GASKET_DEPTH_CAP
    if not isinstance(depth, int) or depth < 0:
        raise ParameterError(f"depth must be a nonnegative integer, got {depth}")
    if depth > depth_cap:
        raise CapacityError(f"depth {depth} exceeds cap {depth_cap} for {kind}")
    kept: list[PlanarCell] = [base]
    removed: list[Piece] = []
    for level in range(1, depth + 1):
        if workers > 1 and len(kept) > 64:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(
                    pool.map(lambda chunk: _expand(chunk, kind), _chunks(kept, workers * 4))
                )
        else:
            parts = [_expand(kept, kind)]
        kept = []
        new_loops: list[Loop] = []
        for part_kept, part_removed in parts:
            kept.extend(part_kept)
            new_loops.extend(part_removed)
        removed.extend(
            Piece(loop, level, f"{level}:{i}") for i, loop in enumerate(new_loops)
        )
    return PieceSet(kind=kind, level=depth, kept=kept, removed=removed)


@dataclass(frozen=True)
class AreaAccount:
    kept_area: Fraction
    removed_area: Fraction


def area_accounting(ps: PieceSet) -> AreaAccount:
    """Exact area split: kept + removed equals the level-0 cell area.

    Carpet kept area is (8/9)^level; gasket kept area is (3/4)^level * 1/2.
    """
    kept_area = sum((cell.area for cell in ps.kept), Fraction(0))
    removed_area = sum((piece.area for piece in ps.removed), Fraction(0))
    return AreaAccount(kept_area=kept_area, removed_area=removed_area)


def boundary_of_rest(ps: PieceSet) -> set[Segment]:
    """Boundary segments of the removed pieces plus the outer boundary.

    At stage n this is the stage-n approximation of the fractal as the
    topological boundary of the open complement (removed interiors plus
    the unbounded outside).
    """
    segments: set[Segment] = set(base_cell(ps.kind).boundary_segments())
    for piece in ps.removed:
        verts = piece.boundary.vertices
        n = len(verts)
        segments.update(Segment(verts[i], verts[(i + 1) % n]) for i in range(n))
    return segments


def similarity_dimension(kind: str) -> float:
    """Standard self-similarity dimension: log 8/log 3 (carpet), log 3/log 2 (gasket)."""
    if kind == CARPET:
        return math.log(8.0) / math.log(3.0)
    if kind == GASKET:
        return math.log(3.0) / math.log(2.0)
    raise ParameterError(f"unknown planar variant {kind!r} (expected carpet or gasket)")
