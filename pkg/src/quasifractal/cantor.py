"""Corner-squares Cantor construction with retained stage boundaries.

Starting from the unit square, every stage replaces each square of side s
with its four corner squares of side a*s, where 0 < a <= 1/2. The square
boundaries from every stage are kept, so a stage carries both the 4^n
level-n cells and the accumulated segment skeleton; the whole object
(cells shrinking toward the Cantor dust, plus the countable family of
kept boundary segments) is compact and connected.

For a < 1/2 the limit of the cells is a Cantor set of Hausdorff dimension
log 4 / (-log a); at a = 1/2 the cells tile the unit square and the limit
is the square itself. The per-stage perimeter total forms a geometric
series with ratio 4a, so the summed boundary length over all stages is
finite exactly when a < 1/4. Note the per-stage perimeter sum counts
every stage's full perimeters with multiplicity; because child edges
partially overlap parent edges, the 1D measure computed by
`geometry.union_length` is strictly smaller from level 1 on.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import CapacityError, ParameterError
from .geometry import Point2, Segment, rational, segment_components

DEPTH_CAP = 10

# child letters 0..3 = SW, SE, NE, NW; unit offsets of the corner squares
_CORNER_OFFSETS = ((0, 0), (1, 0), (1, 1), (0, 1))


def _validate_scale(a: Fraction, allow_half: bool) -> Fraction:
    a = rational(a)
    top = Fraction(1, 2)
    if a <= 0 or a > top or (a == top and not allow_half):
        bound = "1/2]" if allow_half else "1/2)"
        raise ParameterError(f"scale factor must lie in (0, {bound}, got {a}")
    return a


@dataclass(frozen=True)
class Params2:
    """Scale factor and target depth for the planar construction.

    a = 1/2 is accepted as the explicit limiting case in which the corner
    squares tile their parent.
    """

    a: Fraction
    depth: int

    def __post_init__(self):
        object.__setattr__(self, "a", _validate_scale(self.a, allow_half=True))
        if not isinstance(self.depth, int) or self.depth < 0:
            raise ParameterError(f"depth must be a nonnegative integer, got {self.depth}")


@dataclass(frozen=True)
class Cell:
    """A subdivision square, addressed by its word over {0,1,2,3}.

    Letter k of the address selects the corner (SW, SE, NE, NW) taken at
    subdivision step k, so the SW corner coordinates are sums of terms
    (1-a) * a^k and the side is a^len(address).
    """

    address: str
    corner: Point2
    side: Fraction

    @property
    def level(self) -> int:
        return len(self.address)

    def vertices(self) -> tuple[Point2, Point2, Point2, Point2]:
        x, y, s = self.corner.x, self.corner.y, self.side
        return (
            Point2(x, y),
            Point2(x + s, y),
            Point2(x + s, y + s),
            Point2(x, y + s),
        )

    def boundary_segments(self) -> tuple[Segment, ...]:
        v = self.vertices()
        return tuple(Segment(v[i], v[(i + 1) % 4]) for i in range(4))

    def children(self, a: Fraction) -> tuple["Cell", ...]:
        child_side = self.side * a
        shift = self.side - child_side
        xs = (self.corner.x, self.corner.x + shift)
        ys = (self.corner.y, self.corner.y + shift)
        return tuple(
            Cell(self.address + str(letter), Point2(xs[ex], ys[ey]), child_side)
            for letter, (ex, ey) in enumerate(_CORNER_OFFSETS)
        )

    def contains(self, other: "Cell") -> bool:
        """Exact containment of another cell's closed square in this one."""
        return (
            self.corner.x <= other.corner.x
            and self.corner.y <= other.corner.y
            and other.corner.x + other.side <= self.corner.x + self.side
            and other.corner.y + other.side <= self.corner.y + self.side
        )


@dataclass
class Stage2:
    """Complete population at one level: cells plus all retained boundaries.

    `segments` holds the canonical boundary segments of every cell of
    levels 0..level, including the unit-square boundary; `cells` is in
    lexicographic address order.
    """

    params: Params2
    level: int
    cells: list[Cell]
    segments: set[Segment] = field(repr=False)


def level0(a: Union[Fraction, str, int]) -> Stage2:
    a = _validate_scale(a, allow_half=True)
    root = Cell("", Point2(Fraction(0), Fraction(0)), Fraction(1))
    return Stage2(
        params=Params2(a, 0),
        level=0,
        cells=[root],
        segments=set(root.boundary_segments()),
    )


def _expand(cells: list[Cell], a: Fraction):
    children: list[Cell] = []
    segments: set[Segment] = set()
    for cell in cells:
        for child in cell.children(a):
            children.append(child)
            segments.update(child.boundary_segments())
    return children, segments


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def refine(stage: Stage2, depth_cap: int = DEPTH_CAP, workers: int = 1) -> Stage2:
    """One subdivision step: each cell is replaced by its 4 corner children.

    The children's boundaries are appended to the retained segment set
    (deduplicated in canonical form) and the input stage is left unchanged.
    With workers > 1 the expansion runs chunked across a thread pool; the
    output is re-sorted by address, so results are identical either way.
    """
    if stage.level >= depth_cap:
        raise CapacityError(f"depth cap {depth_cap} reached at level {stage.level}")
    a = stage.params.a
    if workers > 1 and len(stage.cells) > 64:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda chunk: _expand(chunk, a), _chunks(stage.cells, workers * 4)))
    else:
        parts = [_expand(stage.cells, a)]
    cells: list[Cell] = []
    segments = set(stage.segments)
    for chunk_cells, chunk_segments in parts:
        cells.extend(chunk_cells)
        segments |= chunk_segments
    cells.sort(key=lambda c: c.address)
    return Stage2(
        params=Params2(a, stage.level + 1),
        level=stage.level + 1,
        cells=cells,
        segments=segments,
    )


def build(params: Params2, depth_cap: int = DEPTH_CAP, workers: int = 1) -> Stage2:
    """Iterate `refine` from the unit square down to params.depth."""
    if params.depth > depth_cap:
        raise CapacityError(
            f"depth {params.depth} exceeds cap {depth_cap} (4^n cells grow fast)"
        )
    stage = level0(params.a)
    for _ in range(params.depth):
        stage = refine(stage, depth_cap=depth_cap, workers=workers)
    return stage


def hausdorff_dimension(a: Union[Fraction, str, int]) -> float:
    """Dimension log 4 / (-log a) of the limit set, as a float.

    This is the one deliberately floating-point output of the planar
    construction; everything else stays rational.
    """
    a = _validate_scale(a, allow_half=True)
    return math.log(4.0) / (-math.log(float(a)))


@dataclass(frozen=True)
class PerimeterSeries:
    """Partial sum and limit of the per-stage perimeter totals.

    Stage k contributes 4^k squares of perimeter 4 a^k, i.e. 4 (4a)^k, so
    the series is geometric with ratio 4a: it converges iff a < 1/4 (the
    boundary case a = 1/4 diverges), with limit 4 / (1 - 4a).
    """

    partial_sum: Fraction
    limit: Union[Fraction, None]
    finite: bool


def perimeter_series(a: Union[Fraction, str, int], n: int) -> PerimeterSeries:
    """Exact partial sum through stage n of the perimeter series.

    a = 1/2 is rejected here: the tiling case reproduces the square and is
    not treated as a boundary-length series.
    """
    a = _validate_scale(a, allow_half=False)
    if not isinstance(n, int) or n < 0:
        raise ParameterError(f"stage count must be a nonnegative integer, got {n}")
    ratio = 4 * a
    partial = 4 * sum(ratio**k for k in range(n + 1))
    finite = a < Fraction(1, 4)
    limit = 4 / (1 - ratio) if finite else None
    return PerimeterSeries(partial_sum=partial, limit=limit, finite=finite)


def singular_cover(stage: Stage2) -> list[Cell]:
    """The level-n cells: an exact cover of the limit Cantor set.

    At stage n the 4^n squares of side a^n cover the limit set; they are
    the stage-n approximation of the singular part of the construction
    (the retained segments being the smooth rest).
    """
    return list(stage.cells)


def connectivity(stage: Stage2) -> int:
    """Connected components of the retained segment union (expected: 1)."""
    return segment_components(stage.segments)
