"""Corner-cube wireframe and tetrahedral gasket constructions in 3-space.

Both variants build a connected 1-dimensional skeleton in R^3 and attach
the 2-dimensional cell faces of every stage as pieces.

cube_wireframe: each cube of side s is replaced by its 8 corner cubes of
side a*s (0 < a < 1/2); the skeleton accumulates the 12 edges of every
cell at every level, and the pieces are the 6 square faces of every cell
at every level.

tetra_gasket: each tetrahedron keeps its 4 corner half-scale copies
(fixed contraction 1/2, the higher-dimensional Sierpinski gasket); the
skeleton accumulates all cell edges and the pieces are the 4 triangular
faces of every cell. The base tetrahedron (0,0,0),(1,0,0),(0,1,0),(0,0,1)
has rational vertices so all coordinates stay exact.

Every piece's boundary edges lie in the skeleton of its birth level: the
face boundaries are loops in the wireframe, which is the defining
incidence property `boundary_incidence` verifies. Triangle areas involve
square roots, so faces store their exact squared area and take the root
only at reporting time.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import sqrt
from typing import Union

from .errors import CapacityError, ParameterError
from .geometry import Point3, Segment, SegmentIndex, midpoint, rational, segment_components

CUBE_WIREFRAME = "cube_wireframe"
TETRA_GASKET = "tetra_gasket"

CUBE_DEPTH_CAP = 4
TETRA_DEPTH_CAP = 6

_TETRA_BASE = (
    Point3(Fraction(0), Fraction(0), Fraction(0)),
    Point3(Fraction(1), Fraction(0), Fraction(0)),
    Point3(Fraction(0), Fraction(1), Fraction(0)),
    Point3(Fraction(0), Fraction(0), Fraction(1)),
)
# outward-oriented faces of a positively oriented tetrahedron
_TETRA_FACES = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


@dataclass(frozen=True)
class SpatialVariant:
    """Construction selector; `a` is required for cube_wireframe only."""

    kind: str
    a: Union[Fraction, None] = None

    def __post_init__(self):
        if self.kind == CUBE_WIREFRAME:
            if self.a is None:
                raise ParameterError("cube_wireframe requires a scale factor a")
            a = rational(self.a)
            if not 0 < a < Fraction(1, 2):
                raise ParameterError(f"cube scale factor must lie in (0, 1/2), got {a}")
            object.__setattr__(self, "a", a)
        elif self.kind == TETRA_GASKET:
            if self.a is not None:
                raise ParameterError("tetra_gasket has fixed contraction 1/2; do not pass a")
        else:
            raise ParameterError(
                f"unknown spatial variant {self.kind!r} "
                f"(expected {CUBE_WIREFRAME} or {TETRA_GASKET})"
            )


def _area_vector_sq(points: tuple[Point3, ...]) -> Fraction:
    """Squared area of a planar polygon via its exact area vector."""
    ax = ay = az = Fraction(0)
    n = len(points)
    for i in range(n):
        p, q = points[i].coords, points[(i + 1) % n].coords
        ax += p[1] * q[2] - p[2] * q[1]
        ay += p[2] * q[0] - p[0] * q[2]
        az += p[0] * q[1] - p[1] * q[0]
    return (ax * ax + ay * ay + az * az) / 4


@dataclass(frozen=True)
class Face3:
    """A planar square or triangle piece, outward-oriented at birth."""

    boundary: tuple[Point3, ...]
    birth_level: int
    area_sq: Fraction

    @classmethod
    def of(cls, boundary: tuple[Point3, ...], birth_level: int) -> "Face3":
        return cls(tuple(boundary), birth_level, _area_vector_sq(tuple(boundary)))

    @property
    def area(self) -> float:
        return sqrt(self.area_sq)

    def edges(self) -> tuple[tuple[Point3, Point3], ...]:
        b = self.boundary
        n = len(b)
        return tuple((b[i], b[(i + 1) % n]) for i in range(n))


@dataclass(frozen=True)
class CubeCell:
    address: str
    corner: Point3
    side: Fraction

    @property
    def level(self) -> int:
        return len(self.address)

    def vertices(self) -> tuple[Point3, ...]:
        """The 8 corners, indexed by bit pattern (bit 0 -> x, 1 -> y, 2 -> z)."""
        xs = (self.corner.x, self.corner.x + self.side)
        ys = (self.corner.y, self.corner.y + self.side)
        zs = (self.corner.z, self.corner.z + self.side)
        return tuple(
            Point3(xs[b & 1], ys[(b >> 1) & 1], zs[(b >> 2) & 1]) for b in range(8)
        )

    def edge_segments(self) -> tuple[Segment, ...]:
        verts = self.vertices()
        out = []
        for b in range(8):
            for bit in (1, 2, 4):
                if not b & bit:
                    out.append(Segment(verts[b], verts[b | bit]))
        return tuple(out)

    def faces(self) -> tuple[Face3, ...]:
        verts = self.vertices()
        out = []
        for axis in range(3):
            bit_axis, bit_u, bit_v = 1 << axis, 1 << ((axis + 1) % 3), 1 << ((axis + 2) % 3)
            for high in (0, 1):
                # counterclockwise seen from outside (outward normal)
                locals_uv = ((0, 0), (1, 0), (1, 1), (0, 1)) if high else ((0, 0), (0, 1), (1, 1), (1, 0))
                pts = tuple(
                    verts[high * bit_axis + lu * bit_u + lv * bit_v] for lu, lv in locals_uv
                )
                out.append(Face3.of(pts, self.level))
        return tuple(out)

    def children(self, a: Fraction) -> tuple["CubeCell", ...]:
        child_side = self.side * a
        shift = self.side - child_side
        xs = (self.corner.x, self.corner.x + shift)
        ys = (self.corner.y, self.corner.y + shift)
        zs = (self.corner.z, self.corner.z + shift)
        return tuple(
            CubeCell(
                self.address + str(letter),
                Point3(xs[letter & 1], ys[(letter >> 1) & 1], zs[(letter >> 2) & 1]),
                child_side,
            )
            for letter in range(8)
        )

    def contains(self, other: "CubeCell") -> bool:
        for i in range(3):
            if not (
                self.corner.coords[i] <= other.corner.coords[i]
                and other.corner.coords[i] + other.side <= self.corner.coords[i] + self.side
            ):
                return False
        return True


@dataclass(frozen=True)
class TetraCell:
    address: str
    vertices: tuple[Point3, Point3, Point3, Point3]

    @property
    def level(self) -> int:
        return len(self.address)

    def edge_segments(self) -> tuple[Segment, ...]:
        return tuple(
            Segment(self.vertices[i], self.vertices[j]) for i, j in combinations(range(4), 2)
        )

    def faces(self) -> tuple[Face3, ...]:
        return tuple(
            Face3.of(tuple(self.vertices[i] for i in face), self.level)
            for face in _TETRA_FACES
        )

    def children(self) -> tuple["TetraCell", ...]:
        out = []
        for i in range(4):
            vi = self.vertices[i]
            verts = tuple(
                vi if j == i else midpoint(vi, self.vertices[j]) for j in range(4)
            )
            out.append(TetraCell(self.address + str(i), verts))
        return tuple(out)


Cell3 = Union[CubeCell, TetraCell]


@dataclass
class Stage3:
    """Cells at `level`, plus skeleton edges and face pieces of levels 0..level."""

    variant: SpatialVariant
    level: int
    cells: list[Cell3]
    skeleton: set[Segment] = field(repr=False)
    pieces: list[Face3] = field(repr=False)


def _expand(cells: list[Cell3], a: Union[Fraction, None]):
    children: list[Cell3] = []
    segments: set[Segment] = set()
    faces: list[Face3] = []
    for cell in cells:
        kids = cell.children(a) if isinstance(cell, CubeCell) else cell.children()
        for child in kids:
            children.append(child)
            segments.update(child.edge_segments())
            faces.extend(child.faces())
    return children, segments, faces


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def build_spatial(
    variant: SpatialVariant,
    depth: int,
    depth_cap: Union[int, None] = None,
    workers: int = 1,
) -> Stage3:
    """Subdivide to the given depth with canonical (address-sorted) ordering."""
    if depth_cap is None:
        depth_cap = CUBE_DEPTH_CAP if variant.kind == CUBE_WIREFRAME else TETRA_DEPTH_CAP
    if not isinstance(depth, int) or depth < 0:
        raise ParameterError(f"depth must be a nonnegative integer, got {depth}")
    if depth > depth_cap:
        raise CapacityError(f"depth {depth} exceeds cap {depth_cap} for {variant.kind}")
    if variant.kind == CUBE_WIREFRAME:
        root: Cell3 = CubeCell("", Point3(Fraction(0), Fraction(0), Fraction(0)), Fraction(1))
    else:
        root = TetraCell("", _TETRA_BASE)
    cells: list[Cell3] = [root]
    skeleton: set[Segment] = set(root.edge_segments())
    pieces: list[Face3] = list(root.faces())
    for _ in range(depth):
        if workers > 1 and len(cells) > 64:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(
                    pool.map(lambda chunk: _expand(chunk, variant.a), _chunks(cells, workers * 4))
                )
        else:
            parts = [_expand(cells, variant.a)]
        cells = []
        for part_cells, part_segments, part_faces in parts:
            cells.extend(part_cells)
            skeleton |= part_segments
            pieces.extend(part_faces)
        cells.sort(key=lambda c: c.address)
    return Stage3(
        variant=variant,
        level=depth,
        cells=cells,
        skeleton=skeleton,
        pieces=pieces,
    )


@dataclass(frozen=True)
class SeriesMeasures:
    """Per-stage totals of skeleton edge length and face area.

    For cube_wireframe the sums are exact rationals: stage k contributes
    8^k cells with 12 edges of length a^k and 6 faces of area a^(2k), so
    the edge series converges iff 8a < 1 and the face series iff
    8 a^2 < 1 (boundary cases diverge), with limits 12/(1-8a) and
    6/(1-8a^2).

    For tetra_gasket the contraction is locked at 1/2: per-cell edge
    length involves sqrt(2) and the diagonal face sqrt(3), so the sums
    are reported as floats, and both series are infinite by construction
    (the edge series grows like 2^k per stage, the face series adds a
    constant per stage).
    """

    edge_length_sum: Union[Fraction, float]
    face_area_sum: Union[Fraction, float]
    edge_limit: Union[Fraction, None]
    area_limit: Union[Fraction, None]
    edge_finite: bool
    area_finite: bool


def series_measures(variant: SpatialVariant, n: int) -> SeriesMeasures:
    if not isinstance(n, int) or n < 0:
        raise ParameterError(f"stage count must be a nonnegative integer, got {n}")
    if variant.kind == CUBE_WIREFRAME:
        a = variant.a
        edge_ratio = 8 * a
        area_ratio = 8 * a * a
        edge_sum = 12 * sum(edge_ratio**k for k in range(n + 1))
        area_sum = 6 * sum(area_ratio**k for k in range(n + 1))
        edge_finite = edge_ratio < 1
        area_finite = area_ratio < 1
        return SeriesMeasures(
            edge_length_sum=edge_sum,
            face_area_sum=area_sum,
            edge_limit=12 / (1 - edge_ratio) if edge_finite else None,
            area_limit=6 / (1 - area_ratio) if area_finite else None,
            edge_finite=edge_finite,
            area_finite=area_finite,
        )
    # tetra: 4^k cells, edge total (3 + 3 sqrt 2)/2^k each, face total
    # (3/2 + sqrt(3)/2)/4^k each
    edge_base = 3.0 + 3.0 * sqrt(2.0)
    area_base = 1.5 + sqrt(3.0) / 2.0
    edge_sum = edge_base * sum(2.0**k for k in range(n + 1))
    area_sum = area_base * (n + 1)
    return SeriesMeasures(
        edge_length_sum=edge_sum,
        face_area_sum=area_sum,
        edge_limit=None,
        area_limit=None,
        edge_finite=False,
        area_finite=False,
    )


def boundary_incidence(stage: Stage3) -> int:
    """Count face boundary edges not covered by the skeleton (expected: 0).

    Each edge must lie inside the union of collinear skeleton segments;
    the test is exact, so a face displaced off the edge lattice is caught.
    """
    index = SegmentIndex(stage.skeleton)
    violations = 0
    for face in stage.pieces:
        for p, q in face.edges():
            if not index.covers(p, q):
                violations += 1
    return violations


def connectivity3(stage: Stage3) -> int:
    """Connected components of the skeleton union (expected: 1)."""
    return segment_components(stage.skeleton)
