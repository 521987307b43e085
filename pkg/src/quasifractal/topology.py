"""Winding numbers and per-hole index vectors for closed rational loops.

A loop in the plane minus a set of marked points induces a circle-valued
map around each point; its degree is the exact winding number computed
here by signed crossing counting. The index vector of a loop against a
hole set (one interior representative per bounded complement piece)
collects those winding numbers in a fixed order. At a fixed construction
stage, equality of index vectors is equality of all the circle-map
indices the stage exposes; for planar open complements that coincides
with homotopy equivalence of the induced circle maps. How the
finite-stage vectors relate to the full first-cohomology data of the
limit set is a separate question that this module does not attempt.

Orientation reversal negates every index entry, which is the loop-level
shadow of the operator-level fact verified in `toeplitz`: conjugating
the orientation of the circle flips the sign of the Fredholm index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IndeterminateWindingError, ParameterError
from .geometry import INSIDE, Loop, Point2, cross2, on_segment, point_in_polygon

IndexVector = tuple[int, ...]


def centroid(loop: Loop) -> Point2:
    """Vertex average: the exact centroid for triangles and parallelograms."""
    n = len(loop.vertices)
    sx = sum((v.x for v in loop.vertices), Fraction(0))
    sy = sum((v.y for v in loop.vertices), Fraction(0))
    return Point2(sx / n, sy / n)


@dataclass(frozen=True)
class HoleSet:
    """Ordered interior representatives of bounded complement pieces."""

    representatives: tuple[Point2, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.representatives) != len(self.labels):
            raise ParameterError("one label per representative required")

    def __len__(self) -> int:
        return len(self.representatives)

    @classmethod
    def from_pieces(cls, pieces: Iterable) -> "HoleSet":
        """Build hole representatives from removed pieces (default: centroids).

        Each piece must expose a CCW `boundary` loop and a `label`; the
        centroid is verified to lie strictly inside the piece.
        """
        reps: list[Point2] = []
        labels: list[str] = []
        for piece in pieces:
            rep = centroid(piece.boundary)
            if point_in_polygon(piece.boundary, rep) != INSIDE:
                raise ParameterError(f"centroid of piece {piece.label} is not interior")
            reps.append(rep)
            labels.append(piece.label)
        return cls(tuple(reps), tuple(labels))


def winding_number(loop: Loop, p: Point2) -> int:
    """Exact winding number of the loop about p.

    Signed crossings of the horizontal ray from p toward +x, with the
    half-open vertex rule (an edge is counted only while it strictly
    straddles the ray line), so vertices on the ray need no perturbation.
    Raises IndeterminateWindingError if p lies on the loop.
    """
    for a, b in loop.edges():
        if on_segment(p, a, b):
            raise IndeterminateWindingError(f"point {p} lies on the loop")
    winding = 0
    for a, b in loop.edges():
        if a.y <= p.y:
            if b.y > p.y and cross2(a, b, p) > 0:
                winding += 1
        elif b.y <= p.y and cross2(a, b, p) < 0:
            winding -= 1
    return winding


def index_vector(loop: Loop, holes: HoleSet) -> IndexVector:
    """Winding number of the loop about every hole representative, in order."""
    return tuple(winding_number(loop, rep) for rep in holes.representatives)


def reverse_orientation(loop: Loop) -> Loop:
    """The same loop traversed backwards; negates signed area and all indices."""
    return Loop(tuple(reversed(loop.vertices)))


def same_index_class(l1: Loop, l2: Loop, holes: HoleSet) -> bool:
    """True iff the loops have identical index vectors over the hole set.

    This is equality of all circle-map indices at the given finite stage.
    """
    return index_vector(l1, holes) == index_vector(l2, holes)


def face_index(face) -> int:
    """Loop index of a planar 3D face about its own interior point.

    The face is projected to 2D along the axis most aligned with its
    normal and wound about its projected centroid; outward-oriented
    convex faces give +1 or -1 depending on viewing side.
    """
    loop2, drop = _project(face.boundary)
    return winding_number(loop2, _project_point(_centroid3(face.boundary), drop))


def _centroid3(points: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    n = len(points)
    return tuple(sum((p.coords[i] for p in points), Fraction(0)) / n for i in range(3))


def _normal_axis(points: Sequence) -> int:
    ax = ay = az = Fraction(0)
    n = len(points)
    for i in range(n):
        p, q = points[i].coords, points[(i + 1) % n].coords
        ax += p[1] * q[2] - p[2] * q[1]
        ay += p[2] * q[0] - p[0] * q[2]
        az += p[0] * q[1] - p[1] * q[0]
    comps = (abs(ax), abs(ay), abs(az))
    return max(range(3), key=lambda i: comps[i])


def _project_point(coords: tuple, drop: int) -> Point2:
    kept = [coords[i] for i in range(3) if i != drop]
    return Point2(kept[0], kept[1])


def _project(points: Sequence) -> tuple[Loop, int]:
    drop = _normal_axis(points)
    return Loop(tuple(_project_point(p.coords, drop) for p in points)), drop
