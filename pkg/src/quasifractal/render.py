"""SVG and Wavefront OBJ emitters.

Rendered formats are for viewers, so coordinates are written as decimals
with 12 significant digits (exactness lives in the JSON documents, not
here). The SVG uses a small SVG 1.1 subset: path, rect, polyline, text.
The y axis is flipped at emission time so the output reads the usual
math way (y up) while staying plain SVG.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .cantor import Stage2
from .errors import UnsupportedGeometryError
from .geometry import Loop, Point2
from .planar import CARPET, PieceSet, base_cell
from .spatial import Stage3
from .topology import HoleSet, index_vector

# birth-level color ramp for removed pieces
_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
)
_KEPT_FILL = "#e8e8e8"
_STROKE = "#222222"


def fmt(value) -> str:
    """Decimal with 12 significant digits."""
    return f"{float(value):.12g}"


def _level_color(level: int) -> str:
    return _PALETTE[(level - 1) % len(_PALETTE)]


class _Canvas:
    """Collects drawing elements, then emits SVG with a flipped y axis."""

    def __init__(self):
        self.elements: list[str] = []
        self._xs: list[Fraction] = []
        self._ys: list[Fraction] = []
        self._pending: list = []

    def _see(self, p: Point2):
        self._xs.append(p.x)
        self._ys.append(p.y)

    def rect(self, corner: Point2, side: Fraction, fill: str, stroke: str | None = None):
        self._see(corner)
        self._see(Point2(corner.x + side, corner.y + side))
        self._pending.append(("rect", corner, side, fill, stroke))

    def polygon(self, vertices, fill: str):
        for v in vertices:
            self._see(v)
        self._pending.append(("polygon", tuple(vertices), fill))

    def polyline(self, points, stroke: str, width_frac: float = 0.004):
        for p in points:
            self._see(p)
        self._pending.append(("polyline", tuple(points), stroke, width_frac))

    def text(self, at: Point2, content: str, size_frac: float = 0.05):
        self._see(at)
        self._pending.append(("text", at, content, size_frac))

    def emit(self) -> str:
        if self._xs:
            xmin, xmax = min(self._xs), max(self._xs)
            ymin, ymax = min(self._ys), max(self._ys)
        else:
            xmin = ymin = Fraction(0)
            xmax = ymax = Fraction(1)
        span = max(xmax - xmin, ymax - ymin, Fraction(1, 1000))
        margin = span * Fraction(5, 100)
        flip = ymin + ymax

        def fy(y):
            return flip - y

        width = xmax - xmin + 2 * margin
        height = ymax - ymin + 2 * margin
        view = f"{fmt(xmin - margin)} {fmt(ymin - margin)} {fmt(width)} {fmt(height)}"
        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{view}" '
            f'width="640" height="640">',
        ]
        scale = float(span)
        for item in self._pending:
            kind = item[0]
            if kind == "rect":
                _, corner, side, fill, stroke = item
                y_top = fy(corner.y + side)
                attrs = f'fill="{fill}"'
                if stroke:
                    attrs += f' stroke="{stroke}" stroke-width="{fmt(0.002 * scale)}"'
                out.append(
                    f'<rect x="{fmt(corner.x)}" y="{fmt(y_top)}" '
                    f'width="{fmt(side)}" height="{fmt(side)}" {attrs}/>'
                )
            elif kind == "polygon":
                _, vertices, fill = item
                d = " ".join(
                    f"{'M' if i == 0 else 'L'} {fmt(v.x)} {fmt(fy(v.y))}"
                    for i, v in enumerate(vertices)
                )
                out.append(f'<path d="{d} Z" fill="{fill}"/>')
            elif kind == "polyline":
                _, points, stroke, width_frac = item
                pts = " ".join(f"{fmt(p.x)},{fmt(fy(p.y))}" for p in points)
                out.append(
                    f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
                    f'stroke-width="{fmt(width_frac * scale)}" stroke-linecap="square"/>'
                )
            elif kind == "text":
                _, at, content, size_frac = item
                out.append(
                    f'<text x="{fmt(at.x)}" y="{fmt(fy(at.y))}" '
                    f'font-size="{fmt(size_frac * scale)}" font-family="sans-serif" '
                    f'text-anchor="middle">{content}</text>'
                )
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _draw_stage2(canvas: _Canvas, stage: Stage2) -> None:
    for cell in stage.cells:
        canvas.rect(cell.corner, cell.side, fill=_KEPT_FILL)
    for segment in sorted(stage.segments, key=lambda s: s.sort_key):
        canvas.polyline((segment.a, segment.b), stroke=_STROKE, width_frac=0.002)


def _draw_pieces(canvas: _Canvas, ps: PieceSet) -> None:
    base = base_cell(ps.kind)
    for cell in ps.kept:
        if ps.kind == CARPET:
            canvas.rect(cell.corner, cell.side, fill=_KEPT_FILL)
        else:
            canvas.polygon(cell.boundary_loop().vertices, fill=_KEPT_FILL)
    for piece in ps.removed:
        canvas.polygon(piece.boundary.vertices, fill=_level_color(piece.birth_level))
    outer = base.boundary_loop().vertices
    canvas.polyline(outer + (outer[0],), stroke=_STROKE, width_frac=0.002)


def render_svg(
    obj: Union[Stage2, PieceSet],
    loop: Loop | None = None,
    holes: HoleSet | None = None,
) -> str:
    """Render a planar stage or piece set, with an optional indexed loop overlay.

    When both `loop` and `holes` are given, each hole representative is
    labeled with the loop's winding entry there, so the overlay displays
    the full index vector in place.
    """
    canvas = _Canvas()
    if isinstance(obj, Stage2):
        _draw_stage2(canvas, obj)
    elif isinstance(obj, PieceSet):
        _draw_pieces(canvas, obj)
    elif isinstance(obj, Stage3):
        raise UnsupportedGeometryError("3D stages render to OBJ, not SVG")
    else:
        raise UnsupportedGeometryError(f"cannot render {type(obj).__name__} to SVG")
    if loop is not None:
        closed = loop.vertices + (loop.vertices[0],)
        canvas.polyline(closed, stroke="#d62728", width_frac=0.006)
        if holes is not None:
            entries = index_vector(loop, holes)
            for rep, entry in zip(holes.representatives, entries):
                canvas.text(rep, str(entry), size_frac=0.05)
    return canvas.emit()


def export_obj(stage: Stage3) -> str:
    """Wavefront OBJ for a 3D stage: skeleton as `l` records, faces as `f`.

    Vertices are deduplicated by exact coordinates (first occurrence wins,
    iterating the sorted skeleton then the pieces), so output is stable.
    Faces are intentionally not deduplicated: overlapping faces from
    different birth levels are distinct pieces.
    """
    vertex_ids: dict = {}
    vertices: list = []

    def vid(point) -> int:
        key = point.coords
        got = vertex_ids.get(key)
        if got is None:
            got = len(vertices) + 1  # OBJ indices are 1-based
            vertex_ids[key] = got
            vertices.append(point)
        return got

    skeleton = sorted(stage.skeleton, key=lambda s: s.sort_key)
    lines = [(vid(s.a), vid(s.b)) for s in skeleton]
    faces = [tuple(vid(v) for v in face.boundary) for face in stage.pieces]
    out = [
        f"# quasifractal {stage.variant.kind} stage, level {stage.level}",
        f"# vertices: {len(vertices)}",
        f"# lines: {len(lines)}",
        f"# faces: {len(faces)}",
    ]
    for v in vertices:
        out.append(f"v {fmt(v.x)} {fmt(v.y)} {fmt(v.z)}")
    for a, b in lines:
        out.append(f"l {a} {b}")
    for face in faces:
        out.append("f " + " ".join(str(i) for i in face))
    return "\n".join(out) + "\n"
