"""Lossless JSON documents for stages and piece sets.

Every rational value is serialized as a "p/q" string (plain "p" when the
denominator is 1), never as a float, so parse(serialize(x)) reproduces x
with exact equality. Floating values appear only inside the informational
`measures` block, which is not used for reconstruction. Collections are
emitted in canonical order so documents are byte-deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cantor import Cell, Params2, Stage2
from .errors import ParameterError
from .geometry import Loop, Point2, Point3, Segment, rational
from .planar import CARPET, GASKET, Piece, PieceSet, SquareCell, TriangleCell
from .spatial import (
    CUBE_WIREFRAME,
    TETRA_GASKET,
    CubeCell,
    Face3,
    SpatialVariant,
    Stage3,
    TetraCell,
)

SCHEMA_VERSION = 1

_KINDS = ("cantor2d", CARPET, GASKET, CUBE_WIREFRAME, TETRA_GASKET)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    return rational(text)


def _point_json(p) -> list[str]:
    return [format_rational(c) for c in p.coords]


def _point2(data) -> Point2:
    if len(data) != 2:
        raise ParameterError(f"expected 2 coordinates, got {data!r}")
    return Point2(parse_rational(data[0]), parse_rational(data[1]))


def _point3(data) -> Point3:
    if len(data) != 3:
        raise ParameterError(f"expected 3 coordinates, got {data!r}")
    return Point3(*(parse_rational(c) for c in data))


def _segments_json(segments) -> list:
    ordered = sorted(segments, key=lambda s: s.sort_key)
    return [[_point_json(s.a), _point_json(s.b)] for s in ordered]


def _loop_json(loop: Loop) -> list:
    return [_point_json(v) for v in loop.vertices]


def stage2_to_document(stage: Stage2, measures: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "cantor2d",
        "params": {"a": format_rational(stage.params.a), "depth": stage.params.depth},
        "level": stage.level,
        "cells": [
            {
                "address": cell.address,
                "corner": _point_json(cell.corner),
                "side": format_rational(cell.side),
            }
            for cell in stage.cells
        ],
        "segments": _segments_json(stage.segments),
    }
    if measures is not None:
        doc["measures"] = measures
    return doc


def document_to_stage2(doc: dict) -> Stage2:
    _check(doc, "cantor2d")
    params = Params2(parse_rational(doc["params"]["a"]), int(doc["params"]["depth"]))
    cells = [
        Cell(c["address"], _point2(c["corner"]), parse_rational(c["side"]))
        for c in doc["cells"]
    ]
    segments = {Segment(_point2(a), _point2(b)) for a, b in doc["segments"]}
    return Stage2(params=params, level=int(doc["level"]), cells=cells, segments=segments)


def pieces_to_document(ps: PieceSet, measures: dict | None = None) -> dict:
    if ps.kind == CARPET:
        kept = [
            {"corner": _point_json(cell.corner), "side": format_rational(cell.side)}
            for cell in ps.kept
        ]
    else:
        kept = [{"vertices": [_point_json(v) for v in (c.v0, c.v1, c.v2)]} for c in ps.kept]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": ps.kind,
        "level": ps.level,
        "kept": kept,
        "removed": [
            {
                "boundary": _loop_json(piece.boundary),
                "birth_level": piece.birth_level,
                "label": piece.label,
            }
            for piece in ps.removed
        ],
    }
    if measures is not None:
        doc["measures"] = measures
    return doc


def document_to_pieces(doc: dict) -> PieceSet:
    kind = doc.get("kind")
    if kind not in (CARPET, GASKET):
        raise ParameterError(f"not a planar piece document: kind={kind!r}")
    _check(doc, kind)
    if kind == CARPET:
        kept = [
            SquareCell(_point2(c["corner"]), parse_rational(c["side"])) for c in doc["kept"]
        ]
    else:
        kept = [TriangleCell(*(_point2(v) for v in c["vertices"])) for c in doc["kept"]]
    removed = [
        Piece(
            Loop(tuple(_point2(v) for v in r["boundary"])),
            int(r["birth_level"]),
            r["label"],
        )
        for r in doc["removed"]
    ]
    return PieceSet(kind=kind, level=int(doc["level"]), kept=kept, removed=removed)


def stage3_to_document(stage: Stage3, measures: dict | None = None) -> dict:
    variant = stage.variant
    params: dict = {"kind": variant.kind}
    if variant.a is not None:
        params["a"] = format_rational(variant.a)
    if variant.kind == CUBE_WIREFRAME:
        cells = [
            {
                "address": c.address,
                "corner": _point_json(c.corner),
                "side": format_rational(c.side),
            }
            for c in stage.cells
        ]
    else:
        cells = [
            {"address": c.address, "vertices": [_point_json(v) for v in c.vertices]}
            for c in stage.cells
        ]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": variant.kind,
        "params": params,
        "level": stage.level,
        "cells": cells,
        "skeleton": _segments_json(stage.skeleton),
        "pieces": [
            {
                "boundary": [_point_json(v) for v in face.boundary],
                "birth_level": face.birth_level,
                "area_sq": format_rational(face.area_sq),
            }
            for face in stage.pieces
        ],
    }
    if measures is not None:
        doc["measures"] = measures
    return doc


def document_to_stage3(doc: dict) -> Stage3:
    kind = doc.get("kind")
    if kind not in (CUBE_WIREFRAME, TETRA_GASKET):
        raise ParameterError(f"not a spatial stage document: kind={kind!r}")
    _check(doc, kind)
    params = doc["params"]
    variant = SpatialVariant(
        kind, parse_rational(params["a"]) if kind == CUBE_WIREFRAME else None
    )
    if kind == CUBE_WIREFRAME:
        cells = [
            CubeCell(c["address"], _point3(c["corner"]), parse_rational(c["side"]))
            for c in doc["cells"]
        ]
    else:
        cells = [
            TetraCell(c["address"], tuple(_point3(v) for v in c["vertices"]))
            for c in doc["cells"]
        ]
    skeleton = {Segment(_point3(a), _point3(b)) for a, b in doc["skeleton"]}
    pieces = [
        Face3(
            tuple(_point3(v) for v in f["boundary"]),
            int(f["birth_level"]),
            parse_rational(f["area_sq"]),
        )
        for f in doc["pieces"]
    ]
    return Stage3(
        variant=variant, level=int(doc["level"]), cells=cells, skeleton=skeleton, pieces=pieces
    )


def _check(doc: dict, kind: str) -> None:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParameterError(f"unsupported schema_version {version!r}")
    if doc.get("kind") != kind:
        raise ParameterError(f"expected kind {kind!r}, got {doc.get('kind')!r}")


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid JSON document: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("kind") not in _KINDS:
        raise ParameterError("not a quasifractal stage document")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ParameterError(f"unsupported schema_version {doc.get('schema_version')!r}")
    return doc
