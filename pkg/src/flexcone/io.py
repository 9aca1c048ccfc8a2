"""JSON reading and writing for f-divisors, support functions and reports.

Rationals are written as ``"p/q"`` strings (bare integers are accepted on
input).  Parse errors carry the JSON path of the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .fdiv import FDivisor, SupportFunction, parse_point, point_key, point_str, FDivisorError
from .geom import Cone, GeometryError, Polyhedron, PolyhedralComplex
from .linalg import rat_str


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _rat(x, path) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(path, f"expected an integer or a 'p/q' string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(path, f"expected an integer or a 'p/q' string, got {x!r}")


def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(path, f"expected an integer, got {x!r}")
    return x


def _list(x, path) -> list:
    if not isinstance(x, list):
        raise InputError(path, f"expected a list, got {type(x).__name__}")
    return x


def _field(obj, key, path):
    if not isinstance(obj, dict):
        raise InputError(path, "expected an object")
    if key not in obj:
        raise InputError(f"{path}.{key}", "missing field")
    return obj[key]


def _vector(x, rank, path, conv=_rat) -> tuple:
    xs = _list(x, path)
    if len(xs) != rank:
        raise InputError(path, f"expected {rank} entries, got {len(xs)}")
    return tuple(conv(v, f"{path}[{i}]") for i, v in enumerate(xs))


def _polyhedron(obj, rank, path) -> Polyhedron:
    verts = [_vector(v, rank, f"{path}.vertices[{i}]")
             for i, v in enumerate(_list(_field(obj, "vertices", path), f"{path}.vertices"))]
    rays = [_vector(r, rank, f"{path}.rays[{i}]", _int)
            for i, r in enumerate(_list(obj.get("rays", []), f"{path}.rays"))]
    if not verts:
        raise InputError(f"{path}.vertices", "a polyhedron needs at least one vertex")
    return Polyhedron(verts, rays, rank)


def _cone_ref(x, fan, rank, path) -> int:
    if isinstance(x, int) and not isinstance(x, bool):
        if not 0 <= x < len(fan):
            raise InputError(path, f"cone index {x} out of range")
        return x
    c = Cone([_vector(r, rank, f"{path}[{i}]", _int) for i, r in enumerate(_list(x, path))], rank)
    for k, d in enumerate(fan):
        if c == d:
            return k
    raise InputError(path, "cone is not a maximal cone of the tail fan")


def fdivisor_from_json(doc) -> FDivisor:
    rank = _int(_field(doc, "rank", "$"), "$.rank")
    if rank < 1:
        raise InputError("$.rank", "rank must be >= 1")
    fan = []
    for i, cone in enumerate(_list(_field(doc, "tailFan", "$"), "$.tailFan")):
        path = f"$.tailFan[{i}]"
        rays = [_vector(r, rank, f"{path}[{j}]", _int) for j, r in enumerate(_list(cone, path))]
        try:
            fan.append(Cone(rays, rank))
        except GeometryError as e:
            raise InputError(path, str(e)) from None
    if not fan:
        raise InputError("$.tailFan", "the tail fan needs at least one cone")
    slices = {}
    for i, sl in enumerate(_list(doc.get("slices", []), "$.slices")):
        path = f"$.slices[{i}]"
        try:
            p = parse_point(_field(sl, "point", path))
        except FDivisorError as e:
            raise InputError(f"{path}.point", str(e)) from None
        if p in slices:
            raise InputError(f"{path}.point", f"duplicate point {point_str(p)}")
        cells = [_polyhedron(c, rank, f"{path}.cells[{j}]")
                 for j, c in enumerate(_list(_field(sl, "cells", path), f"{path}.cells"))]
        slices[p] = PolyhedralComplex(cells, rank)
    degree = {}
    for i, d in enumerate(_list(doc.get("degree", []), "$.degree")):
        path = f"$.degree[{i}]"
        k = _cone_ref(_field(d, "cone", path), fan, rank, f"{path}.cone")
        val = _field(d, "value", path)
        degree[k] = None if val is None else _polyhedron(val, rank, f"{path}.value")
    return FDivisor(rank, fan, slices, degree)


def sf_from_json(doc, S: FDivisor) -> SupportFunction:
    lin = {}
    for i, e in enumerate(_list(_field(doc, "lin", "$"), "$.lin")):
        path = f"$.lin[{i}]"
        k = _cone_ref(_field(e, "cone", path), S.tail_fan, S.rank, f"{path}.cone")
        lin[k] = _vector(_field(e, "u", path), S.rank, f"{path}.u")
    missing = [k for k in range(len(S.tail_fan)) if k not in lin]
    if missing:
        raise InputError("$.lin", f"no linear piece for cones {missing}")
    raw: dict = {}
    for i, e in enumerate(_list(doc.get("pieces", []), "$.pieces")):
        path = f"$.pieces[{i}]"
        try:
            p = parse_point(_field(e, "point", path))
        except FDivisorError as err:
            raise InputError(f"{path}.point", str(err)) from None
        cell = _int(_field(e, "cell", path), f"{path}.cell")
        ncells = len(S.slice(p).cells)
        if not 0 <= cell < ncells:
            raise InputError(f"{path}.cell", f"cell {cell} out of range ({ncells} cells at {point_str(p)})")
        raw.setdefault(p, {})[cell] = (_vector(_field(e, "u", path), S.rank, f"{path}.u"),
                                       _rat(_field(e, "a", path), f"{path}.a"))
    pieces = {}
    for p, cells in raw.items():
        n = len(S.slice(p).cells)
        if sorted(cells) != list(range(n)):
            raise InputError("$.pieces", f"point {point_str(p)} needs a piece for each of its {n} cells")
        pieces[p] = [cells[k] for k in range(n)]
    return SupportFunction(lin, pieces)


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {"vertices": [[rat_str(x) for x in v] for v in p.vertices],
            "rays": [list(r) for r in p.ray_generators()]}


def fdivisor_to_json(S: FDivisor) -> dict:
    return {
        "rank": S.rank,
        "tailFan": [[list(g) for g in c.generators] for c in S.tail_fan],
        "slices": [{"point": point_str(p), "cells": [polyhedron_to_json(c) for c in S.slices[p].cells]}
                   for p in S.support()],
        "degree": [{"cone": k, "value": None if v is None else polyhedron_to_json(v)}
                   for k, v in sorted(S.degree.items())],
    }


def sf_to_json(h: SupportFunction) -> dict:
    return {
        "lin": [{"cone": k, "u": [rat_str(x) for x in u]} for k, u in sorted(h.lin.items())],
        "pieces": [{"point": point_str(p), "cell": i, "u": [rat_str(x) for x in u], "a": rat_str(a)}
                   for p in sorted(h.pieces, key=point_key) for i, (u, a) in enumerate(h.pieces[p])],
    }


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(str(path), e.strerror or str(e)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None


def load_fdivisor(path) -> FDivisor:
    return fdivisor_from_json(load_json(path))


def load_sf(path, S: FDivisor) -> SupportFunction:
    return sf_from_json(load_json(path), S)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
