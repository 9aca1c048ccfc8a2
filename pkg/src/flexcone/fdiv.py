"""f-divisors on the projective line and support functions on them.

A base point is a Fraction (a point of the affine line) or the string
``"inf"``.  Points not listed in an f-divisor carry the trivial slice, whose
cells are the maximal cones of the tail fan; points not listed in a support
function carry the pieces ``(lin(sigma), 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .geom import (Cone, Polyhedron, PolyhedralComplex, cone_as_polyhedron,
                   is_lattice_translate, minkowski_sum)
from .linalg import dot, rat_str, vec

INF = "inf"


class FDivisorError(ValueError):
    """Malformed input or violated precondition."""


def parse_point(p):
    if isinstance(p, str) and p.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INF
    if isinstance(p, bool):
        raise FDivisorError(f"bad base point {p!r}")
    try:
        return Fraction(p.strip()) if isinstance(p, str) else Fraction(p)
    except (TypeError, ValueError, ZeroDivisionError):
        raise FDivisorError(f"bad base point {p!r}") from None


def point_str(p) -> str:
    return INF if p == INF else rat_str(p)


def point_key(p):
    return (1, 0) if p == INF else (0, p)


def mu(v: Sequence) -> int:
    """Least k >= 1 with k*v integral."""
    return lcm(1, *(Fraction(x).denominator for x in v))


@dataclass
class FDivisor:
    rank: int
    tail_fan: list  # maximal cones
    slices: dict = field(default_factory=dict)  # point -> PolyhedralComplex
    degree: dict = field(default_factory=dict)  # fan index -> Polyhedron | None

    def trivial_slice(self) -> PolyhedralComplex:
        return PolyhedralComplex([cone_as_polyhedron(c) for c in self.tail_fan], self.rank)

    def slice(self, p) -> PolyhedralComplex:
        return self.slices.get(p) or self.trivial_slice()

    def support(self) -> list:
        return sorted(self.slices, key=point_key)

    def full_dim_cones(self) -> list[int]:
        return [i for i, c in enumerate(self.tail_fan) if c.dim == self.rank]

    def fan_faces(self) -> list[Cone]:
        out: list[Cone] = []
        for c in self.tail_fan:
            for f in c.faces():
                if not any(f == g for g in out):
                    out.append(f)
        return out

    def fan_rays(self) -> list[tuple]:
        out = []
        for c in self.tail_fan:
            for r in c.rays:
                if r not in out:
                    out.append(r)
        return sorted(out)

    def deg_meets(self, ray: Sequence) -> bool:
        line = cone_as_polyhedron(Cone([tuple(ray)], self.rank))
        return any(d is not None and d.intersect(line) is not None for d in self.degree.values())

    def horizontal_rays(self) -> list[tuple]:
        """Rays of the tail fan not meeting deg."""
        return [r for r in self.fan_rays() if not self.deg_meets(r)]


# ---------------------------------------------------------------------------
# validation and criteria

@dataclass
class Report:
    verdict: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict


def _cell_with_tail(cx: PolyhedralComplex, sigma: Cone) -> list[Polyhedron]:
    return [c for c in cx.cells if c.tail() == sigma]


def validate_fdivisor(S: FDivisor) -> Report:
    bad: list = []
    fan = PolyhedralComplex([cone_as_polyhedron(c) for c in S.tail_fan], S.rank)
    for i, j in fan.compatibility_failures():
        bad.append({"kind": "fan-not-a-fan", "cones": [i, j]})
    for msg in fan.completeness_failures():
        bad.append({"kind": "fan-incomplete", "message": msg})
    faces = S.fan_faces()
    for p in S.support():
        cx = S.slices[p]
        where = point_str(p)
        for i, j in cx.compatibility_failures():
            bad.append({"kind": "slice-not-a-complex", "point": where, "cells": [i, j]})
        for msg in cx.completeness_failures():
            bad.append({"kind": "slice-incomplete", "point": where, "message": msg})
        for i, cell in enumerate(cx.cells):
            if not any(cell.tail() == f for f in faces):
                bad.append({"kind": "tail-not-in-fan", "point": where, "cells": [i]})
        for k in S.full_dim_cones():
            n = len(_cell_with_tail(cx, S.tail_fan[k]))
            if n != 1:
                bad.append({"kind": "tail-cone-count", "point": where, "cone": k,
                            "message": f"{n} cells have tail cone {k}"})
    if bad:
        return Report(False, bad)
    for k in S.full_dim_cones():
        if k not in S.degree:
            bad.append({"kind": "degree-missing", "cone": k})
            continue
        given = S.degree[k]
        if given is None:
            continue
        sigma = S.tail_fan[k]
        parts = [_cell_with_tail(S.slices[p], sigma)[0] for p in S.support()]
        total = minkowski_sum(parts) if parts else cone_as_polyhedron(sigma)
        if not total == given:
            bad.append({"kind": "degree-mismatch", "cone": k,
                        "message": f"sum of slice polyhedra is {total!r}, given {given!r}"})
        elif total == cone_as_polyhedron(sigma):
            bad.append({"kind": "degree-not-proper", "cone": k,
                        "message": "degree polyhedron equals its tail cone"})
    for k in S.degree:
        if k not in S.full_dim_cones():
            bad.append({"kind": "degree-on-lower-cone", "cone": k})
    return Report(not bad, bad)


def _translate_of_fan(S: FDivisor, cx: PolyhedralComplex) -> bool:
    if len(cx.cells) != len(S.tail_fan):
        return False
    shift = None
    for cell in cx.cells:
        sigma = next((c for c in S.tail_fan if cell.tail() == c), None)
        if sigma is None:
            return False
        v = is_lattice_translate(cell, sigma)
        if v is None:
            return False
        shift = shift or v
    return all(any(cell == cone_as_polyhedron(c).translate(shift) for cell in cx.cells)
               for c in S.tail_fan)


def is_toric(S: FDivisor) -> Report:
    exceptional = [p for p in S.support() if not _translate_of_fan(S, S.slices[p])]
    return Report(len(exceptional) <= 2,
                  [{"kind": "exceptional-points", "points": [point_str(p) for p in exceptional]}])


def _tail_cones(S: FDivisor) -> list[Cone]:
    out = list(S.fan_faces())
    for p in S.support():
        for poly in S.slices[p].all_polyhedra():
            t = poly.tail()
            if not any(t == c for c in out):
                out.append(t)
    return out


def toric_cover_check(S: FDivisor) -> Report:
    """For every tail cone, at most two slices lack a lattice translate of it."""
    failures = []
    polys = {p: S.slices[p].all_polyhedra() for p in S.support()}
    for tau in _tail_cones(S):
        missing = [p for p in S.support()
                   if not any(is_lattice_translate(q, tau) is not None for q in polys[p])]
        if len(missing) > 2:
            failures.append({"kind": "too-many-slices-without-translate",
                             "tail": _cone_json(tau), "count": len(missing),
                             "points": [point_str(p) for p in missing]})
    return Report(not failures, failures)


def all_cones_flexible_check(S: FDivisor) -> Report:
    """For every tail cone, at most two slices hold a non-translate polyhedron with that tail."""
    failures = []
    polys = {p: S.slices[p].all_polyhedra() for p in S.support()}
    for tau in _tail_cones(S):
        offenders = {}
        for p in S.support():
            cells = [q for q in polys[p] if q.tail() == tau and is_lattice_translate(q, tau) is None]
            if cells:
                offenders[p] = cells
        if len(offenders) > 2:
            witness = sorted({c for cs in offenders.values() for c in map(_poly_json_key, cs)})
            failures.append({"kind": "too-many-non-translates", "tail": _cone_json(tau),
                             "count": len(offenders),
                             "points": [point_str(p) for p in sorted(offenders, key=point_key)],
                             "cells": [_poly_from_key(k) for k in witness]})
    return Report(not failures, failures)


def _cone_json(c: Cone) -> list:
    return [list(g) for g in c.generators]


def _poly_json_key(p: Polyhedron):
    return (tuple(tuple(rat_str(x) for x in v) for v in p.vertices),
            tuple(tuple(r) for r in p.ray_generators()))


def _poly_from_key(k) -> dict:
    return {"vertices": [list(v) for v in k[0]], "rays": [list(r) for r in k[1]]}


# ---------------------------------------------------------------------------
# support functions

@dataclass
class SupportFunction:
    lin: dict  # fan cone index -> u
    pieces: dict = field(default_factory=dict)  # point -> [(u, a)] per cell

    def lin_value(self, S: FDivisor, v: Sequence) -> Fraction:
        for k, c in enumerate(S.tail_fan):
            if c.contains(v):
                return dot(self.lin[k], vec(v))
        raise FDivisorError(f"{v} is not covered by the tail fan")

    def support(self, S: FDivisor) -> list:
        return sorted(set(S.slices) | set(self.pieces), key=point_key)

    def cell_pieces(self, S: FDivisor, p) -> list:
        if p in self.pieces:
            return self.pieces[p]
        cx = S.slice(p)
        if p in S.slices and not cx.same_cells(S.trivial_slice()):
            raise FDivisorError(f"no pieces given for nontrivial slice at {point_str(p)}")
        out = []
        for cell in cx.cells:
            k = next(i for i, c in enumerate(S.tail_fan) if cell.tail() == c)
            out.append((vec(self.lin[k]), Fraction(0)))
        return out

    def value(self, S: FDivisor, p, v: Sequence) -> Fraction:
        cx = S.slice(p)
        pcs = self.cell_pieces(S, p)
        v = vec(v)
        for cell, (u, a) in zip(cx.cells, pcs):
            if cell.contains(v):
                return dot(u, v) + a
        raise FDivisorError(f"{v} is not covered by the slice at {point_str(p)}")

    def minus_linear(self, u: Sequence, shifts: dict | None = None) -> "SupportFunction":
        """h - <u, .> - a_P (a_P from ``shifts``, default 0)."""
        u = vec(u)
        shifts = shifts or {}
        lin = {k: tuple(x - y for x, y in zip(w, u)) for k, w in self.lin.items()}
        pieces = {p: [(tuple(x - y for x, y in zip(w, u)), a - Fraction(shifts.get(p, 0)))
                      for w, a in pcs] for p, pcs in self.pieces.items()}
        return SupportFunction(lin, pieces)

    def __add__(self, other: "SupportFunction") -> "SupportFunction":
        lin = {k: tuple(x + y for x, y in zip(self.lin[k], other.lin[k])) for k in self.lin}
        pts = set(self.pieces) | set(other.pieces)
        pieces = {}
        for p in pts:
            a = self.pieces.get(p)
            b = other.pieces.get(p)
            if a is None or b is None:
                raise FDivisorError("sum needs pieces at the same points")
            pieces[p] = [(tuple(x + y for x, y in zip(u1, u2)), a1 + a2)
                         for (u1, a1), (u2, a2) in zip(a, b)]
        return SupportFunction(lin, pieces)


GENERIC = "generic"  # stands for any base point with the trivial slice


def _points_with_generic(S: FDivisor, h: SupportFunction) -> list:
    return h.support(S) + [GENERIC]


def _cells(S: FDivisor, p) -> list[Polyhedron]:
    return list(S.trivial_slice().cells if p == GENERIC else S.slice(p).cells)


def _pieces(S: FDivisor, h: SupportFunction, p) -> list:
    if p == GENERIC:
        return [(vec(h.lin[k]), Fraction(0)) for k in range(len(S.tail_fan))]
    return [(vec(u), Fraction(a)) for u, a in h.cell_pieces(S, p)]


def _affine_agree_on(piece1, piece2, poly: Polyhedron) -> bool:
    (u1, a1), (u2, a2) = piece1, piece2
    du = tuple(x - y for x, y in zip(u1, u2))
    return all(dot(du, v) + a1 - a2 == 0 for v in poly.vertices) and \
        all(dot(du, r) == 0 for r in poly.ray_generators())


def _affine_geq_on(piece_hi, piece_lo, poly: Polyhedron) -> bool:
    (u1, a1), (u2, a2) = piece_hi, piece_lo
    du = tuple(x - y for x, y in zip(u1, u2))
    return all(dot(du, v) + a1 - a2 >= 0 for v in poly.vertices) and \
        all(dot(du, r) >= 0 for r in poly.ray_generators())


def validate_sf(S: FDivisor, h: SupportFunction) -> Report:
    bad = []
    n = len(S.tail_fan)
    if sorted(h.lin) != list(range(n)):
        return Report(False, [{"kind": "lin-cones", "message": f"need a linear piece for each of {n} cones"}])
    if any(len(u) != S.rank for u in h.lin.values()):
        return Report(False, [{"kind": "lin-rank", "message": "linear piece of wrong length"}])
    for i in range(n):
        for j in range(i + 1, n):
            common = S.tail_fan[i].intersect(S.tail_fan[j])
            if any(dot(vec(h.lin[i]), g) != dot(vec(h.lin[j]), g) for g in common.generators):
                bad.append({"kind": "lin-discontinuous", "cones": [i, j]})
    for p in h.support(S):
        where = point_str(p)
        if p in h.pieces and len(h.pieces[p]) != len(S.slice(p).cells):
            bad.append({"kind": "cell-mismatch", "point": where,
                        "message": f"{len(h.pieces[p])} pieces for {len(S.slice(p).cells)} cells"})
            continue
        try:
            pcs = _pieces(S, h, p)
        except FDivisorError as e:
            bad.append({"kind": "cell-mismatch", "point": where, "message": str(e)})
            continue
        cells = _cells(S, p)
        for i, (cell, (u, _)) in enumerate(zip(cells, pcs)):
            tau = cell.tail()
            for k, sigma in enumerate(S.tail_fan):
                if sigma.contains_cone(tau) and \
                        any(dot(u, g) != dot(vec(h.lin[k]), g) for g in tau.generators):
                    bad.append({"kind": "linear-part", "point": where, "cells": [i], "cone": k})
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                f = cells[i].intersect(cells[j])
                if f is not None and not _affine_agree_on(pcs[i], pcs[j], f):
                    bad.append({"kind": "discontinuous", "point": where, "cells": [i, j]})
    return Report(not bad, bad)


def _require_valid_sf(S, h):
    rep = validate_sf(S, h)
    if not rep:
        raise FDivisorError(f"invalid support function: {rep.failures}")


@dataclass
class InvariantDivisor:
    horizontal: dict  # ray -> coefficient
    vertical: dict  # (point, vertex) -> coefficient

    def nonzero(self) -> "InvariantDivisor":
        return InvariantDivisor({r: c for r, c in self.horizontal.items() if c},
                                {k: c for k, c in self.vertical.items() if c})

    def __eq__(self, other):
        if not isinstance(other, InvariantDivisor):
            return NotImplemented
        a, b = self.nonzero(), other.nonzero()
        return a.horizontal == b.horizontal and a.vertical == b.vertical

    def __add__(self, other):
        hz = dict(self.horizontal)
        for r, c in other.horizontal.items():
            hz[r] = hz.get(r, 0) + c
        vt = dict(self.vertical)
        for k, c in other.vertical.items():
            vt[k] = vt.get(k, 0) + c
        return InvariantDivisor(hz, vt)

    def __str__(self):
        terms = [f"{rat_str(c)}*D_rho{tuple(r)}" for r, c in sorted(self.horizontal.items()) if c]
        terms += [f"{rat_str(c)}*D_({point_str(p)},{','.join(rat_str(x) for x in v)})"
                  for (p, v), c in sorted(self.vertical.items(), key=lambda kv: (point_key(kv[0][0]), kv[0][1]))
                  if c]
        return " + ".join(terms) if terms else "0"


def divisor(S: FDivisor, h: SupportFunction) -> InvariantDivisor:
    """D_h = -sum lin(rho) D_rho - sum mu(v) h_P(v) D_(P,v)."""
    _require_valid_sf(S, h)
    hz = {r: -h.lin_value(S, r) for r in S.horizontal_rays()}
    vt = {}
    for p in h.support(S):
        for v in S.slice(p).vertices():
            vt[(p, v)] = -mu(v) * h.value(S, p, v)
    return InvariantDivisor(hz, vt)


def is_effective(S: FDivisor, h: SupportFunction) -> bool:
    """h_P <= 0 everywhere: checked at vertices and along rays of every cell."""
    _require_valid_sf(S, h)
    for p in _points_with_generic(S, h):
        for cell, (u, a) in zip(_cells(S, p), _pieces(S, h, p)):
            if any(dot(u, v) + a > 0 for v in cell.vertices):
                return False
            if any(dot(u, r) > 0 for r in cell.ray_generators()):
                return False
    return True


def _zero_locus(cell: Polyhedron, piece, level=Fraction(0)) -> Polyhedron | None:
    u, a = piece
    return Polyhedron.from_inequalities(cell.inequalities,
                                        list(cell.equations) + [(a - level, u)], cell.rank)


def _maximal(polys: list[Polyhedron]) -> list[Polyhedron]:
    out = []
    for p in polys:
        if any(q.contains_polyhedron(p) and not q == p for q in polys):
            continue
        if not any(p == q for q in out):
            out.append(p)
    return out


def zero_set(S: FDivisor, h: SupportFunction) -> FDivisor:
    """[h = 0]: per point the cells where h_P vanishes, over the subfan [lin h = 0]."""
    _require_valid_sf(S, h)
    faces = []
    for k, sigma in enumerate(S.tail_fan):
        for f in sigma.faces():
            if all(dot(vec(h.lin[k]), g) == 0 for g in f.generators):
                faces.append(f)
    fan = [c for c in faces if not any(d.contains_cone(c) and not d == c for d in faces)]
    uniq: list[Cone] = []
    for c in fan:
        if not any(c == d for d in uniq):
            uniq.append(c)
    slices = {}
    for p in h.support(S):
        locus = [z for cell, pc in zip(_cells(S, p), _pieces(S, h, p))
                 if (z := _zero_locus(cell, pc)) is not None]
        slices[p] = PolyhedralComplex(_maximal(locus), S.rank)
    deg = {}
    for k, val in S.degree.items():
        sigma = S.tail_fan[k]
        for j, c in enumerate(uniq):
            if c == sigma:
                deg[j] = val
    return FDivisor(S.rank, uniq, slices, deg)


def box(S: FDivisor, h: SupportFunction) -> Polyhedron | None:
    """{u : <u, .> >= lin h}, i.e. the intersection of u_sigma + sigma^dual."""
    ineqs = []
    for k, sigma in enumerate(S.tail_fan):
        for g in sigma.generators:
            ineqs.append((-dot(vec(h.lin[k]), g), tuple(Fraction(x) for x in g)))
    return Polyhedron.from_inequalities(ineqs, rank=S.rank)


def dual_value(S: FDivisor, h: SupportFunction, p, u: Sequence) -> Fraction:
    """h*_P(u) = min over vertices v of S_P of <u, v> - h_P(v)."""
    u = vec(u)
    b = box(S, h)
    if b is None or not b.contains(u):
        raise FDivisorError(f"u = {[rat_str(x) for x in u]} lies outside Box_h (infimum is -infinity)")
    best = None
    for cell, (w, a) in zip(_cells(S, p), _pieces(S, h, p)):
        for v in cell.vertices:
            val = dot(u, v) - dot(w, v) - a
            best = val if best is None or val < best else best
    return Fraction(0) if best is None else best


def ample_necessary(S: FDivisor, h: SupportFunction) -> Report:
    """Strong concavity of every h_P, and h*_P >= 0 at the vertices of Box_h."""
    _require_valid_sf(S, h)
    bad = []
    for p in _points_with_generic(S, h):
        where = point_str(p) if p != GENERIC else GENERIC
        cells, pcs = _cells(S, p), _pieces(S, h, p)
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                f = cells[i].intersect(cells[j])
                if f is None or f.dim != S.rank - 1:
                    continue
                if pcs[i] == pcs[j]:
                    bad.append({"kind": "equal-pieces", "point": where, "cells": [i, j]})
                elif not (_affine_geq_on(pcs[j], pcs[i], cells[i]) and
                          _affine_geq_on(pcs[i], pcs[j], cells[j])):
                    bad.append({"kind": "not-concave", "point": where, "cells": [i, j]})
    b = box(S, h)
    if b is None:
        bad.append({"kind": "empty-box"})
    else:
        for p in _points_with_generic(S, h):
            for u in b.vertices:
                val = dual_value(S, h, p, u)
                if val < 0:
                    bad.append({"kind": "negative-dual-value",
                                "point": point_str(p) if p != GENERIC else GENERIC,
                                "u": [rat_str(x) for x in u], "value": rat_str(val)})
    return Report(not bad, bad)


# ---------------------------------------------------------------------------
# polar charts

@dataclass
class PolarChart:
    h: SupportFunction
    zero_point: object
    infinity_point: object
    u: tuple
    shifts: dict  # point -> a_P with h_inf_P = h_P - <u, .> - a_P
    exceptional: list


def _argmax(S, h, p):
    cells, pcs = _cells(S, p), _pieces(S, h, p)
    best = max(dot(u, v) + a for cell, (u, a) in zip(cells, pcs) for v in cell.vertices)
    locus = [z for cell, pc in zip(cells, pcs) if (z := _zero_locus(cell, pc, best)) is not None]
    verts = [v for z in locus for v in z.vertices]
    rays = [r for z in locus for r in z.ray_generators()]
    return best, Polyhedron(verts, rays, S.rank)


def _fresh_point(taken) -> Fraction:
    k = 2
    while Fraction(k) in taken:
        k += 1
    return Fraction(k)


def polar_chart(S: FDivisor, h: SupportFunction, q, cell: int) -> PolarChart:
    """Linearly equivalent h^inf <= 0 whose zero set at ``q`` is the given cell.

    The shifted function h' = h - u_Delta attains its maximum m_P on every
    slice; points whose argmax is not a lattice translate of tail(Delta) are
    the exceptional ones, which take the roles of 0 and infinity.  All other
    points get h'_P - m_P, and the infinity point absorbs the sum of the m_P.
    """
    if not all_cones_flexible_check(S):
        raise FDivisorError("precondition violated: all_cones_flexible_check fails")
    rep = ample_necessary(S, h)
    if not rep:
        raise FDivisorError(f"precondition violated: ample_necessary fails {rep.failures}")
    cells = _cells(S, q)
    if not 0 <= cell < len(cells):
        raise FDivisorError(f"cell index {cell} out of range at {point_str(q)}")
    delta = cells[cell]
    tau = delta.tail()
    u_delta = _pieces(S, h, q)[cell][0]
    hp = h.minus_linear(u_delta)
    pts = h.support(S)
    if q not in pts:
        pts = sorted(pts + [q], key=point_key)
    maxima, exceptional = {}, []
    for p in pts:
        m, arg = _argmax(S, hp, p)
        maxima[p] = m
        if is_lattice_translate(arg, tau) is None:
            exceptional.append(p)
    others = [p for p in exceptional if p != q]
    if len(others) > 2 or (q in exceptional and len(others) > 1):
        raise FDivisorError("precondition violated: more than two exceptional points "
                            f"{[point_str(p) for p in exceptional]}")
    if len(others) == 2:
        zero, infinity = others
    elif others:
        zero, infinity = q, others[0]
    else:
        zero = q
        infinity = INF if q != INF else _fresh_point(set(pts))
    shifts = {p: maxima[p] for p in pts if p != infinity}
    shifts[infinity] = -sum(shifts.values(), Fraction(0))
    pieces = {}
    for p in set(pts) | {infinity}:
        a_p = shifts[p] if p in shifts else Fraction(0)
        pieces[p] = [(w, a - a_p) for w, a in _pieces(S, hp, p)]
    h_inf = SupportFunction(dict(hp.lin), pieces)
    return PolarChart(h_inf, zero, infinity, tuple(u_delta), shifts, exceptional)


def check_polar_chart(S: FDivisor, h: SupportFunction, q, cell: int, pc: PolarChart) -> dict:
    """The four postconditions of a polar chart, each as a boolean."""
    u = pc.u
    equivalent = sum(pc.shifts.values(), Fraction(0)) == 0
    for p in set(h.support(S)) | set(pc.h.pieces):
        a_p = pc.shifts.get(p, Fraction(0))
        expected = [(tuple(x - y for x, y in zip(w, u)), a - a_p) for w, a in _pieces(S, h, p)]
        equivalent &= _pieces(S, pc.h, p) == expected
    equivalent &= all(tuple(x - y for x, y in zip(vec(h.lin[k]), u)) == tuple(pc.h.lin[k])
                      for k in h.lin)
    effective = is_effective(S, pc.h)
    delta = _cells(S, q)[cell]
    zs = zero_set(S, pc.h)
    zq = zs.slices.get(q)
    zero_q = zq is not None and len(zq.cells) == 1 and zq.cells[0] == delta
    tau = delta.tail()
    translates = True
    for p, cx in zs.slices.items():
        if p in (pc.zero_point, pc.infinity_point):
            continue
        translates &= len(cx.cells) == 1 and is_lattice_translate(cx.cells[0], tau) is not None
    return {"linearly_equivalent": bool(equivalent), "effective": effective,
            "zero_set_at_q": zero_q, "translates_elsewhere": translates}
