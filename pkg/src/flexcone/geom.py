"""Exact polyhedral geometry over Q: cones, polyhedra and polyhedral complexes.

Everything is stored with Fractions or Python ints; there is no floating point
anywhere on a verdict path.  The double description method below converts
between generator and inequality descriptions and is meant for desk-scale
ranks (up to about 8).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import floor, ceil, lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .linalg import (as_rat, dot, is_integral, is_zero, neg, primitive, rank,
                     sign_normalized, sub, add, vec)


class GeometryError(ValueError):
    pass


def _idot(a, b):
    return sum(x * y for x, y in zip(a, b))


def double_description(inequalities: Sequence[Sequence], dim: int):
    """Generators of the cone {x in Q^dim : a.x >= 0 for all a}.

    Returns ``(rays, lineality)``: primitive integer extreme rays of the cone
    modulo its lineality space, and a basis of the lineality space.
    """
    ineqs = [primitive(a) for a in inequalities if not is_zero(a)]
    lin = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple] = []
    tight: list[frozenset] = []
    for idx, a in enumerate(ineqs):
        piv = next((l for l in lin if _idot(a, l) != 0), None)
        if piv is not None:
            s = _idot(a, piv)
            if s < 0:
                piv, s = neg(piv), -s
            new_lin = []
            for l in lin:
                if l is piv or l == neg(piv):
                    continue
                v = _idot(a, l)
                new_lin.append(primitive(tuple(s * x - v * y for x, y in zip(l, piv)))
                               if v else l)
            new_rays = []
            for r in rays:
                v = _idot(a, r)
                new_rays.append(primitive(tuple(s * x - v * y for x, y in zip(r, piv)))
                                if v else r)
            prev = frozenset(range(idx))
            tight = [t | {idx} for t in tight] + [prev]
            rays = new_rays + [piv]
            lin = new_lin
            continue
        vals = [_idot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        negs = [i for i, v in enumerate(vals) if v < 0]
        if not negs:
            tight = [t | {idx} if vals[i] == 0 else t for i, t in enumerate(tight)]
            continue
        kept = [i for i, v in enumerate(vals) if v >= 0]
        new_rays = [rays[i] for i in kept]
        new_tight = [tight[i] | {idx} if vals[i] == 0 else tight[i] for i in kept]
        need = dim - len(lin) - 2
        for p in pos:
            for q in negs:
                common = tight[p] & tight[q]
                if len(common) < need:
                    continue
                if any(common <= tight[r] for r in range(len(rays)) if r != p and r != q):
                    continue
                vp, vq = vals[p], vals[q]
                new = primitive(tuple(vp * x - vq * y for x, y in zip(rays[q], rays[p])))
                new_rays.append(new)
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
    lin = [sign_normalized(l) for l in lin]
    return rays, lin


class Cone:
    """A rational polyhedral cone given by generators (possibly non-pointed).

    ``rays`` are primitive extreme rays modulo the lineality space, whose
    basis is ``lineality``.  ``inequalities`` (a.x >= 0, irredundant) and
    ``equations`` (a.x = 0) form the H-description.
    """

    __slots__ = ("rank", "rays", "lineality", "inequalities", "equations")

    def __init__(self, generators: Iterable[Sequence], rank: int | None = None):
        gens = [tuple(g) for g in generators]
        if rank is None:
            if not gens:
                raise GeometryError("rank is required for a cone without generators")
            rank = len(gens[0])
        if any(len(g) != rank for g in gens):
            raise GeometryError("generator length does not match rank")
        self.rank = rank
        facets, eqs = double_description(gens, rank)
        self.inequalities = tuple(sorted(facets))
        self.equations = tuple(sorted(eqs))
        h = list(facets) + list(eqs) + [neg(e) for e in eqs]
        rays, lin = double_description(h, rank)
        self.rays = tuple(sorted(rays))
        self.lineality = tuple(sorted(lin))

    @classmethod
    def from_inequalities(cls, inequalities, equations=(), rank: int | None = None) -> "Cone":
        ineqs = [tuple(a) for a in inequalities]
        eqs = [tuple(e) for e in equations]
        if rank is None:
            rank = len((ineqs + eqs)[0])
        rays, lin = double_description(ineqs + eqs + [neg(e) for e in eqs], rank)
        return cls(list(rays) + list(lin) + [neg(l) for l in lin], rank)

    @property
    def generators(self) -> list[tuple]:
        return list(self.rays) + list(self.lineality) + [neg(l) for l in self.lineality]

    @property
    def dim(self) -> int:
        return self.rank - len(self.equations)

    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, v: Sequence) -> bool:
        return all(dot(a, v) >= 0 for a in self.inequalities) and \
            all(dot(e, v) == 0 for e in self.equations)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.rank == other.rank and self.contains_cone(other) and other.contains_cone(self)

    def __hash__(self):
        return hash((self.rank, self.dim))

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"

    def faces(self) -> list["Cone"]:
        """All nonempty faces, including the cone itself."""
        out: list[Cone] = []
        seen = set()
        ineqs = self.inequalities
        for k in range(len(ineqs) + 1):
            for sub_ in combinations(range(len(ineqs)), k):
                rs = frozenset(r for r in self.rays if all(_idot(ineqs[i], r) == 0 for i in sub_))
                if rs in seen:
                    continue
                seen.add(rs)
                lin = list(self.lineality) + [neg(l) for l in self.lineality]
                out.append(Cone(list(rs) + lin, self.rank))
        return out

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_inequalities(
            list(self.inequalities) + list(other.inequalities),
            list(self.equations) + list(other.equations), self.rank)


def dual_cone(c: Cone) -> Cone:
    """{u : <u, v> >= 0 for all v in c}."""
    return Cone(list(c.inequalities) + list(c.equations) + [neg(e) for e in c.equations], c.rank)


def cone_contains_cone(outer: Cone, inner: Cone) -> bool:
    return outer.contains_cone(inner)


class Polyhedron:
    """conv(vertices) + cone(rays) + span(lineality) in Q^rank.

    Constructed from any finite V-description; redundant input points are
    removed.  The H-description uses pairs ``(a0, a)`` meaning
    ``a0 + a.x >= 0`` (``inequalities``) or ``= 0`` (``equations``).
    """

    __slots__ = ("rank", "vertices", "rays", "lineality", "inequalities", "equations")

    def __init__(self, vertices: Iterable[Sequence], rays: Iterable[Sequence] = (),
                 rank: int | None = None):
        verts = [vec(v) for v in vertices]
        rs = [tuple(int(x) for x in primitive(vec(r))) for r in rays if not is_zero(vec(r))]
        if not verts:
            raise GeometryError("a polyhedron needs at least one vertex")
        if rank is None:
            rank = len(verts[0])
        gens = [primitive((Fraction(1),) + v) for v in verts] + [(0,) + r for r in rs]
        self._from_homogenized(Cone(gens, rank + 1), rank)

    def _from_homogenized(self, cone: Cone, rank: int):
        self.rank = rank
        ineqs, eqs = [], []
        for a in cone.inequalities:
            if all(x == 0 for x in a[1:]):
                continue  # x0 >= 0
            ineqs.append((Fraction(a[0]), tuple(Fraction(x) for x in a[1:])))
        for e in cone.equations:
            eqs.append((Fraction(e[0]), tuple(Fraction(x) for x in e[1:])))
        self.inequalities = tuple(ineqs)
        self.equations = tuple(eqs)
        verts, rays = [], []
        for r in cone.rays:
            if r[0] > 0:
                verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
            else:
                rays.append(tuple(r[1:]))
        self.vertices = tuple(sorted(verts))
        self.rays = tuple(sorted(rays))
        self.lineality = tuple(sorted(sign_normalized(l[1:]) for l in cone.lineality))

    @classmethod
    def from_inequalities(cls, inequalities, equations=(), rank: int | None = None
                          ) -> "Polyhedron | None":
        """Polyhedron {a0 + a.x >= 0, b0 + b.x = 0}; None when empty."""
        ineqs = [(as_rat(a0), vec(a)) for a0, a in inequalities]
        eqs = [(as_rat(b0), vec(b)) for b0, b in equations]
        if rank is None:
            rank = len((ineqs + eqs)[0][1])
        h = [primitive((a0,) + a) for a0, a in ineqs]
        h.append(tuple([1] + [0] * rank))
        he = [primitive((b0,) + b) for b0, b in eqs]
        rays, lin = double_description(h + he + [neg(e) for e in he], rank + 1)
        if not any(r[0] > 0 for r in rays):
            return None
        p = cls.__new__(cls)
        cone = Cone(list(rays) + list(lin) + [neg(l) for l in lin], rank + 1)
        p._from_homogenized(cone, rank)
        return p

    # -- queries -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.rank - rank([e[1] for e in self.equations])

    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def is_pointed(self) -> bool:
        return not self.lineality

    def ray_generators(self) -> list[tuple]:
        return list(self.rays) + list(self.lineality) + [neg(l) for l in self.lineality]

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        return all(a0 + dot(a, x) >= 0 for a0, a in self.inequalities) and \
            all(b0 + dot(b, x) == 0 for b0, b in self.equations)

    def _contains_direction(self, r) -> bool:
        return all(dot(a, r) >= 0 for _, a in self.inequalities) and \
            all(dot(b, r) == 0 for _, b in self.equations)

    def contains_polyhedron(self, other: "Polyhedron") -> bool:
        return all(self.contains(v) for v in other.vertices) and \
            all(self._contains_direction(r) for r in other.ray_generators())

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.rank == other.rank and self.contains_polyhedron(other) and \
            other.contains_polyhedron(self)

    def __hash__(self):
        return hash((self.rank, len(self.vertices), len(self.rays)))

    def __repr__(self):
        from .linalg import rat_str
        vs = [[rat_str(x) for x in v] for v in self.vertices]
        return f"Polyhedron(vertices={vs}, rays={[list(r) for r in self.ray_generators()]})"

    def tail(self) -> Cone:
        return Cone(self.ray_generators(), self.rank)

    def translate(self, v: Sequence) -> "Polyhedron":
        v = vec(v)
        return Polyhedron([add(p, v) for p in self.vertices], self.ray_generators(), self.rank)

    def intersect(self, other: "Polyhedron") -> "Polyhedron | None":
        return Polyhedron.from_inequalities(
            list(self.inequalities) + list(other.inequalities),
            list(self.equations) + list(other.equations), self.rank)

    def face(self, tight: Iterable[int]) -> "Polyhedron | None":
        """Face where the given inequalities (by index) hold with equality."""
        tight = list(tight)
        eqs = list(self.equations) + [self.inequalities[i] for i in tight]
        ineqs = [a for i, a in enumerate(self.inequalities) if i not in tight]
        return Polyhedron.from_inequalities(ineqs, eqs, self.rank)

    def tight_set(self, other: "Polyhedron") -> list[int]:
        """Indices of inequalities tight on all of ``other`` (assumed contained)."""
        out = []
        for i, (a0, a) in enumerate(self.inequalities):
            if all(a0 + dot(a, v) == 0 for v in other.vertices) and \
                    all(dot(a, r) == 0 for r in other.ray_generators()):
                out.append(i)
        return out

    def is_face(self, f: "Polyhedron | None") -> bool:
        """True if ``f`` (None = empty set) is a face of this polyhedron."""
        if f is None:
            return True
        if not self.contains_polyhedron(f):
            return False
        smallest = self.face(self.tight_set(f))
        return smallest is not None and smallest == f

    def facets(self) -> list["Polyhedron"]:
        out = []
        for i in range(len(self.inequalities)):
            f = self.face([i])
            if f is not None and f.dim == self.dim - 1:
                out.append(f)
        return out

    def faces(self) -> list["Polyhedron"]:
        """All nonempty faces including the polyhedron itself."""
        out: list[Polyhedron] = []
        n = len(self.inequalities)
        seen = []
        for k in range(n + 1):
            for sub_ in combinations(range(n), k):
                f = self.face(sub_)
                if f is None or any(f == g for g in seen):
                    continue
                seen.append(f)
                out.append(f)
        return out


def tail_cone(p: Polyhedron) -> Cone:
    """Recession cone of a polyhedron."""
    return p.tail()


def minkowski_sum(ps: Sequence[Polyhedron]) -> Polyhedron:
    if not ps:
        raise GeometryError("Minkowski sum of an empty list")
    r = ps[0].rank
    if any(p.rank != r for p in ps):
        raise GeometryError("rank mismatch in Minkowski sum")
    verts = [tuple(Fraction(0) for _ in range(r))]
    rays: list[tuple] = []
    for p in ps:
        verts = [add(a, b) for a in verts for b in p.vertices]
        rays.extend(p.ray_generators())
        # prune redundant points between steps
        verts = list(Polyhedron(verts, rays, r).vertices)
    return Polyhedron(verts, rays, r)


def cone_as_polyhedron(c: Cone) -> Polyhedron:
    return Polyhedron([(0,) * c.rank], c.generators, c.rank)


def _lattice_shift_in_line(v, line):
    # integral point of v + Q*line, line primitive
    k = next(i for i, x in enumerate(line) if x != 0)
    lk = line[k]
    start = ceil(v[k]) if lk > 0 else floor(v[k])
    for m in range(abs(lk)):
        target = start + (m if lk > 0 else -m)
        lam = (Fraction(target) - v[k]) / lk
        w = tuple(x + lam * y for x, y in zip(v, line))
        if is_integral(w):
            return w
    return None


def is_lattice_translate(p: Polyhedron, c: Cone) -> tuple | None:
    """A lattice vector v with p = v + c, or None."""
    if p.rank != c.rank:
        raise GeometryError("rank mismatch")
    if not (p.tail() == c):
        return None
    lin = c.lineality
    if len(lin) == 0:
        if len(p.vertices) != 1:
            return None
        v = p.vertices[0]
        return tuple(int(x) for x in v) if is_integral(v) else None
    if len(lin) == c.rank:
        return tuple(0 for _ in range(c.rank))
    if len(p.vertices) != 1:
        return None
    if len(lin) == 1:
        w = _lattice_shift_in_line(p.vertices[0], lin[0])
        return None if w is None else tuple(int(x) for x in w)
    raise NotImplementedError("lattice translates with lineality of dimension >= 2")


def lattice_points(p: Polyhedron) -> list[tuple]:
    """All integer points of a bounded polyhedron, lexicographically sorted."""
    if not p.is_bounded():
        raise GeometryError("lattice_points needs a bounded polyhedron")
    lo = [ceil(min(v[i] for v in p.vertices)) for i in range(p.rank)]
    hi = [floor(max(v[i] for v in p.vertices)) for i in range(p.rank)]
    A, b = [], []
    for a0, a in p.inequalities:
        den = lcm(a0.denominator, *(x.denominator for x in a))
        A.append([-int(x * den) for x in a])
        b.append(int(a0 * den))
    for b0, bb in p.equations:
        den = lcm(b0.denominator, *(x.denominator for x in bb))
        row = [int(x * den) for x in bb]
        A.append(row)
        b.append(-int(b0 * den))
        A.append([-x for x in row])
        b.append(int(b0 * den))
    pts = _kernels.box_points(np.array(lo, dtype=np.int64), np.array(hi, dtype=np.int64),
                              np.array(A, dtype=np.int64).reshape(-1, p.rank),
                              np.array(b, dtype=np.int64))
    return sorted(tuple(int(x) for x in row) for row in pts)


class PolyhedralComplex:
    """Maximal cells of a polyhedral complex in Q^rank."""

    def __init__(self, cells: Sequence[Polyhedron], rank: int):
        self.cells = tuple(cells)
        self.rank = rank
        if any(c.rank != rank for c in self.cells):
            raise GeometryError("cell rank mismatch")

    def __repr__(self):
        return f"PolyhedralComplex({list(self.cells)})"

    def vertices(self) -> list[tuple]:
        out = []
        for c in self.cells:
            for v in c.vertices:
                if v not in out:
                    out.append(v)
        return sorted(out)

    def all_polyhedra(self) -> list[Polyhedron]:
        """Cells and all their faces, without duplicates."""
        out: list[Polyhedron] = []
        for c in self.cells:
            for f in c.faces():
                if not any(f == g for g in out):
                    out.append(f)
        return out

    def same_cells(self, other: "PolyhedralComplex") -> bool:
        if len(self.cells) != len(other.cells):
            return False
        return all(any(a == b for b in other.cells) for a in self.cells)

    def compatibility_failures(self) -> list[tuple[int, int]]:
        """Cell pairs whose intersection is not a face of both."""
        bad = []
        for i, j in combinations(range(len(self.cells)), 2):
            a, b = self.cells[i], self.cells[j]
            f = a.intersect(b)
            if not (a.is_face(f) and b.is_face(f)):
                bad.append((i, j))
        return bad

    def completeness_failures(self) -> list[str]:
        """Reasons the union of cells is not all of Q^rank (empty list = complete).

        Assumes face compatibility.  A face-compatible complex of full-dimensional
        cells covers Q^rank iff every facet of every cell is a facet of exactly
        one other cell.
        """
        out = []
        for i, c in enumerate(self.cells):
            if c.dim != self.rank:
                out.append(f"cell {i} is not full-dimensional")
        if out:
            return out
        for i, c in enumerate(self.cells):
            for f in c.facets():
                partners = [j for j, d in enumerate(self.cells)
                            if j != i and any(f == g for g in d.facets())]
                if len(partners) != 1:
                    out.append(f"facet {f!r} of cell {i} is shared by {len(partners)} other cells")
        return out

    def cell_containing(self, x: Sequence) -> int | None:
        for i, c in enumerate(self.cells):
            if c.contains(x):
                return i
        return None
