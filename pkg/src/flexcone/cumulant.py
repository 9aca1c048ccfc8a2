"""Cumulant coordinates on Segre-Veronese ambient spaces.

Index tuples are flat tuples ``c`` of length ``sum(degs)``; slot ``p`` belongs
to factor ``spec.factor[p]`` and carries a value in ``0..dims[factor]``.
Coordinates of the affine chart are the variables ``x(c)``, with ``x(0) = 1``.

The secant parameterization works on the diagonal (Veronese) coordinates
directly: for a point ``(t, v, w)`` the coordinate ``x(c)`` is
``t * prod_p v[c_p] + (1 - t) * prod_p w[c_p]`` with ``v[0] = w[0] = 1``.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import _kernels
from .geom import Polyhedron, lattice_points
from .linalg import affine_dimension, rank
from .poly import Poly

#: Sign convention for z(c); chosen so that the secant pullback formula holds
#: verbatim (the trivial partition then enters with a plus sign).
Z_SIGN_CONVENTION = ("z(c) = sum over thick interval partitions (b_0<...<b_k) of c "
                     "of (-1)^(k-1) * prod_m y(c restricted to [b_(m-1), b_m))")


class ChartError(ValueError):
    """Raised when a parameterization leaves its affine chart."""


@dataclass(frozen=True)
class SVSpec:
    dims: tuple
    degs: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "degs", tuple(int(s) for s in self.degs))
        if not self.dims or len(self.dims) != len(self.degs):
            raise ValueError("dims and degs must be nonempty lists of equal length")
        if min(self.dims) < 1 or min(self.degs) < 1:
            raise ValueError("all dims and degs must be >= 1")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def factor(self) -> tuple:
        return tuple(i for i, s in enumerate(self.degs) for _ in range(s))

    @property
    def length(self) -> int:
        return sum(self.degs)

    @property
    def dim_x(self) -> int:
        return sum(self.dims)

    @property
    def chi(self) -> list[tuple[int, int]]:
        """Basis (i, j), 1 <= j <= d_i, of the character lattice M."""
        return [(i, j) for i, d in enumerate(self.dims) for j in range(1, d + 1)]

    def check(self, c: Sequence[int]) -> tuple:
        c = tuple(c)
        if len(c) != self.length:
            raise ValueError(f"tuple {c} has wrong length for {self}")
        for p, e in enumerate(c):
            if not 0 <= e <= self.dims[self.factor[p]]:
                raise ValueError(f"entry {e} out of range in {c}")
        return c

    def content(self, c: Sequence[int]) -> tuple:
        """Lattice point of M counting, per factor, how often each index occurs."""
        counts = dict.fromkeys(self.chi, 0)
        for p, e in enumerate(c):
            if e:
                counts[(self.factor[p], e)] += 1
        return tuple(counts[k] for k in self.chi)

    def representative(self, u: Sequence[int]) -> tuple:
        """Canonical index tuple with content ``u``: nonzero entries ascending, zeros last."""
        u = dict(zip(self.chi, u))
        out = []
        for i, (d, s) in enumerate(zip(self.dims, self.degs)):
            entries = [j for j in range(1, d + 1) for _ in range(u[(i, j)])]
            if len(entries) > s:
                raise ValueError("content exceeds the degree of a factor")
            out.extend(entries + [0] * (s - len(entries)))
        return tuple(out)


def index_set(spec: SVSpec) -> list[tuple]:
    """All nonzero index tuples, ordered by degree then lexicographically."""
    ranges = [range(spec.dims[f] + 1) for f in spec.factor]
    out = [c for c in product(*ranges) if any(c)]
    return sorted(out, key=lambda c: (degree(c), c))


def symmetric_index_set(spec: SVSpec) -> list[tuple]:
    """One representative per Veronese-symmetric coordinate."""
    seen = {}
    for c in index_set(spec):
        seen.setdefault(spec.content(c), spec.representative(spec.content(c)))
    return sorted(seen.values(), key=lambda c: (degree(c), c))


def degree(c: Sequence[int]) -> int:
    return sum(1 for e in c if e)


def leq(c1: Sequence[int], c2: Sequence[int]) -> bool:
    """c1 <= c2 iff c1 arises from c2 by zeroing some entries."""
    return len(c1) == len(c2) and all(a == 0 or a == b for a, b in zip(c1, c2))


def restrict(c: Sequence[int], positions) -> tuple:
    keep = set(positions)
    return tuple(e if p in keep else 0 for p, e in enumerate(c))


def _support(c) -> list[int]:
    return [p for p, e in enumerate(c) if e]


def interval_partitions(c: Sequence[int]) -> list[tuple]:
    """Thick interval partitions of ``c`` as boundary sequences ``(0, ..., len(c))``.

    Each half-open interval ``[b_(m-1), b_m)`` holds at least two nonzero
    entries.  Cuts are placed immediately before a nonzero entry, so
    partitions differing only in where a run of zeros is split are not
    counted twice.
    """
    c = tuple(c)
    nz = _support(c)
    if len(nz) < 2:
        raise ValueError("interval partitions need degree >= 2")
    gaps = list(range(1, len(nz)))  # cut before nz[g]
    out = []
    for k in range(len(gaps) + 1):
        for cuts in combinations(gaps, k):
            bounds = [0] + list(cuts) + [len(nz)]
            if all(bounds[m + 1] - bounds[m] >= 2 for m in range(len(bounds) - 1)):
                out.append((0,) + tuple(nz[g] for g in cuts) + (len(c),))
    return out


def xvar(c) -> Poly:
    c = tuple(c)
    if not any(c):
        return Poly.const(1)
    return Poly.var("x", *c)


@lru_cache(maxsize=None)
def y_poly(c: tuple) -> Poly:
    c = tuple(c)
    d = degree(c)
    if d == 0:
        raise ValueError("y is undefined for the zero tuple")
    if d == 1:
        return xvar(c)
    supp = _support(c)
    total = Poly()
    for k in range(d + 1):
        for keep in combinations(supp, k):
            term = xvar(restrict(c, keep))
            for p in supp:
                if p not in keep:
                    term = term * xvar(restrict(c, [p]))
            total = total + term * ((-1) ** (d - k))
    return total


@lru_cache(maxsize=None)
def z_poly(c: tuple) -> Poly:
    c = tuple(c)
    if degree(c) == 1:
        return y_poly(c)
    total = Poly()
    for bounds in interval_partitions(c):
        k = len(bounds) - 1
        term = Poly.const((-1) ** (k - 1))
        for m in range(1, k + 1):
            term = term * y_poly(restrict(c, range(bounds[m - 1], bounds[m])))
        total = total + term
    return total


def z_from_x(spec: SVSpec) -> dict:
    """c -> z(c) as a polynomial in the x-variables."""
    return {c: z_poly(c) for c in index_set(spec)}


def _leading(c) -> tuple[Fraction, Poly]:
    z = z_poly(c)
    x = xvar(c)
    (mono,), = [tuple(x.terms)]
    coef = z.terms[mono]
    return coef, z - x * coef


def x_from_z(spec: SVSpec) -> dict:
    """c -> x(c) as a polynomial in the z-variables ``("z", c)``."""
    out: dict = {}
    for c in index_set(spec):
        coef, rest = _leading(c)
        sub = {v: out[v[1]] for v in rest.variables()}
        out[c] = (Poly.var("z", *c) - rest.subs(sub)) / coef
    return out


def z_values(spec: SVSpec, xvals: dict) -> dict:
    """Numeric z-coordinates from numeric x-coordinates (keys: index tuples)."""
    vals = {("x", c): Fraction(v) for c, v in xvals.items()}
    return {c: z_poly(c).evaluate(vals) for c in index_set(spec)}


def x_values(spec: SVSpec, zvals: dict) -> dict:
    """Numeric x-coordinates from numeric z-coordinates, solving the triangular system."""
    xs: dict = {}
    for c in index_set(spec):
        coef, rest = _leading(c)
        xs[("x", c)] = (Fraction(zvals[c]) - rest.evaluate(xs)) / coef
    return {k[1]: v for k, v in xs.items()}


# ---------------------------------------------------------------------------
# parameterizations

@dataclass(frozen=True)
class SecPoint:
    """Parameters (t, v, w); v[i], w[i] list coordinates 1..d_i of factor i."""
    t: object
    v: tuple
    w: tuple


def _coord(vs, i, j):
    return 1 if j == 0 else vs[i][j - 1]


def _prod(factors):
    out = 1
    for f in factors:
        out = f * out
    return out


def symbolic_point(spec: SVSpec) -> SecPoint:
    v = tuple(tuple(Poly.var("v", i, j) for j in range(1, d + 1)) for i, d in enumerate(spec.dims))
    w = tuple(tuple(Poly.var("w", i, j) for j in range(1, d + 1)) for i, d in enumerate(spec.dims))
    return SecPoint(Poly.var("t"), v, w)


def random_point(spec: SVSpec, rng: random.Random, avoid_half: bool = True) -> SecPoint:
    """Random rational parameters with t not in {0, 1} and v, w nonzero and distinct entrywise."""
    def r():
        x = Fraction(0)
        while x == 0:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        return x

    t = r()
    while t == 1 or (avoid_half and t == Fraction(1, 2)):
        t = r()
    v = tuple(tuple(r() for _ in range(d)) for d in spec.dims)
    w = tuple(tuple(r() for _ in range(d)) for d in spec.dims)
    w = tuple(tuple(b + 1 if a == b else b for a, b in zip(vi, wi)) for vi, wi in zip(v, w))
    return SecPoint(t, v, w)


def psi(spec: SVSpec, vs, c) -> object:
    return _prod(_coord(vs, spec.factor[p], e) for p, e in enumerate(c))


def eval_sec(spec: SVSpec, p: SecPoint, indices=None) -> dict:
    """x-coordinates of t*psi(v) + (1-t)*psi(w) in the chart x(0) = 1."""
    zero = (0,) * spec.length
    if (p.t * psi(spec, p.v, zero) + (1 - p.t) * psi(spec, p.w, zero)) != 1:
        raise ChartError("combination leaves the chart")
    idx = index_set(spec) if indices is None else indices
    return {c: p.t * psi(spec, p.v, c) + (1 - p.t) * psi(spec, p.w, c) for c in idx}


def sec_pullback_formula(spec: SVSpec, c, p: SecPoint):
    """Closed form of z(c) composed with the secant parameterization."""
    c = spec.check(c)
    nz = _support(c)
    if len(nz) == 1:
        q = nz[0]
        i = spec.factor[q]
        return p.t * _coord(p.v, i, c[q]) + (1 - p.t) * _coord(p.w, i, c[q])
    out = p.t * (1 - p.t) * (1 - 2 * p.t) ** (len(nz) - 2)
    for q in nz:
        i = spec.factor[q]
        out = out * (_coord(p.v, i, c[q]) - _coord(p.w, i, c[q]))
    return out


def rep_map(p: SecPoint) -> SecPoint:
    """(t, v, w) -> (t(1-t)/(1-2t)^2, tv + (1-t)w, (1-2t)(v-w))."""
    t = p.t
    if isinstance(t, Poly):
        raise TypeError("rep_map needs a numeric t")
    if t == Fraction(1, 2):
        raise ChartError("rep is undefined at t = 1/2")
    one_minus = 1 - 2 * t
    t_new = t * (1 - t) / one_minus ** 2
    v = tuple(tuple(t * a + (1 - t) * b for a, b in zip(vi, wi)) for vi, wi in zip(p.v, p.w))
    w = tuple(tuple(one_minus * (a - b) for a, b in zip(vi, wi)) for vi, wi in zip(p.v, p.w))
    return SecPoint(t_new, v, w)


def monomial_map(spec: SVSpec, p: SecPoint, indices=None) -> dict:
    """z-coordinates: v at the slot for degree 1, t * prod w for higher degree."""
    idx = index_set(spec) if indices is None else indices
    out = {}
    for c in idx:
        nz = _support(c)
        if len(nz) == 1:
            out[c] = _coord(p.v, spec.factor[nz[0]], c[nz[0]])
        else:
            out[c] = p.t * _prod(_coord(p.w, spec.factor[q], c[q]) for q in nz)
    return out


def tan_pullback_formula(spec: SVSpec, c, v, w):
    """Limit of z(c)(sec(1/eps, v, v + eps*w)) as eps -> 0."""
    c = spec.check(c)
    nz = _support(c)
    if len(nz) == 1:
        q = nz[0]
        i = spec.factor[q]
        return _coord(v, i, c[q]) - _coord(w, i, c[q])
    out = Fraction(-1, 4)
    for q in nz:
        out = out * (2 * _coord(w, spec.factor[q], c[q]))
    return out


def tangential_limit_exact(spec: SVSpec, c, v, w):
    """Exact limit of z(c) along sec(1/eps, v, v + eps*w), via Laurent expansion in eps.

    Independent of the closed form: the z-polynomial is composed with the
    secant map symbolically, the result is checked to have no negative
    powers of eps, and eps is set to 0.
    """
    eps = Poly.var("eps")
    t = eps ** -1
    shifted = tuple(tuple(Poly.lift(a) + eps * b for a, b in zip(vi, wi)) for vi, wi in zip(v, w))
    p = SecPoint(t, tuple(tuple(Poly.lift(a) for a in vi) for vi in v), shifted)
    c = spec.check(c)
    z = z_poly(c)
    xs = eval_sec(spec, p, [b for b in index_set(spec) if leq(b, c)])
    val = z.subs({("x", b): xs[b] for b in xs})
    if not val.is_polynomial():
        raise ChartError("limit does not exist (negative powers of eps remain)")
    return val.subs({("eps", ()): 0})


def tangent_point(spec: SVSpec, v, w, indices=None) -> dict:
    """x-coordinates of psi(v) + d psi_v (w): the tangential variety in the chart."""
    idx = index_set(spec) if indices is None else indices
    out = {}
    for c in idx:
        base = psi(spec, v, c)
        deriv = 0
        for q, e in enumerate(c):
            if e == 0:
                continue
            i = spec.factor[q]
            term = w[i][e - 1]
            for r, f in enumerate(c):
                if r != q:
                    term = term * _coord(v, spec.factor[r], f)
            deriv = deriv + term
        out[c] = base + deriv
    return out


# ---------------------------------------------------------------------------
# polytope and classification

def secant_polytope(spec: SVSpec) -> Polyhedron | None:
    """{u >= 0, sum_j u_ij <= s_i, sum u >= 2} in M_Q; None when empty."""
    chi = spec.chi
    r = len(chi)
    ineqs = []
    for k in range(r):
        ineqs.append((0, tuple(1 if q == k else 0 for q in range(r))))
    for i, s in enumerate(spec.degs):
        ineqs.append((s, tuple(-1 if chi[q][0] == i else 0 for q in range(r))))
    ineqs.append((-2, tuple(1 for _ in range(r))))
    return Polyhedron.from_inequalities(ineqs, rank=r)


def point_label(spec: SVSpec, u: Sequence[int]) -> str:
    return "z(" + ",".join(str(e) for e in spec.representative(u)) + ")"


@dataclass(frozen=True)
class Binomial:
    """z^plus - z^minus over the indexing points."""
    plus: tuple
    minus: tuple

    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def key(self) -> frozenset:
        return frozenset([self.plus, self.minus])

    def render(self, labels: Sequence[str]) -> str:
        def mono(e):
            parts = []
            for lab, k in zip(labels, e):
                if k:
                    parts.append(lab + (f"^{k}" if k > 1 else ""))
            return "*".join(parts) if parts else "1"
        return f"{mono(self.plus)} - {mono(self.minus)}"


def _orient(a: tuple, b: tuple) -> Binomial:
    ka = (sum(a), sum(1 for x in a if x), a)
    kb = (sum(b), sum(1 for x in b if x), b)
    return Binomial(a, b) if ka >= kb else Binomial(b, a)


def _fiber_connected(a, b, moves, weight) -> bool:
    if a == b:
        return True
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for g in moves:
            for src, dst in ((g.plus, g.minus), (g.minus, g.plus)):
                if all(xi >= si for xi, si in zip(x, src)):
                    y = tuple(xi - si + di for xi, si, di in zip(x, src, dst))
                    if y == b:
                        return True
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
    return False


def toric_ideal_upto(points: Sequence[Sequence[int]], maxdeg: int = 3) -> list[Binomial]:
    """Minimal binomial relations of degree <= maxdeg among monomials z^u, u in points.

    A bounded brute force: exponent vectors up to ``maxdeg`` are grouped by
    their image under the exponent matrix; a pair with disjoint supports is a
    relation, kept only if not already implied by lower ones (checked by
    connectivity of the fiber under the kept moves).
    """
    pts = np.array([list(p) for p in points], dtype=np.int64)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("need a nonempty list of points")
    weight = pts.sum(axis=1)
    if np.any(weight <= 0):
        raise ValueError("points must have positive coordinate sum (positive grading)")
    k = len(pts)
    mons = _kernels.exponent_vectors(k, maxdeg)
    images = mons @ pts
    groups: dict = defaultdict(list)
    for row, img in zip(mons, images):
        groups[img.tobytes()].append(tuple(int(x) for x in row))
    cands = []
    for members in groups.values():
        for a, b in combinations(members, 2):
            if any(x and y for x, y in zip(a, b)):
                continue
            cands.append(_orient(a, b))
    cands.sort(key=lambda g: (g.degree(), sum(g.plus) + sum(g.minus), g.plus, g.minus))
    kept: list[Binomial] = []
    for g in cands:
        if not _fiber_connected(g.plus, g.minus, kept, weight):
            kept.append(g)
    return kept


def minimal_generators(points: Sequence[Sequence[int]]) -> list[tuple]:
    """Points not expressible as nonnegative integer sums of the other points."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if any(sum(p) <= 0 for p in pts):
        raise ValueError("points must have positive coordinate sum")

    def representable(target, others):
        # subtract generators in nonincreasing index order; coordinate sums
        # drop strictly, so the search terminates
        @lru_cache(maxsize=None)
        def rec(tgt, start):
            if not any(tgt):
                return True
            for idx in range(start, len(others)):
                rest = tuple(a - b for a, b in zip(tgt, others[idx]))
                if min(rest) >= 0 and rec(rest, idx):
                    return True
            return False
        return rec(tuple(target), 0)

    out = []
    for p in pts:
        others = tuple(q for q in pts if q != p)
        if not representable(p, others):
            out.append(p)
    return out


@dataclass
class SecantReport:
    spec: SVSpec
    dimX: int
    dimP: int
    dimSec: int
    dimTan: int
    degenerate: bool
    latticePointsOfP: list
    verticesOfP: list
    secantMonoidGenerators: list = field(default_factory=list)
    tangentialMonoidGenerators: list = field(default_factory=list)
    signConvention: str = Z_SIGN_CONVENTION


def classify(spec: SVSpec) -> SecantReport:
    P = secant_polytope(spec)
    dim_x = spec.dim_x
    pts = lattice_points(P) if P is not None else []
    if not pts:
        return SecantReport(spec, dim_x, -1, dim_x, dim_x, True, [], [])
    dim_p = affine_dimension(pts)
    dim_sec = dim_x + dim_p + 1
    dim_tan = dim_x + rank(pts)
    degenerate = all(sum(u) == 2 for u in pts)
    return SecantReport(
        spec, dim_x, dim_p, dim_sec, dim_tan, degenerate, pts,
        [tuple(v) for v in P.vertices],
        minimal_generators([(1,) + tuple(u) for u in pts]),
        minimal_generators(pts))


def chart_relations(spec: SVSpec, tangential: bool = False, maxdeg: int = 3):
    """Binomial equations of the toric factor of the secant (or tangential) chart.

    Returns ``(labels, binomials)``; labels name the z-coordinate of each
    lattice point of P.
    """
    P = secant_polytope(spec)
    pts = lattice_points(P) if P is not None else []
    if not pts:
        return [], []
    pts = sorted(pts, key=spec.representative)
    labels = [point_label(spec, u) for u in pts]
    gens = pts if tangential else [(1,) + tuple(u) for u in pts]
    return labels, toric_ideal_upto(gens, maxdeg)


# ---------------------------------------------------------------------------
# Jacobian-rank dimension oracle

def _jacobian_rank(coords: dict, variables: list, at: dict) -> int:
    rows = [[poly.diff(v).evaluate(at) for v in variables] for poly in coords.values()]
    return rank(rows)


def sec_jacobian_rank(spec: SVSpec, rng: random.Random, trials: int = 3) -> int:
    """Generic rank of the secant parameterization: the maximum over random points."""
    p = symbolic_point(spec)
    idx = symmetric_index_set(spec)
    coords = {c: Poly.lift(x) for c, x in eval_sec(spec, p, idx).items()}
    variables = [("t", ())] + [("v", (i, j)) for i, j in spec.chi] + [("w", (i, j)) for i, j in spec.chi]
    best = 0
    for _ in range(trials):
        q = random_point(spec, rng)
        at = {("t", ()): q.t}
        for (i, j) in spec.chi:
            at[("v", (i, j))] = q.v[i][j - 1]
            at[("w", (i, j))] = q.w[i][j - 1]
        best = max(best, _jacobian_rank(coords, variables, at))
    return best


def tan_jacobian_rank(spec: SVSpec, rng: random.Random, trials: int = 3) -> int:
    p = symbolic_point(spec)
    idx = symmetric_index_set(spec)
    coords = {c: Poly.lift(x) for c, x in tangent_point(spec, p.v, p.w, idx).items()}
    variables = [("v", (i, j)) for i, j in spec.chi] + [("w", (i, j)) for i, j in spec.chi]
    best = 0
    for _ in range(trials):
        q = random_point(spec, rng)
        at = {}
        for (i, j) in spec.chi:
            at[("v", (i, j))] = q.v[i][j - 1]
            at[("w", (i, j))] = q.w[i][j - 1]
        best = max(best, _jacobian_rank(coords, variables, at))
    return best
