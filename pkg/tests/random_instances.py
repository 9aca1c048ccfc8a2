"""Random f-divisors with support functions meeting the polar-chart preconditions.

The linear part is lin = min_k <u_k, .> over the vertices u_k of a lattice
polygon (two integers in rank 1), and the tail fan is its normal fan.  At most
two "generic" points carry h_P = min over pieces <u_k, .> + a_k (a_k <= 0) and
extra pieces with slopes inside conv(u_k); their cells are the regions where
each piece is minimal.  The remaining listed points are lattice translates
h_P(v) = lin(v - w) + b with b <= min_k <u_k, w>.  All degree values are
empty.  These choices make every h_P strongly concave with h*_P >= 0 on the
vertices of Box_h, and at most two slices hold non-translate polyhedra.
"""

from __future__ import annotations

import random
from fractions import Fraction

from flexcone.fdiv import FDivisor, SupportFunction
from flexcone.geom import Polyhedron, PolyhedralComplex
from flexcone.linalg import dot


def _rat(rng, lo=-3, hi=3, den=4):
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def _polygon(rng, rank):
    if rank == 1:
        a = rng.randint(-3, 2)
        return [(a,), (a + rng.randint(1, 3),)]
    while True:
        pts = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(3)]
        (x0, y0), (x1, y1), (x2, y2) = pts
        if (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0) != 0:
            return pts


def _regions(pieces, rank):
    """Full-dimensional regions where each piece is the minimum."""
    cells, kept = [], []
    for k, (u, a) in enumerate(pieces):
        ineqs = []
        for j, (w, b) in enumerate(pieces):
            if j != k:
                # piece_j - piece_k >= 0
                ineqs.append((b - a, tuple(Fraction(x) - Fraction(y) for x, y in zip(w, u))))
        region = Polyhedron.from_inequalities(ineqs, rank=rank)
        if region is not None and region.dim == rank:
            cells.append(region)
            kept.append((tuple(Fraction(x) for x in u), Fraction(a)))
    return cells, kept


def random_instance(rng: random.Random, rank: int | None = None, n_generic: int | None = None,
                    n_translates: int | None = None):
    rank = rank or rng.choice([1, 2])
    U = _polygon(rng, rank)
    fan_pieces = [(u, Fraction(0)) for u in U]
    fan_cells, _ = _regions(fan_pieces, rank)
    fan = [c.tail() for c in fan_cells]
    lin = {}
    for k, sigma in enumerate(fan):
        # the vertex of U that is minimal on the interior of sigma
        inner = tuple(sum(Fraction(r[i]) for r in sigma.rays) for i in range(rank))
        lin[k] = min(U, key=lambda u: dot(u, inner))
    n_generic = rng.randint(0, 2) if n_generic is None else n_generic
    n_translates = rng.randint(0, 4 - n_generic) if n_translates is None else n_translates
    points = rng.sample(range(-5, 6), n_generic + n_translates)
    points = [Fraction(p) for p in points]
    slices, pieces = {}, {}
    for p in points[:n_generic]:
        cand = [(u, -abs(_rat(rng, 0, 2))) for u in U]
        for _ in range(rng.randint(0, 2)):
            wts = [Fraction(rng.randint(1, 4)) for _ in U]
            tot = sum(wts)
            s = tuple(sum(w * Fraction(u[i]) for w, u in zip(wts, U)) / tot for i in range(rank))
            if all(s != tuple(Fraction(x) for x in c[0]) for c in cand):
                cand.append((s, _rat(rng, -2, 2)))
        cells, kept = _regions(cand, rank)
        slices[p] = PolyhedralComplex(cells, rank)
        pieces[p] = kept
    for p in points[n_generic:]:
        w = tuple(rng.randint(-2, 2) for _ in range(rank))
        bound = min(dot(u, w) for u in U)
        b = bound - Fraction(rng.randint(0, 4), rng.randint(1, 2))
        cells, kept = [], []
        for k, sigma in enumerate(fan):
            u = lin[k]
            cells.append(Polyhedron([w], sigma.generators, rank))
            kept.append((tuple(Fraction(x) for x in u), -dot(u, w) + b))
        slices[p] = PolyhedralComplex(cells, rank)
        pieces[p] = kept
    S = FDivisor(rank, fan, slices, {k: None for k in range(len(fan))})
    h = SupportFunction({k: tuple(Fraction(x) for x in u) for k, u in lin.items()}, pieces)
    q = rng.choice(points) if points else Fraction(0)
    cell = rng.randrange(len(S.slice(q).cells))
    return S, h, q, cell



def random_nonzero(rng: random.Random) -> Fraction:
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if x:
            return x


def random_point_on_form(f, rng: random.Random) -> dict:
    """A point of V(f) with every coordinate nonzero.

    Each block A_l (l >= 2) is solved for one of its exponent-1 variables,
    so those points are smooth.
    """
    while True:
        x = {v: random_nonzero(rng) for v in f.variables()}
        for l in range(2, len(f.blocks)):
            v = next(v for v, e in f.blocks[l] if e == 1)
            a0, a1 = f.coefficients(l)
            rest = f.monomial(l).diff(v).evaluate(x)
            x[v] = -(a0 * f.monomial(0).evaluate(x) + a1 * f.monomial(1).evaluate(x)) / rest
        if all(x.values()):
            return x
