from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from flexcone.geom import (
    Cone, GeometryError, Polyhedron, PolyhedralComplex, dual_cone, is_lattice_translate,
    lattice_points, minkowski_sum,
)
from flexcone.linalg import affine_dimension, dot, nullspace, rank, rref, solve

F = Fraction


# -- linear algebra ----------------------------------------------------------

def test_rank_and_nullspace():
    m = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(m) == 2
    (k,) = nullspace(m, 3)
    assert all(dot(row, k) == 0 for row in m)


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    assert solve([[2, 0], [0, 4]], [1, 1]) == (F(1, 2), F(1, 4))


def test_rref_pivots():
    r, piv = rref([[0, 2], [1, 1]])
    assert piv == [0, 1] and r == [[1, 0], [0, 1]]


# -- cones -------------------------------------------------------------------

def test_quadrant_faces_and_dual():
    c = Cone([(1, 0), (0, 1)])
    assert c.rays == ((0, 1), (1, 0))
    assert len(c.faces()) == 4
    assert dual_cone(c) == c


def test_halfplane_has_lineality():
    c = Cone([(1, 0), (0, 1), (0, -1)])
    assert c.lineality == ((0, 1),)
    assert c.rays == ((1, 0),)
    assert c.contains((3, -7)) and not c.contains((-1, 0))


def test_cone_from_inequalities_roundtrip():
    c = Cone([(1, 0), (1, 2)])
    assert Cone.from_inequalities(c.inequalities, c.equations, rank=2) == c


small_vecs = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=40, deadline=None)
@given(st.lists(small_vecs, min_size=1, max_size=5))
def test_double_dual(gens):
    c = Cone(gens, 3)
    assert dual_cone(dual_cone(c)) == c
    assert all(c.contains(g) for g in gens)


# -- polyhedra ---------------------------------------------------------------

def test_square_lattice_points_and_h_rep():
    sq = Polyhedron([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
    assert len(sq.vertices) == 4
    assert len(sq.inequalities) == 4
    assert len(lattice_points(sq)) == 9


def test_from_inequalities_empty_is_none():
    assert Polyhedron.from_inequalities([(-1, (1,)), (0, (-1,))], rank=1) is None


def test_interval_rays_and_tail():
    p = Polyhedron([(F(1, 2),)], [(1,)])
    assert p.tail() == Cone([(1,)])
    assert not p.is_bounded()
    assert is_lattice_translate(p, Cone([(1,)])) is None
    assert is_lattice_translate(Polyhedron([(1,)], [(1,)]), Cone([(1,)])) == (1,)


def test_lattice_translate_with_lineality():
    half = Polyhedron([(F(1, 2), 0)], [(0, 1), (0, -1), (1, 0)])
    assert is_lattice_translate(half, Cone([(1, 0), (0, 1), (0, -1)])) is None
    whole = Polyhedron([(2, F(1, 3))], [(0, 1), (0, -1), (1, 0)])
    assert is_lattice_translate(whole, Cone([(1, 0), (0, 1), (0, -1)])) == (2, 0)


def test_lattice_points_unbounded_raises():
    with pytest.raises(GeometryError):
        lattice_points(Polyhedron([(0,)], [(1,)]))


def test_minkowski_sum_intervals():
    s = minkowski_sum([Polyhedron([(-1,), (1,)]), Polyhedron([(F(1, 2),)], [(1,)])])
    assert s == Polyhedron([(F(-1, 2),)], [(1,)])


def test_faces_of_triangle():
    t = Polyhedron([(0, 0), (1, 0), (0, 1)])
    faces = t.faces()
    assert sorted(f.dim for f in faces) == [0, 0, 0, 1, 1, 1, 2]
    assert all(t.is_face(f) for f in faces)


def test_complex_completeness():
    cx = PolyhedralComplex([Polyhedron([(-1,)], [(-1,)]), Polyhedron([(-1,), (1,)]),
                            Polyhedron([(1,)], [(1,)])], 1)
    assert cx.compatibility_failures() == [] and cx.completeness_failures() == []
    gap = PolyhedralComplex([Polyhedron([(0,)], [(-1,)]), Polyhedron([(1,)], [(1,)])], 1)
    assert gap.completeness_failures()


pts2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(pts2)
def test_hull_properties(points):
    p = Polyhedron(points)
    assert all(p.contains(x) for x in points)
    assert set(p.vertices) <= {tuple(F(c) for c in x) for x in points}
    assert p.dim == affine_dimension(points)
    # brute-force oracle for lattice points
    lo = [min(x[i] for x in points) for i in range(2)]
    hi = [max(x[i] for x in points) for i in range(2)]
    brute = sorted(x for x in product(range(lo[0], hi[0] + 1), range(lo[1], hi[1] + 1)) if p.contains(x))
    assert lattice_points(p) == brute


@settings(max_examples=40, deadline=None)
@given(pts2, pts2)
def test_minkowski_vertices(a, b):
    s = minkowski_sum([Polyhedron(a), Polyhedron(b)])
    sums = {tuple(F(x + y) for x, y in zip(u, v)) for u in a for v in b}
    assert set(s.vertices) <= sums
    assert all(s.contains(x) for x in sums)


@settings(max_examples=40, deadline=None)
@given(pts2)
def test_h_rep_roundtrip(points):
    p = Polyhedron(points)
    q = Polyhedron.from_inequalities(p.inequalities, p.equations, rank=2)
    assert q == p
    assume(p.dim == 2)
    for a0, a in p.inequalities:
        assert sum(1 for v in p.vertices if a0 + dot(a, v) == 0) >= 2
