import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import flexcone.cumulant as cm
from flexcone.poly import Poly

F = Fraction


def xs(*c):
    return cm.xvar(c)


def test_degree_two_cumulant_is_covariance():
    assert cm.y_poly((1, 1)) == xs(1, 1) - xs(1, 0) * xs(0, 1)
    assert cm.z_poly((1, 1)) == cm.y_poly((1, 1))


def test_degree_four_uses_one_split():
    c = (1, 1, 1, 1)
    assert cm.interval_partitions(c) == [(0, 4), (0, 2, 4)]
    assert cm.z_poly(c) == cm.y_poly(c) - cm.y_poly((1, 1, 0, 0)) * cm.y_poly((0, 0, 1, 1))


def test_interval_partitions_skip_zero_runs():
    # cuts sit right before a nonzero entry, so zeros never double count
    assert cm.interval_partitions((1, 0, 1, 1, 0, 1)) == [(0, 6), (0, 3, 6)]
    with pytest.raises(ValueError):
        cm.interval_partitions((0, 1, 0))


def test_index_sets():
    spec = cm.SVSpec([1], [2])
    assert cm.index_set(spec) == [(0, 1), (1, 0), (1, 1)]
    assert cm.symmetric_index_set(spec) == [(1, 0), (1, 1)]


def test_veronese_polytope_and_report():
    r = cm.classify(cm.SVSpec([2], [2]))
    assert sorted(r.latticePointsOfP) == [(0, 2), (1, 1), (2, 0)]
    assert (r.dimX, r.dimP, r.dimSec, r.dimTan, r.degenerate) == (2, 1, 4, 4, True)


def test_twisted_cubic():
    r = cm.classify(cm.SVSpec([1], [3]))
    assert (r.dimSec, r.dimTan, r.degenerate) == (3, 2, False)
    assert r.secantMonoidGenerators == [(1, 2), (1, 3)]
    labels, rels = cm.chart_relations(cm.SVSpec([1], [3]))
    assert labels == ["z(1,1,0)", "z(1,1,1)"] and rels == []


def test_rep_map_at_zero_and_half():
    p = cm.SecPoint(F(0), ((F(2),),), ((F(5),),))
    r = cm.rep_map(p)
    assert (r.t, r.v, r.w) == (0, ((F(5),),), ((F(-3),),))
    with pytest.raises(cm.ChartError):
        cm.rep_map(cm.SecPoint(F(1, 2), ((F(1),),), ((F(0),),)))


def test_symbolic_round_trip_segre():
    spec = cm.SVSpec([1, 1], [1, 1])
    zx, xz = cm.z_from_x(spec), cm.x_from_z(spec)
    for c in cm.index_set(spec):
        assert xz[c].subs({("z", b): z for b, z in zx.items()}) == cm.xvar(c)


specs = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 2)), min_size=1, max_size=2).filter(
    lambda l: sum(d * s for d, s in l) <= 4).map(lambda l: cm.SVSpec([d for d, _ in l], [s for _, s in l]))


@settings(max_examples=30, deadline=None)
@given(specs, st.integers(0, 10 ** 6))
def test_pullback_and_decomposition_at_points(spec, seed):
    rng = random.Random(seed)
    p = cm.random_point(spec, rng)
    xsv = cm.eval_sec(spec, p)
    zs = cm.z_values(spec, xsv)
    mm = cm.monomial_map(spec, cm.rep_map(p))
    for c in cm.index_set(spec):
        assert zs[c] == cm.sec_pullback_formula(spec, c, p) == mm[c]


@settings(max_examples=30, deadline=None)
@given(specs, st.integers(0, 10 ** 6))
def test_numeric_round_trip(spec, seed):
    rng = random.Random(seed)
    x = {c: F(rng.randint(-9, 9), rng.randint(1, 4)) for c in cm.index_set(spec)}
    assert cm.x_values(spec, cm.z_values(spec, x)) == x


@settings(max_examples=20, deadline=None)
@given(specs, st.integers(0, 10 ** 6))
def test_tangential_limit_matches_closed_form(spec, seed):
    rng = random.Random(seed)
    p = cm.random_point(spec, rng)
    for c in cm.symmetric_index_set(spec):
        exact = Poly.lift(cm.tangential_limit_exact(spec, c, p.v, p.w))
        assert exact == Poly.lift(cm.tan_pullback_formula(spec, c, p.v, p.w))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(1, 3)), min_size=1, max_size=3))
def test_dichotomy_hyperplane(pairs):
    spec = cm.SVSpec([d for d, _ in pairs], [s for _, s in pairs])
    r = cm.classify(spec)
    assert r.degenerate == (sum(spec.degs) <= 2)
    assert (r.dimTan == r.dimSec - 1) == (not r.degenerate)


def test_binomials_are_in_kernel():
    pts = [(1, 2, 0), (1, 1, 1), (1, 0, 2)]
    (b,) = cm.toric_ideal_upto(pts, 2)
    lhs = [sum(e * p[i] for e, p in zip(b.plus, pts)) for i in range(3)]
    rhs = [sum(e * p[i] for e, p in zip(b.minus, pts)) for i in range(3)]
    assert lhs == rhs
    assert b.render(["a", "b", "c"]) in ("a*c - b^2", "b^2 - a*c")
