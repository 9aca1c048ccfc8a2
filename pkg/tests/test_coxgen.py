import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from flexcone.coxgen import (
    CoxError, build_ga_action, compose_flows, cox_presentation, form_from_relation,
    homogenize_derivation, in_homogeneous_ideal, normalized_form, smooth_point_check,
    transitivity_demo, uv, xv,
)
from flexcone.io import load_fdivisor
from flexcone.poly import Poly
from random_instances import random_nonzero, random_point_on_form

F = Fraction
FIX = Path(__file__).resolve().parent.parent / "fixtures"


def T(i):
    return ("T", (i,))


@pytest.fixture(scope="module")
def cox_form():
    pres = cox_presentation(load_fdivisor(FIX / "cox.json"))
    return pres, normalized_form(pres)


def wide_form():
    # A0 = T0^2, A1 = T1, A2 = T2*T3, A3 = T4*T5^2 over four base points
    return form_from_relation(
        [[(T(0), 2)], [(T(1), 1)], [(T(2), 1), (T(3), 1)], [(T(4), 1), (T(5), 2)]],
        [(1, 0), (0, 1), (-2, -1), (-3, -1)], s_vars=[("S", (0,))])


def test_presentation(cox_form):
    pres, f = cox_form
    assert pres.render(pres.relation_polys()[0]) == "T_{0,1/2}^2 + T_{1,-1/3}^3 + T_{inf,0}"
    assert [m for *_, m in pres.t_vars] == [2, 3, 1]
    assert len(pres.s_vars) == 2
    assert f.labels == ["0", "1", "inf"]
    assert f.linear_flags() == [False, False, True]
    assert not f.satisfies_linearity()
    assert f.relations() == pres.relation_polys()


def test_reordering_keeps_the_ideal():
    f = wide_form()
    g = f.swapped(1, 2)
    rng = random.Random(0)
    for _ in range(5):
        x = random_point_on_form(f, rng)
        assert g.contains(x)


def test_form_needs_linear_tail_blocks():
    with pytest.raises(CoxError):
        form_from_relation([[(T(0), 1)], [(T(1), 1)], [(T(2), 2)]], [(1, 0), (0, 1), (-1, -1)])


def test_singular_origin():
    sq = form_from_relation([[(T(0), 2)], [(T(1), 2)], [(T(2), 1), (T(3), 2)]],
                            [(1, 0), (0, 1), (-1, -1)])
    origin = {v: F(0) for v in sq.variables()}
    assert not smooth_point_check(sq, origin)


def test_ga_requires_nonvanishing_partial():
    f = wide_form()
    x = {v: F(0) for v in f.variables()}
    with pytest.raises(CoxError):
        build_ga_action(f, x, [1, 1])


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_ga_action_fixes_relations_and_is_a_flow(seed):
    rng = random.Random(seed)
    f = wide_form()
    x = random_point_on_form(f, rng)
    c = [random_nonzero(rng) for _ in f.blocks[0] + f.blocks[1]]
    phi = build_ga_action(f, x, c)
    assert all(phi.pullback(r) == r for r in f.relations())
    assert phi.is_identity_at_zero()
    s, t = random_nonzero(rng), random_nonzero(rng)
    assert phi.compose(phi, s, t) == phi.at(s + t)
    assert f.contains(phi.apply(x, random_nonzero(rng)))


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_transitivity_wide(seed):
    rng = random.Random(seed)
    f = wide_form()
    x, y = random_point_on_form(f, rng), random_point_on_form(f, rng)
    assert compose_flows(transitivity_demo(f, x, y), x) == y


def test_transitivity_refuses_bad_points(cox_form):
    _, f = cox_form
    rng = random.Random(3)
    x = random_point_on_form(f, rng)
    y = dict(x)
    y[f.s_vars[0]] = F(0)
    with pytest.raises(CoxError, match="nonzero"):
        transitivity_demo(f, x, y)
    off = dict(x)
    off[T(2)] += 1
    with pytest.raises(CoxError):
        transitivity_demo(f, off, x)


def test_transitivity_same_point_is_empty(cox_form):
    _, f = cox_form
    x = random_point_on_form(f, random.Random(5))
    assert transitivity_demo(f, x, x) == []


def test_ideal_membership():
    x0, x1, x2 = xv(0), xv(1), xv(2)
    g = x0 * x2 - x1 ** 2
    assert in_homogeneous_ideal(g * x1 * 3 + g * x0, [g], 3)
    assert not in_homogeneous_ideal(x1 ** 3, [g], 3)


def test_homogenize_examples():
    x0, x1 = xv(0), xv(1)
    p1 = homogenize_derivation({1: Poly.const(1)}, [], 1)
    assert p1.images == {0: Poly(), 1: x0} and p1.d == 0 and p1.ok
    conic = x0 * xv(2) - x1 ** 2
    h = homogenize_derivation({1: Poly.const(1), 2: uv(1) * 2}, [conic], 2)
    assert h.images[1] == x0 ** 2 and h.images[2] == x0 * x1 * 2 and h.degree == 2
    assert h(conic) == Poly() and h.ok


def test_homogenize_larger_d_and_errors():
    h = homogenize_derivation({1: Poly.const(1)}, [], 1, d=2)
    assert h.images[1] == xv(0) ** 3 and h.ok
    with pytest.raises(CoxError, match="too small"):
        homogenize_derivation({1: Poly.const(1), 2: uv(1) * 2}, [], 2, d=0)


def test_homogenize_reports_ideal_failure():
    conic = xv(0) * xv(2) - xv(1) ** 2
    h = homogenize_derivation({1: Poly.const(1)}, [conic], 2)
    assert h.ideal_preserved == {0: False} and not h.ok


def test_products_are_singular_at_origin():
    f = form_from_relation([[(T(0), 1), (T(1), 1)], [(T(2), 1), (T(3), 1)], [(T(4), 1), (T(5), 1)]],
                           [(1, 0), (0, 1), (-1, -1)])
    assert not smooth_point_check(f, {v: F(0) for v in f.variables()})


def test_flow_preserves_linear_relation_symbolically():
    z2 = F(5)
    f = form_from_relation([[(T(0), 1)], [(T(1), 1)], [(T(2), 1), (T(3), 1)]],
                           [(1, 0), (0, 1), (-z2, -1)])
    rel = Poly.from_var(T(0)) * z2 + Poly.from_var(T(1)) + Poly.from_var(T(2)) * Poly.from_var(T(3))
    assert f.relations() == [rel]
    x = {T(0): F(1), T(1): F(2), T(2): F(-7), T(3): F(1)}
    phi = build_ga_action(f, x, [3, -2])
    assert phi.pullback(rel) == rel
