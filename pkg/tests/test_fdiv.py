import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from flexcone.fdiv import (
    GENERIC, INF, FDivisor, FDivisorError, SupportFunction, all_cones_flexible_check,
    ample_necessary, box, check_polar_chart, divisor, dual_value, is_effective, is_toric, mu,
    parse_point, polar_chart, toric_cover_check, validate_fdivisor, validate_sf, zero_set,
)
from flexcone.geom import Cone, Polyhedron, PolyhedralComplex
from flexcone.io import (
    InputError, fdivisor_from_json, fdivisor_to_json, load_fdivisor, load_sf, sf_from_json,
    sf_to_json,
)
from random_instances import random_instance

F = Fraction
FIX = Path(__file__).resolve().parent.parent / "fixtures"
FAN1 = [Cone([(1,)]), Cone([(-1,)])]


def interval_slice(a, b):
    return PolyhedralComplex([Polyhedron([(a,)], [(-1,)]), Polyhedron([(a,), (b,)]),
                              Polyhedron([(b,)], [(1,)])], 1)


def test_points_and_mu():
    assert parse_point("1/2") == F(1, 2) and parse_point("inf") == INF
    assert mu((F(1, 2), F(1, 3))) == 6 and mu((2, 0)) == 1
    with pytest.raises(FDivisorError):
        parse_point("x")


def test_example_fixture_verdicts():
    S = load_fdivisor(FIX / "example4.json")
    assert validate_fdivisor(S).verdict is True
    assert is_toric(S).verdict is False
    assert toric_cover_check(S).verdict is True
    rep = all_cones_flexible_check(S)
    assert rep.verdict is False
    (w,) = rep.failures
    assert w["count"] == 3 and w["tail"] == []


def test_degree_is_checked():
    sl = {F(0): interval_slice(-1, 1)}
    ok = FDivisor(1, FAN1, sl, {0: Polyhedron([(1,)], [(1,)]), 1: Polyhedron([(-1,)], [(-1,)])})
    assert validate_fdivisor(ok).verdict is True
    wrong = FDivisor(1, FAN1, sl, {0: Polyhedron([(2,)], [(1,)]), 1: None})
    kinds = [f["kind"] for f in validate_fdivisor(wrong).failures]
    assert kinds == ["degree-mismatch"]
    # a slice sum equal to the tail cone itself is not proper
    flat = FDivisor(1, FAN1, {}, {0: Polyhedron([(0,)], [(1,)]), 1: None})
    assert [f["kind"] for f in validate_fdivisor(flat).failures] == ["degree-not-proper"]


def test_slice_errors_are_reported():
    gap = PolyhedralComplex([Polyhedron([(0,)], [(-1,)]), Polyhedron([(1,)], [(1,)])], 1)
    S = FDivisor(1, FAN1, {F(0): gap}, {0: None, 1: None})
    assert any(f["kind"] == "slice-incomplete" for f in validate_fdivisor(S).failures)
    bounded_only = PolyhedralComplex([Polyhedron([(0,), (1,)])], 1)
    S = FDivisor(1, FAN1, {F(0): bounded_only}, {0: None, 1: None})
    assert validate_fdivisor(S).verdict is False


def test_divisor_fixture():
    S = load_fdivisor(FIX / "divisor.json")
    h = load_sf(FIX / "divisor_sf.json", S)
    assert validate_sf(S, h).verdict is True
    D = divisor(S, h)
    assert {r: c for r, c in D.horizontal.items() if c} == {(1,): 1}
    assert not any(D.vertical.values())
    assert is_effective(S, h)
    assert box(S, h).vertices == ((F(-1),), (F(0),))
    assert dual_value(S, h, F(0), (F(-1),)) == F(-1, 2)
    assert dual_value(S, h, GENERIC, (F(-1),)) == 0
    rep = ample_necessary(S, h)
    assert rep.verdict is False
    assert [f["kind"] for f in rep.failures] == ["negative-dual-value"]


def test_dual_value_outside_box():
    S = load_fdivisor(FIX / "divisor.json")
    h = load_sf(FIX / "divisor_sf.json", S)
    with pytest.raises(FDivisorError):
        dual_value(S, h, F(0), (F(1),))


def test_zero_set_of_divisor_fixture():
    S = load_fdivisor(FIX / "divisor.json")
    h = load_sf(FIX / "divisor_sf.json", S)
    Z = zero_set(S, h)
    assert [c.generators for c in Z.tail_fan] == [[(-1,)]]
    assert Z.slices[F(0)].cells[0] == Polyhedron([(F(1, 2),)], [(-1,)])


def test_polar_chart_trivial_keeps_h():
    S = load_fdivisor(FIX / "trivial_p1.json")
    h = load_sf(FIX / "degree1_sf.json", S)
    # h = lin vanishes on Q<=0, the second cell of the trivial slice
    pc = polar_chart(S, h, F(0), 1)
    assert pc.u == (F(0),) and set(pc.shifts.values()) == {0}
    assert all(check_polar_chart(S, h, F(0), 1, pc).values())
    assert pc.h.lin == {0: (F(-1),), 1: (F(0),)}


def test_polar_chart_rejects_example_fixture():
    S = load_fdivisor(FIX / "example4.json")
    h = SupportFunction({0: (F(-1),), 1: (F(1),)},
                        {p: [((F(1),), F(0)), ((F(0),), F(-1)), ((F(-1),), F(0))]
                         for p in (F(0), F(1), INF)})
    with pytest.raises(FDivisorError, match="all_cones_flexible"):
        polar_chart(S, h, F(0), 1)


def test_json_roundtrip():
    S = load_fdivisor(FIX / "example4.json")
    T = fdivisor_from_json(json.loads(json.dumps(fdivisor_to_json(S))))
    assert T.support() == S.support()
    assert all(S.slices[p].same_cells(T.slices[p]) for p in S.support())
    assert all(S.degree[k] == T.degree[k] for k in S.degree)
    S2 = load_fdivisor(FIX / "divisor.json")
    h = load_sf(FIX / "divisor_sf.json", S2)
    assert sf_from_json(json.loads(json.dumps(sf_to_json(h))), S2) == h


def test_bad_json_reports_location():
    with pytest.raises(InputError, match="rank"):
        fdivisor_from_json({"tailFan": [], "slices": []})


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_family_meets_preconditions(seed):
    S, h, q, cell = random_instance(random.Random(seed))
    assert validate_fdivisor(S).verdict is True
    assert validate_sf(S, h).verdict is True
    assert ample_necessary(S, h).verdict is True
    assert all_cones_flexible_check(S).verdict is True


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_flexible_implies_toric_cover(seed):
    S, *_ = random_instance(random.Random(seed), n_generic=random.Random(seed).randint(0, 4),
                            n_translates=0)
    if all_cones_flexible_check(S):
        assert toric_cover_check(S)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_polar_chart_postconditions(seed):
    S, h, q, cell = random_instance(random.Random(seed))
    pc = polar_chart(S, h, q, cell)
    assert sum(pc.shifts.values()) == 0
    assert all(check_polar_chart(S, h, q, cell, pc).values())
    assert pc.zero_point != pc.infinity_point


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_divisor_is_additive(seed):
    rng = random.Random(seed)
    S, h, *_ = random_instance(rng, rank=1, n_generic=0)
    g = SupportFunction({k: tuple(x * 2 for x in u) for k, u in h.lin.items()},
                        {p: [(tuple(x * 2 for x in u), a * 2) for u, a in pcs] for p, pcs in h.pieces.items()})
    assert divisor(S, h + h) == divisor(S, g)
    assert divisor(S, h) + divisor(S, h) == divisor(S, g)
