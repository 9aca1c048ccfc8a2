"""The numba and numpy kernels must agree exactly."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flexcone import _kernels as K

numba_only = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba unavailable or disabled")


def test_backend_name():
    assert K.backend() in ("numba", "numpy")


def test_box_points_numpy_oracle():
    # triangle x, y >= 0, x + y <= 2
    pts = K.box_points_numpy([0, 0], [2, 2], [[1, 1]], [2])
    assert sorted(map(tuple, pts)) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_empty_box():
    assert K.box_points_numpy([1], [0], np.zeros((0, 1)), []).shape == (0, 1)


def test_exponent_vectors_oracle():
    ev = K.exponent_vectors_numpy(2, 2)
    assert [tuple(r) for r in ev] == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


boxes = st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n),
    st.lists(st.integers(0, 4), min_size=n, max_size=n),
    st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), max_size=4),
    st.lists(st.integers(-6, 6), min_size=4, max_size=4)))


@numba_only
@settings(max_examples=60, deadline=None)
@given(boxes)
def test_box_points_agree(data):
    lo, width, A, b = data
    hi = [l + w for l, w in zip(lo, width)]
    A = np.array(A, dtype=np.int64).reshape(-1, len(lo))
    b = np.array(b[:A.shape[0]], dtype=np.int64)
    a = K.box_points_numpy(lo, hi, A, b)
    c = K.box_points_numba(lo, hi, A, b)
    assert np.array_equal(a, c)


@numba_only
@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 4))
def test_exponent_vectors_agree(k, maxdeg):
    assert np.array_equal(K.exponent_vectors_numpy(k, maxdeg), K.exponent_vectors_numba(k, maxdeg))
