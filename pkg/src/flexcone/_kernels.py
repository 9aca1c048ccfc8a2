"""Integer enumeration kernels.

Two implementations of each kernel live here: a numba ``@njit`` version and
a pure-numpy one.  Both are exact on int64 data.  The numba path is used when
numba imports and ``FLEXCONE_DISABLE_NUMBA`` is unset (or ``0``); setting the
variable forces the numpy path.  ``NUMBA_DISABLE_JIT`` is honoured too.
"""

from __future__ import annotations

import os
from itertools import combinations_with_replacement

import numpy as np

_DISABLED = os.environ.get("FLEXCONE_DISABLE_NUMBA", "0") not in ("", "0") or \
    os.environ.get("NUMBA_DISABLE_JIT", "0") not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# pure numpy

def box_points_numpy(lo, hi, A, b):
    """Integer points x with lo <= x <= hi and A @ x <= b."""
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    A = np.asarray(A, dtype=np.int64).reshape(-1, len(lo))
    b = np.asarray(b, dtype=np.int64)
    if np.any(hi < lo):
        return np.zeros((0, len(lo)), dtype=np.int64)
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))
    if A.shape[0] == 0:
        return grid
    mask = np.all(grid @ A.T <= b, axis=1)
    return grid[mask]


def exponent_vectors_numpy(k, maxdeg):
    """All exponent vectors in N^k of total degree 1..maxdeg, degree-sorted."""
    out = []
    for deg in range(1, maxdeg + 1):
        for combo in combinations_with_replacement(range(k), deg):
            out.append(np.bincount(np.asarray(combo, dtype=np.int64), minlength=k))
    if not out:
        return np.zeros((0, k), dtype=np.int64)
    return np.asarray(out, dtype=np.int64)


# ---------------------------------------------------------------------------
# numba

if HAVE_NUMBA:

    @njit(cache=True)
    def _box_points_nb(lo, hi, A, b):
        n = lo.shape[0]
        total = 1
        for i in range(n):
            total *= hi[i] - lo[i] + 1
        out = np.empty((total, n), dtype=np.int64)
        cur = lo.copy()
        count = 0
        for _ in range(total):
            ok = True
            for r in range(A.shape[0]):
                s = 0
                for i in range(n):
                    s += A[r, i] * cur[i]
                if s > b[r]:
                    ok = False
                    break
            if ok:
                out[count, :] = cur
                count += 1
            # odometer increment, last axis fastest (matches meshgrid "ij")
            i = n - 1
            while i >= 0:
                cur[i] += 1
                if cur[i] <= hi[i]:
                    break
                cur[i] = lo[i]
                i -= 1
        return out[:count]

    @njit(cache=True)
    def _count_upto(k, maxdeg):
        # number of exponent vectors of degree 1..maxdeg in k variables
        total = 0
        c = 1
        for d in range(1, maxdeg + 1):
            c = c * (k + d - 1) // d
            total += c
        return total

    @njit(cache=True)
    def _exponent_vectors_nb(k, maxdeg):
        out = np.zeros((_count_upto(k, maxdeg), k), dtype=np.int64)
        row = 0
        idx = np.zeros(maxdeg, dtype=np.int64)
        for deg in range(1, maxdeg + 1):
            # nondecreasing index sequences of length deg, lexicographic
            for j in range(deg):
                idx[j] = 0
            while True:
                for j in range(deg):
                    out[row, idx[j]] += 1
                row += 1
                j = deg - 1
                while j >= 0 and idx[j] == k - 1:
                    j -= 1
                if j < 0:
                    break
                idx[j] += 1
                for q in range(j + 1, deg):
                    idx[q] = idx[j]
        return out

    def box_points_numba(lo, hi, A, b):
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if np.any(hi < lo):
            return np.zeros((0, len(lo)), dtype=np.int64)
        A = np.ascontiguousarray(np.asarray(A, dtype=np.int64).reshape(-1, len(lo)))
        b = np.asarray(b, dtype=np.int64)
        return _box_points_nb(lo, hi, A, b)

    def exponent_vectors_numba(k, maxdeg):
        if k == 0 or maxdeg < 1:
            return np.zeros((0, k), dtype=np.int64)
        return _exponent_vectors_nb(np.int64(k), np.int64(maxdeg))

    box_points = box_points_numba
    exponent_vectors = exponent_vectors_numba
else:
    box_points = box_points_numpy
    exponent_vectors = exponent_vectors_numpy


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
