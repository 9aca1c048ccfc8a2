"""Cone arithmetic for the blowup of P^n along a hypersurface in a hyperplane.

X is the blowup of P^n in a degree-d hypersurface of a hyperplane, with
Pic X spanned by [H], [E]; X' blows up X once more, adding [E'].  Each
affine chart of the covering is the complement of a divisor whose class is
listed below; the chart is what the flexibility criterion needs when the
listed classes span a cone containing the nef cone, so that every ample
class is a positive combination of them.
"""

from __future__ import annotations

from .geom import Cone


def x_chart_classes(d: int) -> list[list[tuple]]:
    """Complement classes of the charts of X, in the basis ([H], [E])."""
    return [[(0, 1), (1, -1)], [(1, 0), (1, -1)], [(1, 0), (d, -1)]]


def x_nef_cone(d: int) -> Cone:
    return Cone([(1, 0), (d, -1)], 2)


def xprime_chart_classes(d: int) -> list[list[tuple]]:
    """Complement classes of the charts of X', in the basis ([H], [E], [E'])."""
    return [[(1, -1, 0), (0, 1, 0), (1, 0, -1)],
            [(1, 0, -1), (d, -1, 0), (0, 0, 1)],
            [(1, 0, -1), (1, -1, 0), (0, 0, 1)]]


def xprime_nef_cone(d: int) -> Cone:
    return Cone([(d, -1, 0), (1, 0, -1), (1, 0, 0)], 3)


def chart_cones_contain_nef(d: int) -> dict:
    """For X and X', whether each chart's class cone contains the nef cone."""
    nef, nef2 = x_nef_cone(d), xprime_nef_cone(d)
    return {
        "X": [Cone(gens, 2).contains_cone(nef) for gens in x_chart_classes(d)],
        "X'": [Cone(gens, 3).contains_cone(nef2) for gens in xprime_chart_classes(d)],
    }
