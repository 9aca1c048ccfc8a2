"""Exact computations for flexibility of affine cones.

Submodules: ``geom`` (rational polyhedra), ``cumulant`` (Segre-Veronese
cumulants and secant charts), ``fdiv`` (f-divisors and support functions),
``coxgen`` (trinomial Cox rings and G_a-actions), ``blowup`` and ``cli``.
"""

__version__ = "0.1.0"
