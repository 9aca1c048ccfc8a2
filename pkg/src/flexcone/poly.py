"""Sparse exact (Laurent) polynomials with Fraction coefficients.

A variable is a pair ``(name, index)`` with ``index`` a tuple of ints, e.g.
``("x", (1, 0, 1))``.  A monomial is a sorted tuple of ``(variable, exponent)``
pairs; exponents may be negative, which is used for exact limits in a
parameter such as ``1/eps``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

Var = tuple  # (name, index-tuple)
Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


def var_str(v: Var) -> str:
    name, idx = v
    if not idx:
        return name
    return f"{name}({','.join(str(i) for i in idx)})"


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    # -- constructors ------------------------------------------------------
    @classmethod
    def var(cls, name: str, *index: int) -> "Poly":
        return cls({(((name, tuple(index)), 1),): Fraction(1)})

    @classmethod
    def from_var(cls, v: Var, power: int = 1) -> "Poly":
        return cls({((v, power),): Fraction(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @staticmethod
    def lift(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = Poly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        r = Poly()
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = Poly()
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            r = Poly()
            r.terms = {m: c * v for m, v in self.terms.items()} if c else {}
            return r
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        r = Poly()
        r.terms = out
        return r

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if len(other.terms) != 1:
                raise ZeroDivisionError("division only by monomials or constants")
            (m, c), = other.terms.items()
            inv = Poly({tuple((v, -e) for v, e in m): 1 / c})
            return self * inv
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only of monomials")
            (m, c), = self.terms.items()
            return Poly({tuple((v, e * n) for v, e in m): c ** n})
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        try:
            return self.terms == Poly.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self, vars_: Iterable[Var] | None = None) -> int:
        if not self.terms:
            return -1
        sel = None if vars_ is None else set(vars_)
        return max(sum(e for v, e in m if sel is None or v in sel) for m in self.terms)

    def min_exponent(self, v: Var) -> int:
        return min((dict(m).get(v, 0) for m in self.terms), default=0)

    def is_homogeneous(self, vars_: Iterable[Var] | None = None) -> bool:
        sel = None if vars_ is None else set(vars_)
        degs = {sum(e for v, e in m if sel is None or v in sel) for m in self.terms}
        return len(degs) <= 1

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(monomial)), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self.terms for _, e in m)

    # -- transformations ---------------------------------------------------
    def diff(self, v: Var) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if e == 0:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, 0) + c * e
        return Poly(out)

    def subs(self, mapping: Mapping[Var, object]) -> "Poly":
        """Substitute polynomials (or numbers) for variables."""
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = Poly.lift(mapping[v]) ** e
            return cache[key]

        result = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    term = term * power(v, e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly({tuple(rest): 1})
            result = result + term
        return result

    def evaluate(self, values: Mapping[Var, object]):
        """Evaluate at a point; every variable must be assigned."""
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * Fraction(values[v]) ** e
            total += t
        return total

    def map_coefficients(self, f: Callable) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()})

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), str(mc[0]))):
            mono = "*".join(var_str(v) + (f"^{e}" if e != 1 else "") for v, e in m)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def ring_value(x):
    """Lift a number or Poly to something supporting ring arithmetic."""
    return x if isinstance(x, Poly) else Fraction(x)
