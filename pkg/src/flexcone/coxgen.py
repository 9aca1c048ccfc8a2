"""Trinomial Cox presentations, G_a-actions on their total coordinate spaces,
and homogenization of chart derivations to affine cones.

Variables are Poly variables ``("S", (k,))`` for the free generators and
``("T", (k,))`` for the block generators; ``TrinomialPresentation.names``
maps them to readable labels such as ``T_{0,1/2}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .fdiv import INF, FDivisor, mu, point_key, point_str, validate_fdivisor
from .geom import PolyhedralComplex, cone_as_polyhedron
from .linalg import rat_str, solve
from .poly import Poly

T_PARAM = ("t", ())


class CoxError(ValueError):
    """A precondition of a Cox-ring construction does not hold."""


def _svar(k: int):
    return ("S", (k,))


def _tvar(k: int):
    return ("T", (k,))


def _monomial(exps: Mapping) -> Poly:
    out = Poly.const(1)
    for v, e in exps.items():
        out = out * Poly.from_var(v, e)
    return out


@dataclass
class TrinomialPresentation:
    s_vars: list  # (var, ray)
    t_vars: list  # (var, point, vertex, mu)
    relations: list  # (z, {var: exp} at 0, at inf, at z)
    blocks: dict = field(default_factory=dict)  # point -> {var: exp}

    @property
    def names(self) -> dict:
        out = {v: f"S_rho({','.join(str(x) for x in ray)})" for v, ray in self.s_vars}
        for v, p, vert, _ in self.t_vars:
            out[v] = f"T_{{{point_str(p)},{','.join(rat_str(x) for x in vert)}}}"
        return out

    def variables(self) -> list:
        return [v for v, _ in self.s_vars] + [v for v, *_ in self.t_vars]

    def relation_polys(self) -> list[Poly]:
        return [_monomial(m0) * z + _monomial(mi) + _monomial(mz) for z, m0, mi, mz in self.relations]

    def render(self, poly: Poly) -> str:
        names = self.names
        parts = []
        for mono, c in sorted(poly.terms.items(), key=lambda mc: str(mc[0])):
            m = "*".join(names[v] + (f"^{e}" if e != 1 else "") for v, e in mono) or "1"
            parts.append(m if c == 1 else f"{rat_str(c)}*{m}")
        return " + ".join(parts) if parts else "0"

    def ring_string(self) -> str:
        names = self.names
        gens = ", ".join(names[v] for v in self.variables())
        rels = ", ".join(self.render(r) for r in self.relation_polys())
        return f"k[{gens}]" + (f" / <{rels}>" if rels else "")


def _with_trivial_points(S: FDivisor) -> dict:
    slices = dict(S.slices)
    for p in (Fraction(0), INF):
        if p not in slices:
            slices[p] = PolyhedralComplex([cone_as_polyhedron(c) for c in S.tail_fan], S.rank)
    return slices


def cox_presentation(S: FDivisor) -> TrinomialPresentation:
    """Generators S_rho, T_(P,v) and relations z*T^mu(0) + T^mu(inf) + T^mu(z).

    Trivial slices are adjoined at 0 and infinity when those points are not
    in the support.
    """
    rep = validate_fdivisor(S)
    if not rep:
        raise CoxError(f"invalid f-divisor: {rep.failures}")
    s_vars = [(_svar(k), ray) for k, ray in enumerate(S.horizontal_rays())]
    slices = _with_trivial_points(S)
    t_vars, blocks = [], {}
    for p in sorted(slices, key=point_key):
        blocks[p] = {}
        for vert in slices[p].vertices():
            v = _tvar(len(t_vars))
            t_vars.append((v, p, vert, mu(vert)))
            blocks[p][v] = mu(vert)
    relations = [(p, blocks[Fraction(0)], blocks[INF], blocks[p])
                 for p in sorted(slices, key=point_key) if p != INF and p != 0]
    return TrinomialPresentation(s_vars, t_vars, relations, blocks)


# ---------------------------------------------------------------------------
# normalized form

def _det(p, q):
    return p[0] * q[1] - p[1] * q[0]


@dataclass
class NormalizedTrinomialForm:
    """Relations a0_l*A_0 + a1_l*A_1 + A_l = 0 for l = 2..m.

    Each block l carries a point p_l in Q^2, pairwise independent; the
    relation among blocks i, j, k is det(p_j,p_k)A_i + det(p_k,p_i)A_j +
    det(p_i,p_j)A_k.  Reordering blocks therefore only recomputes the
    coefficients.  For a Cox presentation p_0 = (1,0), p_inf = (0,1) and
    p_z = (-z,-1), which gives z*A_0 + A_inf + A_z.
    """
    s_vars: list
    blocks: list  # list of list[(var, exp)]
    points: list  # list of (Fraction, Fraction)
    labels: list = field(default_factory=list)
    names: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.blocks) - 1

    def monomial(self, l: int) -> Poly:
        return _monomial(dict(self.blocks[l]))

    def linear_flags(self) -> list[bool]:
        return [any(e == 1 for _, e in b) for b in self.blocks]

    def satisfies_linearity(self) -> bool:
        """Every A_l with l >= 1 has an exponent-1 variable."""
        return all(self.linear_flags()[1:])

    def coefficients(self, l: int) -> tuple[Fraction, Fraction]:
        p0, p1, pl = self.points[0], self.points[1], self.points[l]
        d = _det(p0, p1)
        return _det(p1, pl) / d, _det(pl, p0) / d

    def relation(self, l: int) -> Poly:
        a0, a1 = self.coefficients(l)
        return self.monomial(0) * a0 + self.monomial(1) * a1 + self.monomial(l)

    def relations(self) -> list[Poly]:
        return [self.relation(l) for l in range(2, len(self.blocks))]

    def variables(self) -> list:
        return list(self.s_vars) + [v for b in self.blocks for v, _ in b]

    def permuted(self, order: Sequence[int]) -> "NormalizedTrinomialForm":
        order = list(order)
        if sorted(order) != list(range(len(self.blocks))):
            raise ValueError("not a permutation of the blocks")
        return NormalizedTrinomialForm(
            list(self.s_vars), [self.blocks[i] for i in order], [self.points[i] for i in order],
            [self.labels[i] for i in order] if self.labels else [], dict(self.names))

    def swapped(self, i: int, j: int) -> "NormalizedTrinomialForm":
        order = list(range(len(self.blocks)))
        order[i], order[j] = order[j], order[i]
        return self.permuted(order)

    def contains(self, x: Mapping) -> bool:
        return all(r.evaluate(x) == 0 for r in self.relations())


def normalized_form(pres: TrinomialPresentation) -> NormalizedTrinomialForm:
    """Blocks ordered so that nonlinear monomials come first.

    At most two blocks may lack an exponent-1 variable; they are placed at
    positions 0 and 1 so that every A_l with l >= 2 is linear in some
    variable, which is what the G_a-action construction uses.
    """
    pts = sorted(pres.blocks, key=point_key)
    def point_of(p):
        if p == INF:
            return (Fraction(0), Fraction(1))
        if p == 0:
            return (Fraction(1), Fraction(0))
        return (-Fraction(p), Fraction(-1))
    blocks = [sorted(pres.blocks[p].items()) for p in pts]
    form = NormalizedTrinomialForm([v for v, _ in pres.s_vars], blocks, [point_of(p) for p in pts],
                                   [point_str(p) for p in pts], pres.names)
    # 0 first, then inf, then finite points: matches z*A_0 + A_inf + A_z
    order = sorted(range(len(pts)), key=lambda i: (pts[i] != 0, pts[i] != INF, point_key(pts[i])))
    form = form.permuted(order)
    if len(form.blocks) < 3:
        return form
    flags = form.linear_flags()
    bad = [i for i, f in enumerate(flags) if not f]
    if len(bad) > 2:
        raise CoxError("more than two monomials are nonlinear in every variable "
                       f"(blocks {[form.labels[i] for i in bad]}); the toric-cover condition fails")
    rest = [i for i in range(len(flags)) if i not in bad]
    head = bad + rest[:2 - len(bad)]
    order = head + [i for i in range(len(flags)) if i not in head]
    return form.permuted(order)


def form_from_relation(blocks: Sequence[Sequence[tuple]], points: Sequence[tuple],
                       s_vars: Sequence = ()) -> NormalizedTrinomialForm:
    """Hand-built form with the given block order, checked for linearity of A_2..A_m."""
    form = NormalizedTrinomialForm(list(s_vars), [list(b) for b in blocks],
                                   [tuple(Fraction(x) for x in p) for p in points],
                                   [str(i) for i in range(len(blocks))])
    flags = form.linear_flags()
    if len(blocks) >= 3 and not all(flags[2:]):
        raise CoxError(f"monomials {[i for i, f in enumerate(flags) if not f and i >= 2]} "
                       "have no exponent-1 variable")
    return form


def smooth_point_check(f: NormalizedTrinomialForm, x: Mapping) -> bool:
    """x is singular iff at least three monomials have all partials vanishing at x."""
    if not f.contains(x):
        raise CoxError("point does not satisfy the relations")
    if f.m < 2:
        return True
    bad = 0
    for l in range(len(f.blocks)):
        a = f.monomial(l)
        if all(a.diff(v).evaluate(x) == 0 for v, _ in f.blocks[l]):
            bad += 1
    return bad < 3


# ---------------------------------------------------------------------------
# G_a-actions

@dataclass
class PolynomialEndomorphism:
    """Substitution X -> images[X], polynomial in the variables and the flow parameter t."""
    variables: list
    images: dict

    def at(self, time) -> dict:
        return {v: self.images[v].subs({T_PARAM: time}) for v in self.variables}

    def apply(self, x: Mapping, time=1) -> dict:
        vals = dict(x)
        vals[T_PARAM] = Fraction(time)
        return {v: self.images[v].evaluate(vals) for v in self.variables}

    def pullback(self, f: Poly, time=None) -> Poly:
        """phi*(f) (with t kept symbolic when ``time`` is None)."""
        sub = self.images if time is None else self.at(time)
        return f.subs(sub)

    def compose(self, other: "PolynomialEndomorphism", s, t) -> dict:
        """Images of phi_s after phi_t: X -> phi_t*(phi_s*(X))."""
        first, second = self.at(s), other.at(t)
        return {v: first[v].subs(second) for v in self.variables}

    def is_identity_at_zero(self) -> bool:
        return all(self.images[v].subs({T_PARAM: 0}) == Poly.from_var(v) for v in self.variables)

    def script(self, names: Mapping | None = None) -> list[dict]:
        names = names or {}
        out = []
        for v in self.variables:
            img = self.images[v]
            if img != Poly.from_var(v):
                out.append({"var": names.get(v, str(v)), "image": _render(img, names)})
        return out


def _render(p: Poly, names: Mapping) -> str:
    if not p.terms:
        return "0"
    parts = []
    for mono, c in sorted(p.terms.items(), key=lambda mc: str(mc[0])):
        m = "*".join(names.get(v, v[0]) + (f"^{e}" if e != 1 else "") for v, e in mono)
        if not m:
            parts.append(rat_str(c))
        else:
            parts.append(m if c == 1 else f"{rat_str(c)}*{m}")
    return " + ".join(parts)


def _linear_partial(f: NormalizedTrinomialForm, l: int, x: Mapping, prefer=None):
    """The exponent-1 variable of block l used for corrections, and its partial B_l."""
    a = f.monomial(l)
    cands = [v for v, e in f.blocks[l] if e == 1]
    if prefer is not None:
        cands = [prefer] if prefer in cands else []
    for v in cands:
        b = a.diff(v)
        if b.evaluate(x) != 0:
            return v, b
    raise CoxError(f"block {f.labels[l] if f.labels else l} has no linear variable "
                   "with nonvanishing partial derivative at the point")


def build_ga_action(f: NormalizedTrinomialForm, x: Mapping, c: Sequence,
                    choices: Mapping | None = None) -> PolynomialEndomorphism:
    """The flow translating blocks 0 and 1 by t*c*prod B_k and correcting each A_l.

    ``c`` lists one constant per variable of block 0 followed by block 1.
    ``choices`` may fix the corrected linear variable of a block.
    """
    choices = choices or {}
    n0, n1 = len(f.blocks[0]), len(f.blocks[1]) if len(f.blocks) > 1 else 0
    c = [Fraction(v) for v in c]
    if len(c) != n0 + n1:
        raise CoxError(f"need {n0 + n1} constants, got {len(c)}")
    lin = {l: _linear_partial(f, l, x, choices.get(l)) for l in range(2, len(f.blocks))}
    prod_b = Poly.const(1)
    for l in lin:
        prod_b = prod_b * lin[l][1]
    t = Poly.from_var(T_PARAM)
    s = ("_s", ())
    sv = Poly.from_var(s)
    images = {v: Poly.from_var(v) for v in f.variables()}
    consts = {}
    for (v, _), cv in zip(list(f.blocks[0]) + (list(f.blocks[1]) if n1 else []), c):
        consts[v] = cv
        images[v] = Poly.from_var(v) + t * prod_b * cv
    hs = []
    for l in (0, 1)[:len(f.blocks)]:
        a = f.monomial(l)
        shifted = a.subs({v: Poly.from_var(v) + sv * consts[v] for v, _ in f.blocks[l]})
        g = (shifted - a) / sv  # every term carries s
        hs.append(t * g.subs({s: t * prod_b}))
    for l, (v, _) in lin.items():
        a0, a1 = f.coefficients(l)
        others = Poly.const(1)
        for k in lin:
            if k != l:
                others = others * lin[k][1]
        images[v] = Poly.from_var(v) - (hs[0] * a0 + hs[1] * a1) * others
    return PolynomialEndomorphism(f.variables(), images)


def translation(variables: Sequence, shift: Mapping) -> PolynomialEndomorphism:
    t = Poly.from_var(T_PARAM)
    return PolynomialEndomorphism(list(variables), {
        v: Poly.from_var(v) + t * Fraction(shift.get(v, 0)) for v in variables})


def transitivity_demo(f: NormalizedTrinomialForm, x: Mapping, y: Mapping) -> list:
    """Flows (endomorphism, time) whose composition sends x to y.

    Schedule: translate the free variables; equalize blocks 0 and 1 with
    the basic flow; for each block l >= 2 with more than one variable, swap
    A_1 and A_l, equalize the remaining variables of block l, and restore
    the broken coordinate of block 1 with the basic flow.  The corrected
    linear variables of blocks l >= 2 then agree because of the relations.
    """
    x = {v: Fraction(x[v]) for v in f.variables()}
    y = {v: Fraction(y[v]) for v in f.variables()}
    for name, pt in (("x", x), ("y", y)):
        if not smooth_point_check(f, pt):
            raise CoxError(f"{name} is a singular point")
    if any(val == 0 for val in y.values()):
        raise CoxError("y must have all coordinates nonzero")
    if x == y:
        return []
    steps = []

    def run(endo):
        nonlocal x
        x = endo.apply(x, 1)
        steps.append((endo, Fraction(1)))

    if any(x[v] != y[v] for v in f.s_vars):
        run(translation(f.variables(), {v: y[v] - x[v] for v in f.s_vars}))
    nb = len(f.blocks)
    if nb <= 2:
        shift = {v: y[v] - x[v] for b in f.blocks for v, _ in b}
        if any(shift.values()):
            run(translation(f.variables(), shift))
        return steps
    choice = {l: _linear_partial(f, l, x)[0] for l in range(2, nb)}
    for l in range(2, nb):
        if _linear_partial(f, l, y, choice[l])[1].evaluate(y) == 0:
            raise CoxError("B_l vanishes at y")

    def basic(targets):
        # equalize the given variables of blocks 0 and 1 with the basic flow
        prod_b = Poly.const(1)
        for l in range(2, nb):
            prod_b = prod_b * f.monomial(l).diff(choice[l])
        pb = prod_b.evaluate(x)
        c = [(y[v] - x[v]) / pb if v in targets else 0 for v, _ in f.blocks[0] + f.blocks[1]]
        if any(c):
            run(build_ga_action(f, x, c, choice))

    basic({v for v, _ in f.blocks[0] + f.blocks[1]})
    for l in range(2, nb):
        rest = [v for v, _ in f.blocks[l] if v != choice[l]]
        if all(x[v] == y[v] for v in rest):
            continue
        g = f.swapped(1, l)
        try:
            lin1, _ = _linear_partial(g, l, x)
        except CoxError:
            raise CoxError(f"cannot equalize block {f.labels[l]}: A_1 has no usable linear variable") from None
        gchoice = {k: choice[k] for k in range(2, nb) if k != l}
        gchoice[l] = lin1
        prod_b = Poly.const(1)
        for k in range(2, nb):
            prod_b = prod_b * g.monomial(k).diff(gchoice[k])
        pb = prod_b.evaluate(x)
        c = [Fraction(0)] * len(g.blocks[0]) + \
            [(y[v] - x[v]) / pb if v in rest else Fraction(0) for v, _ in g.blocks[1]]
        run(build_ga_action(g, x, c, gchoice))
        basic({lin1})
    if x != y:
        raise CoxError("flows did not reach y")  # pragma: no cover
    return steps


def compose_flows(steps, x: Mapping) -> dict:
    for endo, time in steps:
        x = endo.apply(x, time)
    return x


# ---------------------------------------------------------------------------
# lifting chart derivations to the affine cone

def xv(i: int) -> Poly:
    return Poly.var("x", i)


def uv(i: int) -> Poly:
    return Poly.var("u", i)


@dataclass
class HomogeneousDerivation:
    """delta(x_i) = images[i]; all images homogeneous of degree ``degree``."""
    images: dict
    d: int
    degree: int
    ideal_preserved: dict = field(default_factory=dict)  # relation index -> bool
    nilpotency: dict = field(default_factory=dict)  # generator -> steps, None if bound exceeded
    bound: int = 0

    def __call__(self, f: Poly) -> Poly:
        out = Poly()
        for i, img in self.images.items():
            df = f.diff(("x", (i,)))
            if df:
                out = out + df * img
        return out

    @property
    def ok(self) -> bool:
        return all(self.ideal_preserved.values()) and all(v is not None for v in self.nilpotency.values())


def in_homogeneous_ideal(f: Poly, gens: Sequence[Poly], nvars: int) -> bool:
    """Membership of a homogeneous f in the ideal generated by homogeneous gens.

    Exact linear algebra in the degree-deg(f) component: f is a combination of
    monomial multiples of the generators of matching degree.
    """
    if not f:
        return True
    deg = f.degree()
    if not f.is_homogeneous():
        raise ValueError("membership test needs a homogeneous polynomial")
    xs = [("x", (i,)) for i in range(nvars)]
    products = []
    for g in gens:
        k = deg - g.degree()
        if k < 0:
            continue
        for combo in combinations_with_replacement(range(nvars), k):
            m = Poly.const(1)
            for i in combo:
                m = m * Poly.from_var(xs[i])
            products.append(m * g)
    if not products:
        return False
    monos = sorted({mono for p in products + [f] for mono in p.terms}, key=str)
    cols = [[p.terms.get(mono, Fraction(0)) for p in products] for mono in monos]
    rhs = [f.terms.get(mono, Fraction(0)) for mono in monos]
    return solve(cols, rhs) is not None


def homogenize_derivation(chart_images: Mapping[int, Poly], relations: Sequence[Poly],
                          n: int, d: int | None = None) -> HomogeneousDerivation:
    """Lift a derivation of the chart x_0 != 0 to a homogeneous LND of the cone.

    ``chart_images[i]`` is the image of u_i = x_i/x_0 (i = 1..n) as a
    polynomial in the u-variables.  The derivation is extended to the cone
    by delta~(x_0) = 0, delta~(x_i) = p_i(x/x_0); then
    delta^ = x_0^(d+1) * delta~, with d the least integer making
    x_0^d * delta~(x_i) polynomial (or the given d, if large enough).
    """
    maxdeg = max((p.degree() for p in chart_images.values() if p), default=0)
    need = max(0, maxdeg)
    if d is None:
        d = need
    elif d < need:
        raise CoxError(f"d = {d} too small: x_0^d * delta(x_i) is not polynomial (need d >= {need})")
    x0 = xv(0)
    sub = {("u", (i,)): xv(i) * x0 ** -1 for i in range(1, n + 1)}
    images = {0: Poly()}
    for i in range(1, n + 1):
        p = Poly.lift(chart_images.get(i, Poly()))
        img = p.subs(sub) * x0 ** (d + 1)
        if not img.is_polynomial():
            raise CoxError("image is not polynomial")  # pragma: no cover
        images[i] = img
    degs = {img.degree() for img in images.values() if img}
    if len(degs) > 1 or not all(img.is_homogeneous() for img in images.values()):
        raise CoxError("images are not homogeneous of a common degree")
    delta = HomogeneousDerivation(images, d, degs.pop() if degs else 0)
    for k, g in enumerate(relations):
        delta.ideal_preserved[k] = in_homogeneous_ideal(delta(g), relations, n + 1)
    gen_deg = max(delta.degree, 1)
    delta.bound = (gen_deg + 1) ** (n + 1)
    for i in range(n + 1):
        f = xv(i)
        steps = None
        for k in range(delta.bound + 1):
            if not f or in_homogeneous_ideal(f, relations, n + 1):
                steps = k
                break
            f = delta(f)
        delta.nilpotency[i] = steps
    return delta
