"""Command-line front end.

Exit codes: 0 success (all verdicts true), 1 a verdict is false, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from . import cumulant as cm
from .coxgen import CoxError, cox_presentation, normalized_form
from .fdiv import (FDivisorError, all_cones_flexible_check, ample_necessary, box, check_polar_chart,
                   divisor, dual_value, is_effective, is_toric, parse_point, point_key, point_str,
                   polar_chart, toric_cover_check, validate_fdivisor, validate_sf, GENERIC)
from .geom import GeometryError
from .io import InputError, dumps, load_fdivisor, load_sf, polyhedron_to_json, sf_to_json
from .linalg import rat_str

CRITERIA = {
    "toric": ("is_toric", is_toric,
              "toric: all but at most two slices are lattice translates of the tail fan"),
    "toric-cover": ("toric_cover_check", toric_cover_check,
                    "covered by toric charts: for every tail cone, all but at most two slices "
                    "contain a lattice translate of it"),
    "all-cones-flexible": ("all_cones_flexible_check", all_cones_flexible_check,
                           "all affine cones flexible: for every tail cone, at most two slices contain "
                           "a polyhedron with that tail which is not a lattice translate of it"),
}


class UsageError(ValueError):
    pass


def _exit(verdicts: dict) -> int:
    return 0 if all(verdicts.values()) else 1


def _vec(v) -> list:
    return [rat_str(x) for x in v]


# ---------------------------------------------------------------------------
# report builders; each returns (report, exit code)

def cmd_validate(path: str, args) -> tuple[dict, int]:
    S = load_fdivisor(path)
    rep = validate_fdivisor(S)
    verdicts = {"f_divisor_valid": rep.verdict}
    return {"command": "validate-fdivisor", "input": {"file": path},
            "criterion": "f-divisor: complete slices with the common tail fan; deg empty or the "
                         "Minkowski sum of slice polyhedra, properly inside its tail cone",
            "verdicts": verdicts, "failures": rep.failures}, _exit(verdicts)


def cmd_check(path: str, args) -> tuple[dict, int]:
    S = load_fdivisor(path)
    rep = validate_fdivisor(S)
    if not rep:
        raise InputError(path, f"not a valid f-divisor: {rep.failures}")
    name, fn, text = CRITERIA[args.criterion]
    res = fn(S)
    verdicts = {name: res.verdict}
    return {"command": "check", "input": {"file": path, "criterion": args.criterion},
            "criterion": text, "verdicts": verdicts, "witness": res.failures}, _exit(verdicts)


def _load_pair(path, sf_path):
    S = load_fdivisor(path)
    rep = validate_fdivisor(S)
    if not rep:
        raise InputError(path, f"not a valid f-divisor: {rep.failures}")
    h = load_sf(sf_path, S)
    rep = validate_sf(S, h)
    if not rep:
        raise InputError(sf_path, f"not a valid support function: {rep.failures}")
    return S, h


def cmd_divisor(path: str, args) -> tuple[dict, int]:
    S, h = _load_pair(path, args.sf)
    D = divisor(S, h)
    out = {
        "horizontal": [{"ray": list(r), "coefficient": rat_str(c)} for r, c in sorted(D.horizontal.items())],
        "vertical": [{"point": point_str(p), "vertex": _vec(v), "coefficient": rat_str(c)}
                     for (p, v), c in sorted(D.vertical.items(), key=lambda kv: (point_key(kv[0][0]), kv[0][1]))],
        "string": str(D),
    }
    return {"command": "divisor", "input": {"file": path, "sf": args.sf},
            "criterion": "D_h = -sum lin(rho) D_rho - sum mu(v) h_P(v) D_(P,v)",
            "divisor": out, "verdicts": {"effective": is_effective(S, h)}}, 0


def cmd_ample(path: str, args) -> tuple[dict, int]:
    S, h = _load_pair(path, args.sf)
    rep = ample_necessary(S, h)
    b = box(S, h)
    duals = []
    if b is not None:
        for p in h.support(S) + [GENERIC]:
            for u in b.vertices:
                duals.append({"point": point_str(p) if p != GENERIC else GENERIC, "u": _vec(u),
                              "value": rat_str(dual_value(S, h, p, u))})
    verdicts = {"ample_necessary_passed": rep.verdict}
    return {"command": "ample-check", "input": {"file": path, "sf": args.sf},
            "criterion": "necessary conditions for ampleness: every h_P strongly concave and "
                         "h*_P >= 0 on Box_h",
            "box": None if b is None else polyhedron_to_json(b), "dualValues": duals,
            "verdicts": verdicts, "failures": rep.failures}, _exit(verdicts)


def cmd_polar(path: str, args) -> tuple[dict, int]:
    S, h = _load_pair(path, args.sf)
    try:
        q = parse_point(args.point)
    except FDivisorError as e:
        raise InputError("--point", str(e)) from None
    ncells = len(S.slice(q).cells)
    if not 0 <= args.cell < ncells:
        raise InputError("--cell", f"cell {args.cell} out of range ({ncells} cells)")
    base = {"command": "polar-chart",
            "input": {"file": path, "sf": args.sf, "point": point_str(q), "cell": args.cell},
            "criterion": "polar chart: h^inf linearly equivalent to h, effective, vanishing exactly "
                         "on the chosen cell, with lattice-translate zero sets off {0, inf}"}
    try:
        pc = polar_chart(S, h, q, args.cell)
    except FDivisorError as e:
        return {**base, "verdicts": {"preconditions_hold": False}, "error": str(e)}, 1
    post = check_polar_chart(S, h, q, args.cell, pc)
    verdicts = {"preconditions_hold": True, **post}
    return {**base, "verdicts": verdicts, "sf": sf_to_json(pc.h), "u": _vec(pc.u),
            "roles": {"zero": point_str(pc.zero_point), "infinity": point_str(pc.infinity_point)},
            "shifts": {point_str(p): rat_str(a) for p, a in sorted(pc.shifts.items(), key=lambda kv: point_key(kv[0]))},
            "exceptional": [point_str(p) for p in pc.exceptional]}, _exit(verdicts)


def _mono_json(names, exps):
    return [{"var": names[v], "exp": e} for v, e in sorted(exps.items())]


def cmd_cox(path: str, args) -> tuple[dict, int]:
    S = load_fdivisor(path)
    try:
        pres = cox_presentation(S)
    except CoxError as e:
        raise InputError(path, str(e)) from None
    names = pres.names
    report = {
        "command": "cox", "input": {"file": path},
        "criterion": "Cox ring of a complexity-one T-variety: generators S_rho, T_(P,v); "
                     "relations z*T^mu(0) + T^mu(inf) + T^mu(z)",
        "generators": [{"var": names[v], "kind": "S", "ray": list(r)} for v, r in pres.s_vars] +
                      [{"var": names[v], "kind": "T", "point": point_str(p), "vertex": _vec(vert), "mu": m}
                       for v, p, vert, m in pres.t_vars],
        "relations": [{"z": rat_str(z), "at0": _mono_json(names, m0), "atInf": _mono_json(names, mi),
                       "atZ": _mono_json(names, mz)} for z, m0, mi, mz in pres.relations],
        "ring": pres.ring_string(),
    }
    try:
        f = normalized_form(pres)
        report["normalized"] = {
            "blocks": [{"point": lab, "monomial": [{"var": names[v], "exp": e} for v, e in b],
                        "linear": flag} for lab, b, flag in zip(f.labels, f.blocks, f.linear_flags())],
            "relations": [pres.render(r) for r in f.relations()],
            "allLinearFromA1": f.satisfies_linearity(),
        }
        verdicts = {"normalized_form_exists": True}
    except CoxError as e:
        report["normalized"] = None
        report["error"] = str(e)
        verdicts = {"normalized_form_exists": False}
    report["verdicts"] = verdicts
    return report, _exit(verdicts)


def _spec(args) -> cm.SVSpec:
    try:
        return cm.SVSpec(args.dims, args.degs)
    except ValueError as e:
        raise InputError("--dims/--degs", str(e)) from None


def cmd_secant(_path, args) -> tuple[dict, int]:
    spec = _spec(args)
    if args.ideal_degree < 1:
        raise InputError("--ideal-degree", "must be >= 1")
    r = cm.classify(spec)
    labels, rels = cm.chart_relations(spec, tangential=args.tangential, maxdeg=args.ideal_degree)
    report = {
        "command": "secant", "input": {"dims": list(spec.dims), "degs": list(spec.degs),
                                       "tangential": args.tangential, "idealDegree": args.ideal_degree},
        "criterion": "secant/tangential chart structure from the polytope P and the degeneracy dichotomy",
        "dimX": r.dimX, "dimP": r.dimP, "dimSec": r.dimSec, "dimTan": r.dimTan,
        "latticePointsOfP": [list(u) for u in r.latticePointsOfP],
        "verticesOfP": [_vec(v) for v in r.verticesOfP],
        "variety": "tangential" if args.tangential else "secant",
        "monoidGenerators": [list(u) for u in (r.tangentialMonoidGenerators if args.tangential
                                               else r.secantMonoidGenerators)],
        "labels": labels,
        "relations": [g.render(labels) for g in rels],
        "signConvention": r.signConvention,
        "verdicts": {"degenerate": r.degenerate},
    }
    return report, 0


def sv_verify(spec: cm.SVSpec, seed: int = 0, points: int = 5) -> dict:
    """The cumulant identity suite for one spec; every entry is a boolean."""
    rng = random.Random(seed)
    idx = cm.index_set(spec)
    sym = cm.symbolic_point(spec)
    xs = cm.eval_sec(spec, sym)
    sub = {("x", c): v for c, v in xs.items()}
    pullback = all(cm.z_poly(c).subs(sub) == cm.sec_pullback_formula(spec, c, sym) for c in idx)
    decomposition = True
    roundtrip = True
    for _ in range(points):
        p = cm.random_point(spec, rng)
        zs = cm.z_values(spec, cm.eval_sec(spec, p))
        mm = cm.monomial_map(spec, cm.rep_map(p))
        decomposition &= all(mm[c] == zs[c] for c in idx)
        x = {c: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for c in idx}
        roundtrip &= cm.x_values(spec, cm.z_values(spec, x)) == x
    r = cm.classify(spec)
    return {"pullback_identity": pullback, "decomposition": decomposition, "round_trip": roundtrip,
            "dimSec_matches_jacobian": r.dimSec == cm.sec_jacobian_rank(spec, rng),
            "dimTan_matches_jacobian": r.dimTan == cm.tan_jacobian_rank(spec, rng)}


def cmd_sv_verify(_path, args) -> tuple[dict, int]:
    spec = _spec(args)
    verdicts = sv_verify(spec, args.seed)
    return {"command": "sv-verify", "input": {"dims": list(spec.dims), "degs": list(spec.degs), "seed": args.seed},
            "criterion": "cumulant identities: pullback formula, sec = m o rep, x -> z -> x round trip, "
                         "dimensions against Jacobian ranks",
            "signConvention": cm.Z_SIGN_CONVENTION, "verdicts": verdicts}, _exit(verdicts)


COMMANDS = {
    "validate-fdivisor": cmd_validate, "check": cmd_check, "divisor": cmd_divisor,
    "ample-check": cmd_ample, "polar-chart": cmd_polar, "cox": cmd_cox,
    "secant": cmd_secant, "sv-verify": cmd_sv_verify,
}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for several input files")
    p = argparse.ArgumentParser(prog="flexcone", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate-fdivisor", parents=[common], help="validate f-divisor files")
    s.add_argument("files", nargs="+")
    s = sub.add_parser("check", parents=[common], help="toric / covering / flexibility criteria")
    s.add_argument("files", nargs="+")
    s.add_argument("--criterion", choices=sorted(CRITERIA), required=True)
    for name, helptext in (("divisor", "invariant divisor of a support function"),
                           ("ample-check", "necessary ampleness conditions")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("files", nargs=1)
        s.add_argument("--sf", required=True)
    s = sub.add_parser("polar-chart", parents=[common], help="polar chart support function")
    s.add_argument("files", nargs=1)
    s.add_argument("--sf", required=True)
    s.add_argument("--point", required=True)
    s.add_argument("--cell", type=int, required=True)
    s = sub.add_parser("cox", parents=[common], help="trinomial Cox presentation")
    s.add_argument("files", nargs="+")
    for name, helptext in (("secant", "secant/tangential chart structure"),
                           ("sv-verify", "cumulant identity suite")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--dims", type=int, nargs="+", required=True)
        s.add_argument("--degs", type=int, nargs="+", required=True)
        if name == "secant":
            s.add_argument("--tangential", action="store_true")
            s.add_argument("--ideal-degree", type=int, default=3)
        else:
            s.add_argument("--seed", type=int, default=0)
    return p


def _run_one(command: str, path, args) -> tuple[dict, int]:
    try:
        return COMMANDS[command](path, args)
    except (InputError, FDivisorError, GeometryError) as e:
        return {"command": command, "input": {"file": path} if path else {}, "error": str(e)}, 2


def _text(report: dict) -> str:
    lines = []
    if "error" in report and "verdicts" not in report:
        return f"error: {report['error']}"
    for key, val in report.items():
        if key in ("command", "verdicts"):
            continue
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    for name, v in report.get("verdicts", {}).items():
        lines.append(f"verdict {name}: {'true' if v else 'false'}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    paths = getattr(args, "files", None) or [None]
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_one, [args.command] * len(paths), paths, [args] * len(paths)))
    else:
        results = [_run_one(args.command, p, args) for p in paths]
    reports = [r for r, _ in results]
    code = max(c for _, c in results)
    if args.format == "json":
        print(dumps(reports[0] if len(reports) == 1 else {"reports": reports}))
    else:
        print("\n\n".join(_text(r) for r in reports))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
