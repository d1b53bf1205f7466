"""Command-line interface; JSON on stdout, logs on stderr."""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import acceptance
from .arrangements import (
    Arrangement,
    ArrangementError,
    RootSystem,
    arrangement_from_json,
    counterexample_arrangement,
    group_order,
    parse_type,
)
from .associahedra import PolytopeError, enumerate_vertices, f_vector, off_export, polytope_json
from .bn import FamilyError, b2_centrality_check, b2_family_report, b3_component, b3_intersection_report
from .bn import COMPONENTS, bn_algebra, family_span, random_params
from .charts import (
    ChartError,
    chart_embed,
    counterexample_report,
    interior_model_point,
    left_inverse_phi,
    make_chart,
    simple_charts,
    subspace_from_coordinates,
    valid_thetas,
)
from .exact import ExpressionError, format_scalar, parse_eps, parse_scalar
from .flats import (
    NestedSetError,
    adapted_bases,
    adapted_basis,
    all_flats,
    irreducible_flats,
    is_maximal,
    maximal_nested_sets,
    nested_set,
)
from .graph import GraphError, parse_graph_spec
from .holonomy import Degree2Algebra, OnHyperplaneError, central_element, gaudin_subalgebra, limit_gaudin, random_point

DOMAIN_ERRORS = (ArrangementError, ChartError, NestedSetError, GraphError, PolytopeError, FamilyError,
                 OnHyperplaneError, ExpressionError, ValueError, ZeroDivisionError, KeyError)


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _arrangement(args) -> tuple[Arrangement, RootSystem | None]:
    if args.input:
        return arrangement_from_json(_load_json(args.input)), None
    if not args.type:
        raise UsageError("give --type (with --rank) or --input")
    if args.type.lower() == "counterexample":
        return counterexample_arrangement(), None
    rs = parse_type(args.type, args.rank)
    return rs.base, rs


def _point(arr: Arrangement, text: str) -> tuple:
    parts = [p for p in text.split(",")]
    if len(parts) != arr.rank:
        raise ValueError(f"point has {len(parts)} coordinates, expected {arr.rank}")
    return tuple(parse_scalar(p, arr.field) for p in parts)


def _vec(v) -> list[str]:
    return [format_scalar(x) for x in v]


def _flat_json(arr, f) -> dict:
    return {"members": list(f.members), "labels": [arr.labels[a] for a in f], "dim": f.dim}


def cmd_roots(args):
    arr, rs = _arrangement(args)
    out = rs.to_json() if rs is not None else arr.to_json()
    out["count"] = len(arr)
    if rs is not None and rs.rank <= 4:
        out["group_order"] = group_order(rs)
    return out


def cmd_flats(args):
    arr, _ = _arrangement(args)
    flats = all_flats(arr)
    irr = set(irreducible_flats(arr))
    return {"count": len(flats), "irreducible_count": len(irr),
            "flats": [dict(_flat_json(arr, f), irreducible=f in irr) for f in flats]}


def _nested_from_file(arr, path):
    data = _load_json(path)
    s = nested_set(arr, [tuple(f) for f in data["flats"]])
    basis = data.get("basis")
    return s, basis


def cmd_nested(args):
    arr, rs = _arrangement(args)
    if args.nested:
        s, basis = _nested_from_file(arr, args.nested)
        out = {"nested": True, "flats": [_flat_json(arr, f) for f in s], "maximal": is_maximal(arr, s)}
        if out["maximal"]:
            out["adapted_bases"] = [list(b.basis) for b in adapted_bases(arr, s)]
        return out
    sets = maximal_nested_sets(arr)
    out = {"maximal_count": len(sets), "irreducible_flats": len(irreducible_flats(arr))}
    if args.maximal:
        out["maximal_nested_sets"] = [s.to_json()["flats"] for s in sets]
    return out


def cmd_gaudin(args):
    arr, _ = _arrangement(args)
    z = _point(arr, args.point) if args.point else random_point(arr, random.Random(args.seed))
    s = gaudin_subalgebra(arr, z)
    alg = Degree2Algebra(arr)
    return {"point": _vec(z), "subspace": s.to_json(), "dim": s.dim, "abelian": alg.is_abelian(s),
            "contains_center": central_element(arr) in s}


def cmd_limit(args):
    arr, _ = _arrangement(args)
    if not args.path:
        raise UsageError("limit needs --path")
    if arr.field is not None:
        raise ValueError("limits are supported over the rationals only")
    path = [parse_eps(p) for p in args.path.split(",")]
    s = limit_gaudin(arr, path)
    alg = Degree2Algebra(arr)
    return {"path": [str(p) for p in path], "subspace": s.to_json(), "dim": s.dim,
            "abelian": alg.is_abelian(s), "contains_center": central_element(arr) in s}


def cmd_chart(args):
    arr, rs = _arrangement(args)
    if args.type and args.type.lower() == "counterexample" and not args.point:
        return counterexample_report(arr)
    if args.nested:
        s, basis = _nested_from_file(arr, args.nested)
        if basis is None:
            choices = [b for b in adapted_bases(arr, s) if all(valid_thetas(arr, s, b, a) for a in s)]
            if not choices:
                raise ChartError("no adapted basis of this nested set admits theta")
            b = choices[0]
        else:
            b = adapted_basis(arr, s, basis)
        chart = make_chart(arr, s, b, rs)
    elif rs is not None:
        charts = simple_charts(rs)
        if not charts:
            raise ChartError("no chart with a simple adapted basis")
        chart = charts[0]
    else:
        raise UsageError("chart needs --nested for a non-Coxeter arrangement")
    z = _point(arr, args.point) if args.point else random_point(arr, random.Random(args.seed))
    p = interior_model_point(arr, z)
    c = chart_embed(p, chart)
    sub = subspace_from_coordinates(arr, chart.basis, c)
    back = left_inverse_phi(chart, sub)
    return {
        "point": _vec(z),
        "nested": chart.nested.to_json()["flats"],
        "theta": {",".join(map(str, f.members)): t for f, t in sorted(chart.theta.items())},
        "coordinates": c.to_json(),
        "subspace": sub.to_json(),
        "equals_gaudin": sub == gaudin_subalgebra(arr, z),
        "left_inverse": back.to_json(),
        "roundtrip": back == p.restrict(chart.nested),
    }


def cmd_assoc(args):
    if not args.graph:
        raise UsageError("assoc needs --graph")
    g = parse_graph_spec(args.graph)
    if not g.is_connected():
        raise GraphError("graph must be connected")
    out = {}
    if args.f_vector:
        out["f_vector"] = list(f_vector(g))
    if args.vertices:
        out["vertices"] = [{"nested": [sorted(i) for i in ns], "vertex": _vec(v)} for ns, v in enumerate_vertices(g)]
    if args.off:
        Path(args.off).write_text(off_export(g))
        out["off"] = args.off
    if not out:
        out = polytope_json(g)
    return out


def cmd_bn(args):
    n = args.rank or 3
    if n == 2:
        r = b2_family_report(seed=args.seed)
        return {"n": 2, "central": b2_centrality_check(), "components": [],
                "families": r, "intersections": r["intersection"]}
    if n == 3:
        alg = bn_algebra(3)
        rng = random.Random(args.seed)
        comps = []
        for name, d in COMPONENTS.items():
            checks = []
            for _ in range(10):
                p = random_params(name, rng)
                checks.append({"params": _vec(p), "abelian": alg.is_abelian(b3_component(name, p))})
            comps.append({"name": name, "dimension": d.dimension, "checks": checks})
        r = b3_intersection_report(seed=args.seed)
        return {"n": 3, "components": comps, "intersections": r["points"],
                "six_points_distinct": r["six_points_distinct"],
                "A_pair_vs_B123_evidence": r["A_pair_vs_B123_evidence"]}
    if n < 2:
        raise FamilyError("B_n needs n >= 2")
    alg = bn_algebra(n)
    rng = random.Random(args.seed)
    checks = []
    for _ in range(10):
        z = tuple(random_point(alg.arrangement, rng))
        for variant in ("B", "A"):
            s = family_span(n, z, variant)
            checks.append({"z": _vec(z), "family": variant, "dim": s.dim, "abelian": alg.is_abelian(s),
                           "contains_center": central_element(alg.arrangement) in s})
    return {"n": n, "components": [], "families": checks, "intersections": []}


def cmd_verify(args):
    try:
        results = acceptance.run_suite(args.suite, seed=args.seed, verbose=args.verbose)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    out = {"seed": args.seed, "suite": args.suite, "passed": all(r.passed for r in results),
           "results": [r.to_json() for r in results]}
    return out


COMMANDS = {
    "roots": cmd_roots, "flats": cmd_flats, "nested": cmd_nested, "gaudin": cmd_gaudin, "limit": cmd_limit,
    "chart": cmd_chart, "assoc": cmd_assoc, "bn": cmd_bn, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaudin-models", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", help="A, B, D, I2, H, joined forms like B3 or I2(5), or 'counterexample'")
        p.add_argument("--rank", type=int, help="rank (or m for I2)")
        p.add_argument("--input", help="arrangement JSON file")
        p.add_argument("--point", help="comma-separated coordinates")
        p.add_argument("--path", help="comma-separated expressions in eps")
        p.add_argument("--nested", help="nested-set JSON file")
        p.add_argument("--graph", help="path:n, cycle:n, star:n or inline JSON")
        p.add_argument("--f-vector", action="store_true")
        p.add_argument("--vertices", action="store_true")
        p.add_argument("--off", help="write OFF export to this file")
        p.add_argument("--maximal", action="store_true")
        p.add_argument("--suite", default="all")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--verbose", action="store_true")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(message)s")
    try:
        out = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    _emit(out)
    if args.command == "verify":
        return 0 if out["passed"] else 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
