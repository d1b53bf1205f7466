"""Acceptance checks, each returning a pass flag and deterministic details."""
from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arrangements import counterexample_arrangement, group_order, parse_type
from .associahedra import (
    brute_force_vertices,
    enumerate_vertices,
    f_vector,
    simplicity_check,
    tessellation_count,
)
from .bn import (
    COMPONENTS,
    b2_centrality_check,
    b2_family_report,
    b3_component,
    b3_intersection_report,
    bn,
    bn_algebra,
    c_delta,
    element,
    random_params,
)
from .charts import (
    ChartCoordinates,
    chart_embed,
    counterexample_report,
    interior_model_point,
    left_inverse_phi,
    make_chart,
    simple_charts,
    simple_translate,
    subspace_from_coordinates,
)
from .exact import EPS, RationalFunction, Subspace
from .flats import adapted_bases, maximal_nested_sets
from .graph import Graph
from .holonomy import Degree2Algebra, central_element, gaudin_subalgebra, limit_gaudin, random_point


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "details": self.details}


@lru_cache(maxsize=None)
def root_system(name: str):
    return parse_type(name)


GAUDIN_TYPES = ["A2", "A3", "A4", "B2", "B3", "B4", "D4", "I2(5)", "I2(7)", "H3"]
CHART_TYPES = ["A2", "A3", "B2", "B3"]


def check_gaudin(seed: int = 0, points: int = 20) -> Result:
    out = {}
    for t in GAUDIN_TYPES:
        rs = root_system(t)
        arr = rs.base
        alg = Degree2Algebra(arr)
        rng = random.Random(f"{seed}:{t}")
        c = central_element(arr)
        ok = True
        for _ in range(points):
            s = gaudin_subalgebra(arr, random_point(arr, rng))
            ok &= s.dim == arr.rank and c in s and alg.is_abelian(s)
        out[t] = ok
    return Result(1, "gaudin_commutativity", all(out.values()), out)


def _random_coordinates(chart, rng) -> ChartCoordinates:
    rows = {}
    for a in range(len(chart.arrangement)):
        if a in chart.basis:
            continue
        supp = chart.support(a)
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in supp[:-1]]
        vals.append(1 - sum(vals, Fraction(0)))
        rows[a] = dict(zip(supp, vals))
    return ChartCoordinates(chart.basis, rows)


_PATH_PIECES = [EPS, EPS * EPS, 1 + EPS, 2 * EPS, RationalFunction(1), RationalFunction(2), RationalFunction(3)]


def check_center(seed: int = 0, samples: int = 5) -> Result:
    out = {}
    arrs = [(t, root_system(t).base) for t in CHART_TYPES]
    arrs.append(("counterexample", counterexample_arrangement()))
    for name, arr in arrs:
        rng = random.Random(f"{seed}:{name}")
        c = central_element(arr)
        coords_ok, charts = True, 0
        for s in maximal_nested_sets(arr):
            for b in adapted_bases(arr, s):
                ch = make_chart(arr, s, b, require_theta=False)
                charts += 1
                for _ in range(samples):
                    sub = subspace_from_coordinates(arr, ch.basis, _random_coordinates(ch, rng))
                    coords_ok &= sub.dim == arr.rank and c in sub
        limits_ok, paths = True, 0
        for _ in range(4 * samples):
            path = [rng.choice(_PATH_PIECES) * rng.choice([1, -1, 2, 3]) for _ in range(arr.rank)]
            try:
                sub = limit_gaudin(arr, path)
            except ValueError:
                continue
            paths += 1
            limits_ok &= sub.dim == arr.rank and c in sub
        out[name] = {"charts": charts, "coordinates_ok": coords_ok, "limit_paths": paths, "limits_ok": limits_ok}
    passed = all(v["coordinates_ok"] and v["limits_ok"] and v["limit_paths"] > 0 for v in out.values())
    return Result(2, "center_in_every_subspace", passed, out)


def check_roundtrip(seed: int = 0, points: int = 10) -> Result:
    out = {}
    for t in CHART_TYPES:
        rs = root_system(t)
        arr = rs.base
        rng = random.Random(f"{seed}:{t}")
        charts = simple_charts(rs)
        ok = True
        for ch in charts:
            for _ in range(points):
                z = random_point(arr, rng)
                p = interior_model_point(arr, z)
                c = chart_embed(p, ch)
                ok &= all(v == 1 for v in c.row_sums().values())
                s = subspace_from_coordinates(arr, ch.basis, c)
                ok &= s == gaudin_subalgebra(arr, z)
                ok &= left_inverse_phi(ch, s) == p.restrict(ch.nested)
        # every maximal nested set is a G-translate of one carrying a simple chart
        homes = {ch.nested for ch in charts}
        translates = [simple_translate(rs, s) for s in maximal_nested_sets(arr)]
        covered = all(tr is not None and tr[1] in homes for tr in translates)
        out[t] = {"charts": len(charts), "nested_sets": len(homes), "orbits_covered": covered, "ok": ok}
    passed = all(v["ok"] and v["orbits_covered"] and v["charts"] > 0 for v in out.values())
    return Result(3, "chart_roundtrip", passed, out)


def check_counterexample(seed: int = 0) -> Result:
    r = counterexample_report()
    interior_ok = r["interior_point"]["lambda"] == ["1", "2/3"] and r["interior_point"]["mu"] == ["1", "3/4"]
    details = {
        "same_subspace": r["same_subspace"],
        "distinct_model_points": r["distinct_model_points"],
        "all_forms_ok": r["all_forms_ok"],
        "interior_lambda_mu_ok": interior_ok,
        "paths": [e["path"] for e in r["paths"]],
        "nested_sets_without_theta": r["nested_sets_without_theta"],
    }
    passed = r["non_injective"] and r["all_forms_ok"] and interior_ok
    return Result(4, "counterexample", passed, details)


def check_associahedra(seed: int = 0) -> Result:
    d = {
        "f_path3": list(f_vector(Graph.path(3))),
        "f_path4": list(f_vector(Graph.path(4))),
        "vertices": [len(enumerate_vertices(Graph.path(n))) for n in (3, 4, 5)],
        "simple": all(simplicity_check(g) for g in (Graph.path(3), Graph.path(4), Graph.path(5), Graph.cycle(3),
                                                     Graph.star(4))),
    }
    brute = {}
    for name, g in (("path2", Graph.path(2)), ("path3", Graph.path(3)), ("path4", Graph.path(4)),
                    ("cycle3", Graph.cycle(3))):
        brute[name] = brute_force_vertices(g) == {v for _, v in enumerate_vertices(g)}
    d["brute_force_match"] = brute
    passed = (d["f_path3"] == [5, 5] and d["f_path4"] == [14, 21, 9] and d["vertices"] == [5, 14, 42]
              and d["simple"] and all(brute.values()))
    return Result(5, "associahedra", passed, d)


def check_tessellation(seed: int = 0) -> Result:
    rs = {t: root_system(t) for t in ("A3", "B3", "H3")}
    d = {
        "tessellation": {t: tessellation_count(rs[t]) for t in ("A3", "B3")},
        "group_order": {t: group_order(r) for t, r in rs.items()},
    }
    passed = d["tessellation"] == {"A3": 12, "B3": 24} and d["group_order"] == {"A3": 24, "B3": 48, "H3": 120}
    return Result(6, "tessellation_counts", passed, d)


def check_b2(seed: int = 0) -> Result:
    central = b2_centrality_check()
    r = b2_family_report(samples=10, seed=seed)
    d = {"central": central, "abelian": r["abelian"], "conic": r["conic"], "line": r["line"],
         "intersection": r["intersection"], "named_points_are_limits": r["named_points_are_limits"],
         "sample_overlap": r["sample_overlap"]}
    return Result(7, "b2_catalogue", central and r["ok"], d)


def check_b3(seed: int = 0, samples: int = 10) -> Result:
    alg = bn_algebra(3)
    rng = random.Random(f"{seed}:b3")
    comps = {}
    for name in COMPONENTS:
        comps[name] = all(alg.is_abelian(b3_component(name, random_params(name, rng))) for _ in range(samples))
    r = b3_intersection_report(seed=seed)
    d = {"components": comps,
         "points": {p["name"]: {"ok": p["ok"], "components": p["components"]} for p in r["points"]},
         "six_points_distinct": r["six_points_distinct"],
         "A_pair_points_reached_by_family_B": sum(e["reached_by_family_B"] for e in r["A_pair_vs_B123_evidence"])}
    return Result(8, "b3_catalogue", all(comps.values()) and r["ok"], d)


def check_degree2(seed: int = 0) -> Result:
    a2 = Degree2Algebra(root_system("A2").base)
    b2 = bn_algebra(2)
    r1 = element(2, {"r1": 1})
    cent = b2.centralizer([r1])
    expected = Subspace.span([r1, c_delta(2)], len(bn(2)))
    d = {"A2": [a2.relation_rank, a2.wedge_dim, a2.quotient_dim], "B2": [b2.relation_rank, b2.wedge_dim],
         "centralizer_r1": cent.to_json()}
    passed = d["A2"] == [2, 3, 1] and d["B2"] == [3, 6] and cent == expected
    return Result(9, "degree2_structure", passed, d)


CHECKS: dict[str, tuple[int, Callable[..., Result]]] = {
    "gaudin": (1, check_gaudin),
    "center": (2, check_center),
    "roundtrip": (3, check_roundtrip),
    "counterexample": (4, check_counterexample),
    "assoc": (5, check_associahedra),
    "tessellation": (6, check_tessellation),
    "b2": (7, check_b2),
    "b3": (8, check_b3),
    "degree2": (9, check_degree2),
}


def resolve_suite(suite: str) -> list[str]:
    if suite == "all":
        return list(CHECKS)
    names = []
    by_number = {str(n): k for k, (n, _) in CHECKS.items()}
    for part in suite.split(","):
        part = part.strip()
        key = by_number.get(part, part)
        if key not in CHECKS:
            raise KeyError(f"unknown suite {part!r}")
        names.append(key)
    return names


def run_suite(suite: str = "all", seed: int = 0, verbose: bool = False) -> list[Result]:
    results = []
    for name in resolve_suite(suite):
        start = time.perf_counter()
        res = CHECKS[name][1](seed=seed)
        if verbose:
            print(f"[{name}] {'pass' if res.passed else 'FAIL'} in {time.perf_counter() - start:.1f}s",
                  file=sys.stderr)
        results.append(res)
    return results
