"""B_n generators r_i, t_ij, s_ij; the two explicit families; the B_2 and B_3 catalogues."""
from __future__ import annotations

import random
from math import isqrt
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from .arrangements import Arrangement, arrangement_from_covectors
from .exact import EPS, RationalFunction, Subspace, format_scalar, nullspace, rank, subspace_limit
from .holonomy import Degree2Algebra, central_element, gaudin_subalgebra


class FamilyError(ValueError):
    pass


def bn_labels(n: int) -> list[str]:
    pairs = list(combinations(range(1, n + 1), 2))
    return ([f"r{i}" for i in range(1, n + 1)] + [f"t{i}{j}" for i, j in pairs]
            + [f"s{i}{j}" for i, j in pairs])


def bn_arrangement(n: int) -> Arrangement:
    """Covectors e_i, then e_i - e_j, then e_i + e_j (i < j)."""
    if n < 2:
        raise FamilyError("B_n needs n >= 2")
    rows = []
    for i in range(n):
        rows.append(tuple(int(k == i) for k in range(n)))
    pairs = list(combinations(range(n), 2))
    for i, j in pairs:
        rows.append(tuple(int(k == i) - int(k == j) for k in range(n)))
    for i, j in pairs:
        rows.append(tuple(int(k == i) + int(k == j) for k in range(n)))
    return arrangement_from_covectors(n, [tuple(Fraction(x) for x in r) for r in rows], bn_labels(n))


_ARR_CACHE: dict[int, Arrangement] = {}
_ALG_CACHE: dict[int, Degree2Algebra] = {}


def bn(n: int) -> Arrangement:
    if n not in _ARR_CACHE:
        _ARR_CACHE[n] = bn_arrangement(n)
    return _ARR_CACHE[n]


def bn_algebra(n: int) -> Degree2Algebra:
    if n not in _ALG_CACHE:
        _ALG_CACHE[n] = Degree2Algebra(bn(n))
    return _ALG_CACHE[n]


def element(n: int, terms: dict[str, object]) -> tuple:
    """Degree-one element from {label: coefficient}."""
    arr = bn(n)
    v = [Fraction(0)] * len(arr)
    for lab, c in terms.items():
        v[arr.index(lab)] += c
    return tuple(v)


def c_delta(n: int) -> tuple:
    return central_element(bn(n))


def c_pair(n: int, i: int, j: int) -> tuple:
    return element(n, {f"r{i}": 1, f"r{j}": 1, f"t{i}{j}": 1, f"s{i}{j}": 1})


def check_family_point(z) -> None:
    for i, a in enumerate(z):
        if a == 0:
            raise FamilyError(f"z{i + 1} = 0")
        for b in z[i + 1:]:
            if a == b or a == -b:
                raise FamilyError("z coordinates must be pairwise distinct up to sign")


def principal_family_element(n: int, z, a, variant: str = "B") -> tuple:
    """sum a_i/z_i r_i + sum (a_i-a_j)/(z_i-z_j) t_ij + sum (a_i+a_j)/(z_i+z_j) s_ij.

    Variant "A" uses (a_i-a_j)/(z_i-z_j) for s_ij as well.
    """
    if len(z) != n or len(a) != n:
        raise FamilyError("z and a need n entries")
    if variant not in ("A", "B"):
        raise FamilyError(f"unknown variant {variant!r}")
    if not any(isinstance(x, RationalFunction) for x in z):
        check_family_point(z)
    terms: list = [a[i] / z[i] for i in range(n)]
    pairs = list(combinations(range(n), 2))
    terms += [(a[i] - a[j]) / (z[i] - z[j]) for i, j in pairs]
    if variant == "B":
        terms += [(a[i] + a[j]) / (z[i] + z[j]) for i, j in pairs]
    else:
        terms += [(a[i] - a[j]) / (z[i] - z[j]) for i, j in pairs]
    return tuple(terms)


def _units(n):
    return [tuple(Fraction(int(k == i)) for k in range(n)) for i in range(n)]


def family_rows(n: int, z, variant: str) -> list[tuple]:
    return [principal_family_element(n, z, a, variant) for a in _units(n)]


def family_span(n: int, z, variant: str = "B") -> Subspace:
    z = tuple(Fraction(x) for x in z)
    return Subspace.span(family_rows(n, z, variant), len(bn(n)))


def family_limit(n: int, path, variant: str = "B") -> Subspace:
    path = [p if isinstance(p, RationalFunction) else RationalFunction(p) for p in path]
    rows = family_rows(n, path, variant)
    if any(x == 0 for x in path) or any(path[i] == path[j] or path[i] == -path[j]
                                        for i, j in combinations(range(n), 2)):
        raise FamilyError("path lies on a hyperplane")
    return subspace_limit(rows)


# ------------------------------------------------------------------ B3 catalogue


@dataclass(frozen=True)
class ComponentDescriptor:
    name: str
    arity: int
    recipe: Callable

    @property
    def dimension(self) -> int:
        return self.arity - 1


def _b_pair(i, j):
    def recipe(x):
        v = element(3, {f"r{i}": x[0], f"r{j}": x[1], f"t{i}{j}": x[2]})
        return Subspace.span([c_delta(3), c_pair(3, i, j), v], 9)
    return recipe


def _a_pair(i, j):
    def recipe(y):
        u = element(3, {"r1": 1, "r2": 1, "r3": 1, f"t{i}{j}": 1, f"s{i}{j}": 1})
        v = element(3, {f"t{i}{j}": y[0], f"s{i}{j}": y[1]})
        return Subspace.span([c_delta(3), u, v], 9)
    return recipe


PAIRS = [(1, 2), (1, 3), (2, 3)]

COMPONENTS: dict[str, ComponentDescriptor] = {
    "B123": ComponentDescriptor("B123", 3, lambda z: family_span(3, z, "B")),
    "A123": ComponentDescriptor("A123", 3, lambda z: family_span(3, z, "A")),
}
for _i, _j in PAIRS:
    COMPONENTS[f"B{_i}{_j}"] = ComponentDescriptor(f"B{_i}{_j}", 3, _b_pair(_i, _j))
for _i, _j in PAIRS:
    COMPONENTS[f"A{_i}{_j}"] = ComponentDescriptor(f"A{_i}{_j}", 2, _a_pair(_i, _j))


def b3_component(name: str, params) -> Subspace:
    if name not in COMPONENTS:
        raise FamilyError(f"unknown component {name!r}")
    d = COMPONENTS[name]
    if len(params) != d.arity:
        raise FamilyError(f"{name} takes {d.arity} projective parameters")
    params = tuple(Fraction(p) for p in params)
    if all(p == 0 for p in params):
        raise FamilyError("projective parameters cannot all vanish")
    return d.recipe(params)


def random_params(name: str, rng: random.Random) -> tuple:
    d = COMPONENTS[name]
    while True:
        p = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(d.arity))
        if name in ("B123", "A123"):
            try:
                check_family_point(p)
            except FamilyError:
                continue
        if any(x != 0 for x in p):
            return p


def _projective(v):
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def solve_params(name: str, s: Subspace):
    """Projective parameters p with b3_component(name, p) == s, or None (pair components only)."""
    if name.startswith("B") and len(name) == 3:
        i, j = int(name[1]), int(name[2])
        labels = [f"r{i}", f"r{j}", f"t{i}{j}"]
    elif name.startswith("A") and len(name) == 3:
        i, j = int(name[1]), int(name[2])
        labels = [f"t{i}{j}", f"s{i}{j}"]
    else:
        raise FamilyError("parameter solving is implemented for the pair components")
    arr = bn(3)
    rows = [element(3, {lab: 1}) for lab in labels]
    line = s.intersection(Subspace.span(rows, len(arr)))
    if line.dim != 1:
        return None
    v = line.basis[0]
    p = _projective([v[arr.index(lab)] for lab in labels])
    return p if b3_component(name, p) == s else None


def named_points() -> list[tuple[str, Subspace, list[str]]]:
    """The six B123 cap A123 points and the three A_ij cap A123 points, with the components claimed to contain them."""
    out = []
    for i, j in PAIRS:
        for k in (i, j):
            s = Subspace.span([c_delta(3), c_pair(3, i, j), element(3, {f"r{k}": 1})], 9)
            out.append((f"span(c,c{i}{j},r{k})", s, [f"B{i}{j}", "B123", "A123"]))
    for i, j in PAIRS:
        s = Subspace.span([c_delta(3), element(3, {"r1": 1, "r2": 1, "r3": 1}),
                           element(3, {f"t{i}{j}": 1, f"s{i}{j}": 1})], 9)
        out.append((f"span(c,r1+r2+r3,t{i}{j}+s{i}{j})", s, [f"A{i}{j}", "A123"]))
    return out


_CANDIDATES = [
    ("1", RationalFunction(1)), ("2", RationalFunction(2)), ("eps", EPS), ("eps^2", EPS * EPS),
    ("1+eps", 1 + EPS), ("1+eps^2", 1 + EPS * EPS), ("3", RationalFunction(3)), ("2*eps", 2 * EPS), ("2+eps", 2 + EPS),
]


def candidate_paths(n: int = 3):
    """Deterministic list of simple polynomial curves, simplest first."""
    idx = list(product(range(len(_CANDIDATES)), repeat=n))
    idx.sort(key=lambda t: (sum(t), t))
    for t in idx:
        names = tuple(_CANDIDATES[k][0] for k in t)
        path = [_CANDIDATES[k][1] for k in t]
        if len(set(names)) < n:
            continue
        yield names, path


class PathSearch:
    """Cached limits of a family along the candidate curves."""

    def __init__(self, n: int = 3):
        self.n = n
        self._cache: dict[tuple, Subspace | None] = {}

    def limit(self, names, path, variant):
        key = (names, variant)
        if key not in self._cache:
            try:
                self._cache[key] = family_limit(self.n, path, variant)
            except (FamilyError, ZeroDivisionError, ValueError):
                self._cache[key] = None
        return self._cache[key]

    def find(self, target: Subspace, variant: str, budget: int | None = None):
        for k, (names, path) in enumerate(candidate_paths(self.n)):
            if budget is not None and k >= budget:
                return None
            if self.limit(names, path, variant) == target:
                return names
        return None


def b3_intersection_report(budget: int = 200, evidence_samples: int = 3, seed: int = 0) -> dict:
    alg = bn_algebra(3)
    search = PathSearch(3)
    points = []
    seen = []
    for name, s, comps in named_points():
        entry = {"name": name, "subspace": s.to_json(), "abelian": alg.is_abelian(s),
                 "contains_center": c_delta(3) in s, "components": {}, "paths": []}
        for comp in comps:
            if comp in ("B123", "A123"):
                # closure components: certified by a degeneration path of the family
                found = search.find(s, comp[0], budget)
                if found is not None:
                    entry["paths"].append({"family": comp[0], "path": list(found)})
                entry["components"][comp] = None if found is None else {"path": list(found)}
            else:
                p = solve_params(comp, s)
                entry["components"][comp] = None if p is None else {"params": [format_scalar(x) for x in p]}
        entry["certified"] = all(v is not None for v in entry["components"].values())
        entry["ok"] = entry["abelian"] and entry["contains_center"] and entry["certified"]
        points.append(entry)
        seen.append(s)
    distinct = len({tuple(map(tuple, s.basis)) for s in seen[:6]}) == 6
    # one-sided: seeded A_ij points with y_i != y_j are not limits of family B on the candidate curves
    rng = random.Random(seed)
    evidence = []
    for i, j in PAIRS:
        for _ in range(evidence_samples):
            while True:
                y = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                if y[0] != y[1] and any(v != 0 for v in y):
                    break
            s = b3_component(f"A{i}{j}", y)
            hit = search.find(s, "B", budget)
            evidence.append({"component": f"A{i}{j}", "params": [format_scalar(v) for v in y],
                             "reached_by_family_B": hit is not None})
    return {
        "points": points,
        "six_points_distinct": distinct,
        "A_pair_vs_B123_evidence": evidence,
        "paths_searched": budget,
        "ok": all(p["ok"] for p in points) and distinct,
    }


# ------------------------------------------------------------------ B2


def b2_centrality_check() -> bool:
    alg = bn_algebra(2)
    c = c_delta(2)
    return all(alg.commute(c, alg.generator(a)) for a in range(alg.n))


def _b2_quotient(s: Subspace) -> tuple:
    """Projective point of span(c, v) in P(t^1 / c), coordinates (r1, r2, t12) after removing s12 via c."""
    c = c_delta(2)
    if s.dim != 2 or c not in s:
        raise FamilyError("expected a plane through c")
    for row in s.basis:
        v = tuple(x - row[3] * y for x, y in zip(row, c))
        if any(x != 0 for x in v[:3]):
            return _projective(v[:3])
    raise FamilyError("degenerate plane")


def _conic_monomials(p):
    x, y, z = p
    return (x * x, y * y, z * z, x * y, x * z, y * z)


def b2_family_report(samples: int = 10, seed: int = 0) -> dict:
    """Both B_2 families at seeded z, their closures in P^2, and their intersection."""
    alg = bn_algebra(2)
    rng = random.Random(seed)
    zs = []
    while len(zs) < samples:
        z = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        try:
            check_family_point(z)
        except FamilyError:
            continue
        zs.append(z)
    fam_b = [family_span(2, z, "B") for z in zs]
    fam_a = [family_span(2, z, "A") for z in zs]
    abelian = all(alg.is_abelian(s) for s in fam_b + fam_a)
    center = all(c_delta(2) in s for s in fam_b + fam_a)
    pts_b = [_b2_quotient(s) for s in fam_b]
    pts_a = [_b2_quotient(s) for s in fam_a]
    # unique conic through the family B points
    conic = nullspace([_conic_monomials(p) for p in pts_b], 6)
    conic_ok = len(conic) == 1
    q = conic[0] if conic_ok else None
    if q is not None:
        a, b, cc, d, e, f = q
        nondegenerate = rank([(a, d / 2, e / 2), (d / 2, b, f / 2), (e / 2, f / 2, cc)]) == 3
    else:
        nondegenerate = False
    # line through family A points
    line = nullspace([p for p in pts_a], 3)
    line_ok = len(line) == 1
    intersection = None
    if conic_ok and line_ok:
        intersection = _conic_line_points(q, line[0])
    expected = {(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))}
    named = [Subspace.span([c_delta(2), element(2, {"r1": 1})], 4),
             Subspace.span([c_delta(2), element(2, {"r2": 1})], 4)]
    named_pts = {_b2_quotient(s) for s in named}
    # the two named points are limits of both families
    limits = {}
    for label, path in (("(eps,1)", [EPS, 1]), ("(1,eps)", [1, EPS])):
        limits[label] = {v: family_limit(2, path, v) for v in ("B", "A")}
    named_limits = all(any(lim[v] == s for lim in limits.values()) for s in named for v in ("B", "A"))
    sample_overlap = [s for s in fam_b if s in fam_a]
    return {
        "samples": [[format_scalar(x) for x in z] for z in zs],
        "abelian": abelian,
        "contains_center": center,
        "conic": None if q is None else [format_scalar(x) for x in q],
        "conic_unique": conic_ok,
        "conic_nondegenerate": nondegenerate,
        "line": [format_scalar(x) for x in line[0]] if line_ok else None,
        "intersection": None if intersection is None else sorted([[format_scalar(x) for x in p] for p in intersection]),
        "named_points_are_limits": named_limits,
        "sample_overlap": len(sample_overlap),
        "ok": (abelian and center and conic_ok and nondegenerate and line_ok and intersection is not None
               and set(intersection) == expected == named_pts and named_limits
               and all(s in named for s in sample_overlap)),
    }


def _conic_line_points(q, line) -> set | None:
    """Exact intersection of the conic q with the line l.p = 0; None if the roots are irrational or the line lies on q."""
    # parametrize the line: p = u*P + w*Q with P, Q spanning its kernel
    basis = nullspace([tuple(line)], 3)
    P, Q = basis

    def ev(p):
        return sum((c * m for c, m in zip(q, _conic_monomials(p))), Fraction(0))

    def comb(u, w):
        return tuple(u * a + w * b for a, b in zip(P, Q))

    # q(uP + wQ) = A u^2 + B u w + C w^2
    A = ev(P)
    C = ev(Q)
    B = ev(comb(1, 1)) - A - C
    if A == 0 and B == 0 and C == 0:
        return None
    pts = set()
    if A == 0:
        pts.add(_projective(P))  # w = 0 root
        if B != 0:
            pts.add(_projective(comb(-C, B)))
        return pts
    disc = B * B - 4 * A * C
    root = _rational_sqrt(disc)
    if root is None:
        return None
    for sgn in (1, -1):
        u = (-B + sgn * root) / (2 * A)
        pts.add(_projective(comb(u, 1)))
    return pts


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None
