"""Chart coordinates of the map from the wonderful model to the Grassmannian.

A model point is stored as value tuples (alpha(z_A))_{alpha in A} on
irreducible flats, each defined up to a common scale.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .arrangements import (
    Arrangement,
    RootSystem,
    apply_group_element,
    counterexample_arrangement,
    group_elements,
    theta_for,
)
from .exact import EPS, RationalFunction, Subspace, dot, format_scalar, rref_pivots
from .exact.poly import leading_value, valuation
from .flats import (
    AdaptedBasis,
    Flat,
    NestedSet,
    adapted_bases,
    irreducible_flats,
    make_flat,
    maximal_nested_sets,
    minimal_containing,
)
from .holonomy import OnHyperplaneError, central_element, gaudin_subalgebra, limit_gaudin


class ChartError(ValueError):
    pass


def projective_normal(values: Sequence) -> tuple:
    """Scale so the first nonzero entry is 1."""
    lead = next((v for v in values if v != 0), None)
    if lead is None:
        raise ChartError("projective value tuple is zero")
    return tuple(v / lead for v in values)


@dataclass(frozen=True, eq=False)
class ModelPoint:
    values: Mapping[Flat, tuple]

    def value(self, flat: Flat, alpha: int):
        return self.values[flat][flat.members.index(alpha)]

    def normalized(self) -> dict[Flat, tuple]:
        return {f: projective_normal(v) for f, v in self.values.items()}

    def restrict(self, flats) -> "ModelPoint":
        return ModelPoint({f: self.values[f] for f in flats})

    def __eq__(self, other):
        if not isinstance(other, ModelPoint):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(tuple(sorted(self.normalized().items())))

    def to_json(self) -> dict:
        return {"flats": [{"members": list(f.members), "values": [format_scalar(x) for x in v]}
                          for f, v in sorted(self.values.items())]}


def interior_model_point(arr: Arrangement, z, flats=None) -> ModelPoint:
    """(alpha(z))_{alpha in A} on every irreducible flat A."""
    vals = [arr.evaluate(a, z) for a in range(len(arr))]
    for a, v in enumerate(vals):
        if v == 0:
            raise OnHyperplaneError(f"point lies on the hyperplane of {arr.labels[a]}")
    flats = irreducible_flats(arr) if flats is None else flats
    return ModelPoint({f: tuple(vals[a] for a in f) for f in flats})


def limit_model_point(arr: Arrangement, path, flats=None) -> ModelPoint:
    """Projective limits of the flat projections of z(eps) as eps -> 0."""
    path = [p if isinstance(p, RationalFunction) else RationalFunction(p) for p in path]
    vals = [dot(arr.covectors[a], path) for a in range(len(arr))]
    if any(v == 0 for v in vals):
        raise OnHyperplaneError("path lies generically on a hyperplane")
    flats = irreducible_flats(arr) if flats is None else flats
    out = {}
    for f in flats:
        entries = [vals[a] for a in f]
        v = min(valuation(e) for e in entries)
        out[f] = tuple(leading_value(e * RationalFunction.eps() ** (-v), 0) for e in entries)
    return ModelPoint(out)


@dataclass(frozen=True, eq=False)
class Chart:
    arrangement: Arrangement
    nested: NestedSet
    adapted: AdaptedBasis
    theta: Mapping[Flat, int]
    coeffs: Mapping[int, tuple] = field(repr=False)
    home: Mapping[int, Flat] = field(repr=False)

    @property
    def basis(self) -> tuple[int, ...]:
        return self.adapted.basis

    def n(self, alpha: int, beta: int):
        return self.coeffs[alpha][self.basis.index(beta)]

    def support(self, alpha: int) -> list[int]:
        return [b for b, c in zip(self.basis, self.coeffs[alpha]) if c != 0]

    def free(self, a: Flat) -> list[int]:
        """Members of ``a`` outside every member of the nested set below it."""
        below = set().union(*(f.members for f in self.nested.below(a))) if self.nested.below(a) else set()
        return [x for x in a if x not in below]


def valid_thetas(arr: Arrangement, s: NestedSet, b: AdaptedBasis, a: Flat) -> list[int]:
    """Members theta of ``a`` with nonzero coefficient on every basis element in ``a``."""
    basis = b.basis
    inside = [x for x in basis if x in a]
    out = []
    for t in a:
        n = dict(zip(basis, arr.coefficients(t, basis)))
        if all(n[x] != 0 for x in inside) and minimal_containing(arr, s, t) == a:
            out.append(t)
    return out


def make_chart(arr: Arrangement, s: NestedSet, b: AdaptedBasis, rs: RootSystem | None = None,
               theta: Mapping[Flat, int] | None = None, require_theta: bool = True) -> Chart:
    """Chart data for (S, B); theta_A from the Coxeter construction when B is simple, else by scan.

    With ``require_theta=False`` flats without a valid theta are left out of
    the theta map; such a chart supports coordinates but not the left inverse.
    """
    basis = b.basis
    chosen = dict(theta or {})
    for a in s:
        if a in chosen:
            if chosen[a] not in valid_thetas(arr, s, b, a):
                raise ChartError(f"theta {chosen[a]} invalid for flat {a.members}")
            continue
        inside = [x for x in basis if x in a]
        if rs is not None and all(x in rs.simple for x in inside):
            t = theta_for(rs, inside)
            if t not in a:
                raise ChartError("theta is outside its flat")
            chosen[a] = t
            continue
        cands = valid_thetas(arr, s, b, a)
        if not cands and not require_theta:
            continue
        if not cands:
            raise ChartError(f"no root with full support on the basis of flat {a.members}")
        chosen[a] = cands[0]
    coeffs = {x: arr.coefficients(x, basis) for x in range(len(arr))}
    home = {x: minimal_containing(arr, s, x) for x in range(len(arr))}
    return Chart(arr, s, b, chosen, coeffs, home)


def in_U_S(p: ModelPoint, chart: Chart) -> bool:
    for a in chart.nested:
        if a not in p.values:
            raise ChartError(f"model point has no value on flat {a.members}")
        if any(p.value(a, x) == 0 for x in chart.free(a)):
            return False
    return True


@dataclass(frozen=True)
class ChartCoordinates:
    """c[alpha][beta] for alpha outside the basis and beta in supp(alpha)."""

    basis: tuple[int, ...]
    rows: Mapping[int, Mapping[int, object]]

    def row_sums(self) -> dict[int, object]:
        return {a: sum(r.values(), Fraction(0)) for a, r in self.rows.items()}

    def to_json(self) -> dict:
        return {"basis": list(self.basis),
                "rows": [{"alpha": a, "coeffs": {str(b): format_scalar(c) for b, c in sorted(r.items())}}
                         for a, r in sorted(self.rows.items())]}


def chart_embed(p: ModelPoint, chart: Chart) -> ChartCoordinates:
    """c_{alpha,beta} = n_{alpha,beta} beta(z_A)/alpha(z_A) with A the smallest member containing alpha."""
    if not in_U_S(p, chart):
        raise ChartError("point is outside the chart domain")
    arr = chart.arrangement
    rows = {}
    for x in range(len(arr)):
        if x in chart.basis:
            continue
        a = chart.home[x]
        denom = p.value(a, x)
        rows[x] = {b: chart.n(x, b) * p.value(a, b) / denom for b in chart.support(x)}
    return ChartCoordinates(chart.basis, rows)


def subspace_from_coordinates(arr: Arrangement, basis: Sequence[int], c: ChartCoordinates) -> Subspace:
    """Solutions of t*_alpha = sum_beta c_{alpha,beta} t*_beta, alpha outside the basis."""
    vecs = []
    for b in basis:
        v = [Fraction(0)] * len(arr)
        v[b] = Fraction(1)
        for a, row in c.rows.items():
            if b in row:
                v[a] = row[b]
        vecs.append(tuple(v))
    return Subspace.span(vecs, len(arr))


def coordinates_of(chart: Chart, s: Subspace) -> ChartCoordinates:
    """Read c_{alpha,beta} off a subspace whose projection onto the basis span is onto.

    Enforces the support condition and the row-sum condition.
    """
    basis = chart.basis
    if s.dim != len(basis):
        raise ChartError("subspace has the wrong dimension")
    sub = [[row[b] for b in basis] for row in s.basis]
    aug = [list(r) + list(row) for r, row in zip(sub, s.basis)]
    red, piv = rref_pivots(aug)
    if piv[: len(basis)] != list(range(len(basis))):
        raise ChartError("subspace is not in the basis chart")
    normal = [r[len(basis):] for r in red[: len(basis)]]
    rows = {}
    for x in range(len(chart.arrangement)):
        if x in basis:
            continue
        full = {b: normal[k][x] for k, b in enumerate(basis)}
        supp = set(chart.support(x))
        if any(v != 0 for b, v in full.items() if b not in supp):
            raise ChartError(f"coordinate outside supp of {chart.arrangement.labels[x]} is nonzero")
        row = {b: full[b] for b in chart.support(x)}
        if sum(row.values(), Fraction(0)) != 1:
            raise ChartError(f"row sum for {chart.arrangement.labels[x]} is not 1")
        rows[x] = row
    return ChartCoordinates(basis, rows)


def left_inverse_phi(chart: Chart, s) -> ModelPoint:
    """Recover the model point on the nested-set flats from a chart subspace.

    beta(z_A) = c_{theta,beta}/n_{theta,beta} for beta in B cap A, extended
    linearly to A; this normalizes theta(z_A) = 1.
    """
    c = s if isinstance(s, ChartCoordinates) else coordinates_of(chart, s)
    arr = chart.arrangement
    out = {}
    for a in chart.nested:
        if a not in chart.theta:
            raise ChartError(f"chart has no theta for flat {a.members}")
        t = chart.theta[a]
        inside = [b for b in chart.basis if b in a]
        if t in chart.basis:
            vals = {t: Fraction(1) / chart.n(t, t)}
        else:
            vals = {b: c.rows[t][b] / chart.n(t, b) for b in inside}
        full = {b: vals.get(b, Fraction(0)) for b in inside}
        out[a] = tuple(sum((chart.n(x, b) * full[b] for b in inside), Fraction(0)) for x in a)
    return ModelPoint(out)


def simple_charts(rs: RootSystem) -> list[Chart]:
    """Charts of every maximal nested set admitting an adapted basis of simple roots, one per such basis."""
    arr = rs.base
    out = []
    for s in maximal_nested_sets(arr):
        for b in adapted_bases(arr, s):
            if all(x in rs.simple for x in b.basis):
                out.append(make_chart(arr, s, b, rs))
    return out


def translate_nested(rs: RootSystem, g, s: NestedSet) -> NestedSet:
    """g(S): the group element permutes roots (up to sign) and hence flats."""
    return NestedSet(tuple(make_flat(rs.base, [apply_group_element(rs, g, a) for a in f]) for f in s))


def simple_translate(rs: RootSystem, s: NestedSet):
    """(g, g(S), B) with B an all-simple adapted basis of g(S), or None."""
    for g in group_elements(rs):
        t = translate_nested(rs, g, s)
        for b in adapted_bases(rs.base, t):
            if all(x in rs.simple for x in b.basis):
                return g, t, b
    return None


# ------------------------------------------------------------------ counterexample


_FIVE = {"a1": (1, 0, 0), "a2": (0, 1, 0), "a3": (0, 0, 1), "a1+a2": (1, 1, 0), "a1+a3": (1, 0, 1)}


def counterexample_form(arr: Arrangement, s: Subspace):
    """(lambda, mu) with s = span(C, l1 t_a2 + l2 t_a1+a2, m1 t_a3 + m2 t_a1+a3), or None."""
    by_vec = {tuple(c): k for k, c in enumerate(arr.covectors)}
    idx = {lab: by_vec[tuple(Fraction(x) for x in v)] for lab, v in _FIVE.items()}
    n = len(arr)

    def plane(x, y):
        rows = []
        for k in (x, y):
            v = [Fraction(0)] * n
            v[idx[k]] = Fraction(1)
            rows.append(tuple(v))
        return Subspace.span(rows, n)

    c = central_element(arr)
    if s.dim != 3 or c not in s:
        return None
    lam_line = s.intersection(plane("a2", "a1+a2"))
    mu_line = s.intersection(plane("a3", "a1+a3"))
    if lam_line.dim != 1 or mu_line.dim != 1:
        return None
    lv, mv = lam_line.basis[0], mu_line.basis[0]
    if Subspace.span([c, lv, mv], n) != s:
        return None
    lam = projective_normal((lv[idx["a2"]], lv[idx["a1+a2"]]))
    mu = projective_normal((mv[idx["a3"]], mv[idx["a1+a3"]]))
    return lam, mu


def counterexample_report(arr: Arrangement | None = None) -> dict:
    """Non-injectivity certificate and subspace-form checks for the five-line arrangement."""
    arr = counterexample_arrangement() if arr is None else arr
    wanted = {tuple(Fraction(x) for x in c) for c in _FIVE.values()}
    if arr.rank != 3 or len(arr) != 5 or set(map(tuple, arr.covectors)) != wanted:
        raise ChartError("not the five-line counterexample arrangement")
    top = [f for f in irreducible_flats(arr) if len(f) == len(arr)]
    paths = {"(eps,1,1)": [EPS, 1, 1], "(eps,1,2)": [EPS, 1, 2], "(1,eps,1)": [1, EPS, 1],
             "(eps,eps,1)": [EPS, EPS, 1], "(1,1,eps)": [1, 1, EPS]}
    entries = []
    limits = {}
    for name, path in paths.items():
        sub = limit_gaudin(arr, path)
        pt = limit_model_point(arr, path)
        limits[name] = (sub, pt)
        form = counterexample_form(arr, sub)
        entries.append({
            "path": name,
            "subspace": sub.to_json(),
            "z_Delta": [format_scalar(x) for x in projective_normal(pt.values[top[0]])],
            "form": None if form is None else {"lambda": [format_scalar(x) for x in form[0]],
                                               "mu": [format_scalar(x) for x in form[1]]},
        })
    a_sub, a_pt = limits["(eps,1,1)"]
    b_sub, b_pt = limits["(eps,1,2)"]
    interior = counterexample_form(arr, gaudin_subalgebra(arr, (1, 2, 3)))
    theta_summary = []
    for s in maximal_nested_sets(arr):
        bases = adapted_bases(arr, s)
        good = [b for b in bases if all(valid_thetas(arr, s, b, a) for a in s)]
        theta_summary.append({"nested": s.to_json()["flats"], "adapted_bases": len(bases),
                              "bases_with_theta": len(good)})
    return {
        "paths": entries,
        "same_subspace": a_sub == b_sub,
        "distinct_model_points": a_pt != b_pt,
        "non_injective": a_sub == b_sub and a_pt != b_pt,
        "all_forms_ok": all(e["form"] is not None for e in entries) and interior is not None,
        "interior_point": {"z": ["1", "2", "3"],
                           "lambda": [format_scalar(x) for x in interior[0]] if interior else None,
                           "mu": [format_scalar(x) for x in interior[1]] if interior else None},
        "theta": theta_summary,
        "nested_sets_without_theta": sum(1 for t in theta_summary if t["bases_with_theta"] == 0),
    }


def all_theta_choices(arr: Arrangement, s: NestedSet, b: AdaptedBasis):
    """Every assignment of a valid theta to each flat."""
    flats = list(s)
    options = [valid_thetas(arr, s, b, a) for a in flats]
    for pick in product(*options):
        yield dict(zip(flats, pick))
