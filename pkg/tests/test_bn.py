from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaudin_models.bn import (
    COMPONENTS,
    FamilyError,
    b2_centrality_check,
    b2_family_report,
    b3_component,
    b3_intersection_report,
    bn,
    bn_algebra,
    bn_labels,
    c_delta,
    c_pair,
    element,
    family_limit,
    family_rows,
    family_span,
    named_points,
    principal_family_element,
    random_params,
    solve_params,
)
from gaudin_models.exact import EPS, RationalFunction, Subspace
from gaudin_models.holonomy import gaudin_subalgebra, rank2_flats, random_point

from oracles import numeric_rref_at

F = Fraction


def test_labels_and_sizes():
    assert bn_labels(2) == ["r1", "r2", "t12", "s12"]
    for n in (2, 3, 4):
        assert len(bn(n)) == n * n
    assert len(rank2_flats(bn(2))) == 1
    with pytest.raises(FamilyError):
        bn(1)


def test_b3_rank2_flat_sizes():
    sizes = sorted(len(w) for w in rank2_flats(bn(3)))
    assert sizes.count(4) == 3 and sizes.count(3) == 4 and set(sizes) == {2, 3, 4}
    arr = bn(3)
    # {t13, s23, s12}: one of the relation groups
    assert any({arr.labels[a] for a in w} == {"t13", "s12", "s23"} for w in rank2_flats(arr))


def test_principal_element_examples():
    z = (F(1), F(2))
    assert principal_family_element(2, z, (F(1), F(0)), "B") == (1, 0, -1, F(1, 3))
    assert principal_family_element(2, z, z, "B") == c_delta(2)
    z3 = (F(1), F(2), F(5))
    assert principal_family_element(3, z3, z3, "A") == c_delta(3)
    with pytest.raises(FamilyError):
        principal_family_element(2, (F(1), F(-1)), (F(1), F(0)))
    with pytest.raises(FamilyError):
        principal_family_element(2, z, (F(1), F(0)), "C")


def test_principal_element_b2_coefficients():
    # (a1-a2)/(z1-z2) = 1/(1-2) = -1 on t12; (a1+a2)/(z1+z2) = 1/3 on s12
    v = principal_family_element(2, (F(1), F(2)), (F(1), F(0)), "B")
    assert v == element(2, {"r1": 1, "t12": -1, "s12": F(1, 3)})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_families_abelian(n):
    alg = bn_algebra(n)
    rng = random.Random(n)
    for _ in range(10):
        z = random_point(alg.arrangement, rng)
        for variant in ("B", "A"):
            s = family_span(n, z, variant)
            assert s.dim == n and c_delta(n) in s and alg.is_abelian(s)
        assert family_span(n, z, "B") == gaudin_subalgebra(alg.arrangement, z)


def test_family_limit_matches_numeric():
    path = [EPS * EPS, EPS, 1 + EPS]
    lim = family_limit(3, path, "B").basis
    rows = family_rows(3, [p if isinstance(p, RationalFunction) else RationalFunction(p) for p in path], "B")
    errs = []
    for k in (2, 3, 4):
        num = numeric_rref_at(rows, F(1, 10 ** k))
        errs.append(max(abs(x - y) for a, b in zip(num, lim) for x, y in zip(a, b)))
    assert errs[0] > errs[-1] and errs[-1] < F(1, 50)


def test_component_examples():
    alg = bn_algebra(3)
    s = b3_component("B12", (1, 1, 1))
    assert s == Subspace.span([c_delta(3), c_pair(3, 1, 2), element(3, {"r1": 1, "r2": 1, "t12": 1})], 9)
    assert alg.is_abelian(s)
    s = b3_component("A12", (1, 0))
    assert s == Subspace.span([c_delta(3), element(3, {"r1": 1, "r2": 1, "r3": 1, "t12": 1, "s12": 1}),
                               element(3, {"t12": 1})], 9)
    assert alg.is_abelian(s)
    assert b3_component("B123", (1, 2, 5)) == family_span(3, (1, 2, 5), "B")
    with pytest.raises(FamilyError):
        b3_component("B45", (1, 1, 1))
    with pytest.raises(FamilyError):
        b3_component("A12", (1, 1, 1))
    with pytest.raises(FamilyError):
        b3_component("A12", (0, 0))


def test_component_dimensions():
    assert sorted(d.dimension for d in COMPONENTS.values()) == [1, 1, 1, 2, 2, 2, 2, 2]


@pytest.mark.parametrize("name", sorted(COMPONENTS))
def test_components_abelian(name):
    alg = bn_algebra(3)
    rng = random.Random(name)
    for _ in range(10):
        s = b3_component(name, random_params(name, rng))
        assert s.dim == 3 and c_delta(3) in s and alg.is_abelian(s)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["B12", "B13", "B23", "A12", "A13", "A23"]),
       st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_solve_params_inverts_recipe(name, raw):
    params = tuple(F(x) for x in raw[:COMPONENTS[name].arity])
    if all(p == 0 for p in params):
        return
    s = b3_component(name, params)
    found = solve_params(name, s)
    if found is not None:
        assert b3_component(name, found) == s


def test_named_points():
    pts = named_points()
    assert len(pts) == 9
    assert len({s.basis for _, s, _ in pts[:6]}) == 6
    s = Subspace.span([c_delta(3), c_pair(3, 1, 2), element(3, {"r1": 1})], 9)
    assert solve_params("B12", s) == (1, 0, 0)
    a = Subspace.span([c_delta(3), element(3, {"r1": 1, "r2": 1, "r3": 1}), element(3, {"t12": 1, "s12": 1})], 9)
    assert solve_params("A12", a) == (1, 1)


def test_b3_intersection_report():
    r = b3_intersection_report()
    assert r["ok"] and r["six_points_distinct"]
    for p in r["points"][:6]:
        assert set(p["components"]) >= {"B123", "A123"}
        assert all(v is not None for v in p["components"].values())
    for p in r["points"][6:]:
        assert p["components"]["A123"] is not None
    # one-sided evidence only: none of the sampled A_ij points was reached
    assert not any(e["reached_by_family_B"] for e in r["A_pair_vs_B123_evidence"])


def test_b2_centrality():
    assert b2_centrality_check()
    alg = bn_algebra(2)
    c = c_delta(2)
    assert alg.is_abelian([c, element(2, {"r1": 1, "t12": 7})])


def _b2_point(s):
    c = c_delta(2)
    for row in s.basis:
        v = [x - row[3] * y for x, y in zip(row, c)]
        if any(v[:3]):
            return v[:3]


@settings(max_examples=30, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9))
def test_b2_families_on_conic_and_line(z1, z2):
    z = (F(z1), F(z2))
    if z1 == 0 or z2 == 0 or abs(z1) == abs(z2):
        return
    x, y, w = _b2_point(family_span(2, z, "B"))
    assert -2 * x * y + x * w + y * w == 0
    assert _b2_point(family_span(2, z, "A"))[2] == 0


def test_b2_family_report():
    r = b2_family_report()
    assert r["ok"]
    assert r["conic"] == ["0", "0", "0", "-2", "1", "1"]
    assert r["line"] == ["0", "0", "1"]
    assert r["intersection"] == [["0", "1", "0"], ["1", "0", "0"]]
