from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaudin_models.arrangements import counterexample_arrangement, parse_type
from gaudin_models.charts import (
    ChartCoordinates,
    ChartError,
    ModelPoint,
    all_theta_choices,
    chart_embed,
    coordinates_of,
    counterexample_form,
    counterexample_report,
    in_U_S,
    interior_model_point,
    left_inverse_phi,
    limit_model_point,
    make_chart,
    simple_charts,
    simple_translate,
    subspace_from_coordinates,
    valid_thetas,
)
from gaudin_models.exact import EPS, RationalFunction, Subspace
from gaudin_models.flats import adapted_bases, adapted_basis, make_flat, maximal_nested_sets, nested_set, top_flat
from gaudin_models.holonomy import central_element, gaudin_subalgebra, limit_gaudin, random_point

F = Fraction


def _chart(name, line_label, basis_labels):
    rs = parse_type(name)
    arr = rs.base
    line = make_flat(arr, [arr.index(line_label)])
    s = nested_set(arr, [line, top_flat(arr)])
    pick = {line: arr.index(line_label)}
    pick[top_flat(arr)] = next(arr.index(b) for b in basis_labels if b != line_label)
    return rs, arr, make_chart(arr, s, adapted_basis(arr, s, pick), rs)


def test_a2_chart_coordinates():
    rs, arr, ch = _chart("A2", "e1-e2", ["e1-e2", "e2-e3"])
    p = interior_model_point(arr, (F(1), F(2)))
    assert p.values[top_flat(arr)] == (1, 2, 3)
    c = chart_embed(p, ch)
    top = arr.index("e1-e3")
    assert c.rows[top] == {arr.index("e1-e2"): F(1, 3), arr.index("e2-e3"): F(2, 3)}
    sub = subspace_from_coordinates(arr, ch.basis, c)
    assert sub == gaudin_subalgebra(arr, (F(1), F(2)))
    back = left_inverse_phi(ch, sub)
    assert back.normalized()[top_flat(arr)] == (1, 2, 3)


def test_b2_chart_coordinates():
    rs, arr, ch = _chart("B2", "e2", ["e1-e2", "e2"])
    p = interior_model_point(arr, (F(3), F(1)))
    c = chart_embed(p, ch)
    top = arr.index("e1+e2")
    assert c.rows[top] == {arr.index("e1-e2"): F(1, 2), arr.index("e2"): F(1, 2)}
    # e1 = (e1-e2) + e2: with z=(3,1), c = (2/3, 1/3)
    assert c.rows[arr.index("e1")] == {arr.index("e1-e2"): F(2, 3), arr.index("e2"): F(1, 3)}


@settings(max_examples=30, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9))
def test_b2_closed_form(z1, z2):
    rs, arr, ch = _chart("B2", "e2", ["e1-e2", "e2"])
    z = (F(z1), F(z2))
    if any(arr.evaluate(a, z) == 0 for a in range(len(arr))):
        return
    c = chart_embed(interior_model_point(arr, z), ch)
    row = c.rows[arr.index("e1+e2")]
    assert row[arr.index("e1-e2")] == (z[0] - z[1]) / (z[0] + z[1])
    assert row[arr.index("e2")] == 2 * z[1] / (z[0] + z[1])
    assert all(v == 1 for v in c.row_sums().values())


def test_in_U_S_examples():
    rs, arr, ch = _chart("A2", "e1-e2", ["e1-e2", "e2-e3"])
    line, top = ch.nested.flats
    assert in_U_S(interior_model_point(arr, (F(1), F(2))), ch)
    # alpha2(z_Delta) = 0 with alpha2 free at Delta
    assert not in_U_S(ModelPoint({line: (F(1),), top: (F(1), F(0), F(1))}), ch)
    # alpha1(z_Delta) = 0 is allowed since {alpha1} is in S
    assert in_U_S(ModelPoint({line: (F(1),), top: (F(0), F(1), F(1))}), ch)
    with pytest.raises(ChartError):
        in_U_S(ModelPoint({top: (F(1), F(2), F(3))}), ch)
    with pytest.raises(ChartError):
        chart_embed(ModelPoint({line: (F(1),), top: (F(1), F(0), F(1))}), ch)


def test_interior_point_counts():
    arr = counterexample_arrangement()
    assert len(interior_model_point(arr, (F(1), F(2), F(3))).values) == 8


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_roundtrip_for_every_theta_choice(name):
    rs = parse_type(name)
    arr = rs.base
    rng = random.Random(name)
    choices = 0
    for s in maximal_nested_sets(arr):
        for b in adapted_bases(arr, s):
            for theta in all_theta_choices(arr, s, b):
                ch = make_chart(arr, s, b, theta=theta)
                choices += 1
                for _ in range(3):
                    z = random_point(arr, rng)
                    p = interior_model_point(arr, z)
                    c = chart_embed(p, ch)
                    sub = subspace_from_coordinates(arr, ch.basis, c)
                    assert sub == gaudin_subalgebra(arr, z)
                    assert coordinates_of(ch, sub) == c
                    assert left_inverse_phi(ch, sub) == p.restrict(s)
    assert choices > 0


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_every_adapted_basis_roundtrips(name):
    rs = parse_type(name)
    arr = rs.base
    rng = random.Random(name)
    for s in maximal_nested_sets(arr):
        for b in adapted_bases(arr, s):
            if not all(valid_thetas(arr, s, b, a) for a in s):
                continue
            ch = make_chart(arr, s, b)
            z = random_point(arr, rng)
            p = interior_model_point(arr, z)
            assert left_inverse_phi(ch, gaudin_subalgebra(arr, z)) == p.restrict(s)


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_every_nested_set_has_simple_translate(name):
    rs = parse_type(name)
    for s in maximal_nested_sets(rs.base):
        assert simple_translate(rs, s) is not None
    assert len({ch.nested for ch in simple_charts(rs)}) > 0


def test_theta_for_simple_bases_is_valid():
    rs = parse_type("B3")
    for ch in simple_charts(rs):
        for a, t in ch.theta.items():
            assert t in valid_thetas(rs.base, ch.nested, ch.adapted, a)


def test_coordinates_of_rejects_bad_subspaces():
    rs, arr, ch = _chart("B2", "e2", ["e1-e2", "e2"])
    with pytest.raises(ChartError):
        coordinates_of(ch, Subspace.span([(1, 0, 0, 0)], 4))
    # row sums different from 1
    bad = ChartCoordinates(ch.basis, {a: {b: F(1) for b in ch.support(a)} for a in range(4) if a not in ch.basis})
    sub = subspace_from_coordinates(arr, ch.basis, bad)
    with pytest.raises(ChartError):
        left_inverse_phi(ch, sub)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=6, max_size=6))
def test_row_sum_one_contains_center(vals):
    arr = parse_type("A3").base
    s = maximal_nested_sets(arr)[3]
    ch = make_chart(arr, s, adapted_bases(arr, s)[0], require_theta=False)
    it = iter(vals)
    rows = {}
    for a in range(len(arr)):
        if a in ch.basis:
            continue
        supp = ch.support(a)
        row = {b: next(it, F(0)) for b in supp[:-1]}
        row[supp[-1]] = 1 - sum(row.values(), F(0))
        rows[a] = row
    sub = subspace_from_coordinates(arr, ch.basis, ChartCoordinates(ch.basis, rows))
    assert sub.dim == arr.rank and central_element(arr) in sub


def test_degenerate_coordinates_match_limit():
    rs, arr, ch = _chart("A2", "e1-e2", ["e1-e2", "e2-e3"])
    top = arr.index("e1-e3")
    c = ChartCoordinates(ch.basis, {top: {arr.index("e1-e2"): F(0), arr.index("e2-e3"): F(1)}})
    sub = subspace_from_coordinates(arr, ch.basis, c)
    # alpha1 small along z = (eps, 1)
    assert sub == limit_gaudin(arr, [EPS, RationalFunction(1)])


def test_boundary_left_inverse_matches_limit_point():
    rs = parse_type("A3")
    arr = rs.base
    path = [EPS, RationalFunction(1), RationalFunction(1) + EPS]
    sub = limit_gaudin(arr, path)
    lim_pt = limit_model_point(arr, path)
    hits = 0
    for ch in simple_charts(rs):
        try:
            c = coordinates_of(ch, sub)
        except ChartError:
            continue
        if not in_U_S(lim_pt, ch):
            continue
        hits += 1
        assert left_inverse_phi(ch, c) == lim_pt.restrict(ch.nested)
    assert hits > 0


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_injectivity_spot_check(name):
    arr = parse_type(name).base
    one = RationalFunction(1)
    pieces = [EPS, EPS * EPS, one, 2 * one, 1 + EPS, 3 * one]
    rng = random.Random(name)
    seen = {}
    for _ in range(30):
        path = [rng.choice(pieces) for _ in range(arr.rank)]
        try:
            sub = limit_gaudin(arr, path)
            pt = limit_model_point(arr, path)
        except ValueError:
            continue
        key = sub.basis
        if key in seen:
            assert seen[key] == pt
        seen[key] = pt


def test_counterexample():
    r = counterexample_report()
    assert r["same_subspace"] and r["distinct_model_points"] and r["non_injective"]
    by_path = {e["path"]: e for e in r["paths"]}
    assert by_path["(eps,1,1)"]["z_Delta"][:3] == ["0", "1", "1"]
    assert by_path["(eps,1,2)"]["z_Delta"][:3] == ["0", "1", "2"]
    assert by_path["(1,eps,1)"]["form"] is not None
    assert r["all_forms_ok"]
    # lambda = (1/2 : 1/3), mu = (1/3 : 1/4) up to scale
    assert r["interior_point"]["lambda"] == ["1", "2/3"]
    assert r["interior_point"]["mu"] == ["1", "3/4"]
    assert r["nested_sets_without_theta"] == 2


def test_counterexample_form_rejects_other_subspaces():
    arr = counterexample_arrangement()
    assert counterexample_form(arr, Subspace.span([central_element(arr)], 5)) is None
    with pytest.raises(ChartError):
        counterexample_report(parse_type("A3").base)
