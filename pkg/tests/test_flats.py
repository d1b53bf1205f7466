from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gaudin_models.arrangements import arrangement_from_covectors, counterexample_arrangement, parse_type
from gaudin_models.exact import rank
from gaudin_models.flats import (
    NestedSetError,
    adapted_bases,
    adapted_basis,
    all_flats,
    graph_nested_sets,
    irreducible_flats,
    is_maximal,
    is_nested,
    make_flat,
    maximal_nested_sets,
    minimal_containing,
    nested_set,
    top_flat,
)
from gaudin_models.graph import Graph

from oracles import brute_flats, brute_irreducible, brute_maximal_nested_count, brute_nested_condition, catalan

# Maximal nested sets for the building set of all irreducible flats.
MAXIMAL_COUNTS = {"A3": 15, "B3": 30, "A4": 105, "B4": 336, "D4": 192, "H3": 75, "I2(5)": 5}


def _rational(name):
    return parse_type(name).base


@pytest.mark.parametrize("arr", [_rational("A2"), _rational("B2"), _rational("A3"), _rational("B3"),
                                 counterexample_arrangement()], ids=["A2", "B2", "A3", "B3", "cex"])
def test_flats_match_brute_force(arr):
    covs = arr.covectors
    flats = {frozenset(f.members) for f in all_flats(arr)}
    assert flats == brute_flats(covs)
    irr = {frozenset(f.members) for f in irreducible_flats(arr)}
    assert irr == {f for f in flats if brute_irreducible(covs, f)}


@pytest.mark.parametrize("arr,golden", [(_rational("A2"), 3), (_rational("B2"), 4), (_rational("A3"), 15),
                                        (counterexample_arrangement(), 10)], ids=["A2", "B2", "A3", "cex"])
def test_maximal_count_matches_brute_force(arr, golden):
    maximal, irr, flats = brute_maximal_nested_count(arr.covectors)
    assert maximal == golden
    assert len(maximal_nested_sets(arr)) == golden
    assert len(irreducible_flats(arr)) == irr
    assert len(all_flats(arr)) == flats


@pytest.mark.parametrize("name", sorted(MAXIMAL_COUNTS))
def test_maximal_nested_counts(name):
    assert len(maximal_nested_sets(parse_type(name).base)) == MAXIMAL_COUNTS[name]


def test_counterexample_flat_counts():
    arr = counterexample_arrangement()
    assert len(irreducible_flats(arr)) == 8
    assert len(all_flats(arr)) == 12


@pytest.mark.parametrize("name", ["A3", "B3", "D4"])
def test_maximal_sets_have_rank_many_members(name):
    arr = parse_type(name).base
    for s in maximal_nested_sets(arr):
        assert len(s) == arr.rank
        assert top_flat(arr) in s
        assert is_maximal(arr, s)


def test_nested_examples_a3():
    arr = parse_type("A3").base
    lab = arr.index
    f12 = make_flat(arr, [lab("e1-e2")])
    f34 = make_flat(arr, [lab("e3-e4")])
    f123 = make_flat(arr, [lab("e1-e2"), lab("e2-e3"), lab("e1-e3")])
    top = top_flat(arr)
    # two disjoint A1 flats: union is a reducible flat with direct-sum span
    assert is_nested(arr, [f12, f34, top])
    # crossing A2 flats are not nested
    f234 = make_flat(arr, [lab("e2-e3"), lab("e3-e4"), lab("e2-e4")])
    assert not is_nested(arr, [f123, f234])
    s = nested_set(arr, [f12, f123, top])
    assert is_maximal(arr, s)
    with pytest.raises(NestedSetError):
        make_flat(arr, [lab("e1-e2"), lab("e2-e3")])
    reducible = make_flat(arr, [lab("e1-e2"), lab("e3-e4")])
    with pytest.raises(NestedSetError):
        nested_set(arr, [reducible])


def test_minimal_containing():
    arr = parse_type("A3").base
    lab = arr.index
    f12 = make_flat(arr, [lab("e1-e2")])
    f123 = make_flat(arr, [lab("e1-e2"), lab("e2-e3"), lab("e1-e3")])
    s = nested_set(arr, [f12, f123, top_flat(arr)])
    assert minimal_containing(arr, s, lab("e1-e2")) == f12
    assert minimal_containing(arr, s, lab("e1-e3")) == f123
    assert minimal_containing(arr, s, lab("e3-e4")) == top_flat(arr)
    with pytest.raises(NestedSetError):
        minimal_containing(arr, nested_set(arr, [f12]), lab("e1-e2"))


def test_adapted_bases_a2():
    arr = parse_type("A2").base
    # each maximal set is {one line, Delta}: the line is forced, Delta picks one of the other two
    for s in maximal_nested_sets(arr):
        bases = adapted_bases(arr, s)
        assert len(bases) == 2
        for b in bases:
            assert rank([arr.covectors[i] for i in b.basis]) == 2
    s = maximal_nested_sets(arr)[0]
    line = s.flats[0]
    with pytest.raises(NestedSetError):
        adapted_basis(arr, s, {line: line.members[0], top_flat(arr): line.members[0]})


def test_adapted_bases_span_every_member():
    arr = parse_type("B3").base
    for s in maximal_nested_sets(arr):
        for b in adapted_bases(arr, s):
            for a in s:
                assert arr.span_rank([x for x in b.basis if x in a]) == a.dim


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_path_graph_nested_sets_are_catalan(n):
    assert len(graph_nested_sets(Graph.path(n), maximal_only=True)) == catalan(n)


def test_cycle_and_star_graph_counts():
    # cyclohedra have binomial(2n-2, n-1) vertices; the 3-leaf stellohedron has 16
    assert len(graph_nested_sets(Graph.cycle(3), maximal_only=True)) == 6
    assert len(graph_nested_sets(Graph.cycle(4), maximal_only=True)) == 20
    assert len(graph_nested_sets(Graph.star(4), maximal_only=True)) == 16


small_vec = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).filter(any)


def _normalise(vs):
    out = []
    for v in vs:
        if all(rank([v, w]) == 2 for w in out):
            out.append(v)
    return out


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.lists(small_vec, min_size=3, max_size=6).map(_normalise).filter(lambda vs: len(vs) >= 3 and rank(vs) == 3))
def test_random_rank3_arrangements_match_oracle(vs):
    arr = arrangement_from_covectors(3, vs)
    maximal, irr, flats = brute_maximal_nested_count(arr.covectors)
    assert len(maximal_nested_sets(arr)) == maximal
    assert len(irreducible_flats(arr)) == irr
    all_f = {frozenset(f.members) for f in all_flats(arr)}
    for s in maximal_nested_sets(arr):
        assert brute_nested_condition(arr.covectors, [frozenset(f.members) for f in s], all_f)
    for i, j in combinations(range(len(arr)), 2):
        f = make_flat(arr, [k for k in range(len(arr)) if rank([vs[i], vs[j], vs[k]]) == 2])
        assert f.dim == 2
