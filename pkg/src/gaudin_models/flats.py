"""Flats, irreducible flats, nested sets and adapted bases of an arrangement.

Nested-set condition used throughout: for every antichain A_1..A_k (k >= 2)
of the family, the union is itself a flat and the spans are independent,
so the A_i are exactly the irreducible components of their union.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .arrangements import Arrangement
from .exact import reduce_vector, rref_pivots
from .graph import Graph, GraphError

MAX_NESTED_COVECTORS = 20


class NestedSetError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Flat:
    dim: int
    members: tuple[int, ...]

    def __contains__(self, alpha) -> bool:
        return alpha in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def issubset(self, other: "Flat") -> bool:
        return set(self.members) <= set(other.members)

    def proper_subset(self, other: "Flat") -> bool:
        return self.members != other.members and self.issubset(other)

    def comparable(self, other: "Flat") -> bool:
        return self.issubset(other) or other.issubset(self)


def _closure_cache(arr: Arrangement) -> dict:
    cache = arr.__dict__.get("_closure_cache")
    if cache is None:
        cache = {}
        arr.__dict__["_closure_cache"] = cache
    return cache


def closure(arr: Arrangement, subset: Iterable[int]) -> Flat:
    """The flat <subset> cap Delta."""
    key = frozenset(subset)
    if not key:
        raise NestedSetError("closure of the empty set")
    cache = _closure_cache(arr)
    if key not in cache:
        basis, piv = rref_pivots([arr.covectors[i] for i in sorted(key)])
        basis = basis[: len(piv)]
        members = tuple(i for i, c in enumerate(arr.covectors)
                        if i in key or all(x == 0 for x in reduce_vector(c, basis, piv)))
        cache[key] = Flat(len(piv), members)
    return cache[key]


def is_flat(arr: Arrangement, subset) -> bool:
    return closure(arr, subset).members == tuple(sorted(set(subset)))


def make_flat(arr: Arrangement, subset) -> Flat:
    f = closure(arr, subset)
    if f.members != tuple(sorted(set(subset))):
        raise NestedSetError(f"{sorted(set(subset))} is not a flat")
    return f


def irreducible_components(arr: Arrangement, flat: Flat) -> list[Flat]:
    """Connected components of the matroid on ``flat``.

    Components are read off the fundamental-circuit graph of one basis:
    every non-basis element is joined to the basis elements in its support.
    The resulting direct-sum decomposition is verified explicitly.
    """
    members = list(flat.members)
    basis: list[int] = []
    for a in members:
        if arr.span_rank(basis + [a]) > len(basis):
            basis.append(a)
    parent = {a: a for a in members}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in members:
        if a in basis:
            continue
        n = arr.coefficients(a, basis)
        for b, c in zip(basis, n):
            if c != 0:
                parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for a in members:
        groups.setdefault(find(a), []).append(a)
    comps = sorted(Flat(arr.span_rank(g), tuple(sorted(g))) for g in groups.values())
    if sum(c.dim for c in comps) != flat.dim:
        raise ArithmeticError("component spans do not form a direct sum")
    for c in comps:
        if not is_flat(arr, c.members):
            raise ArithmeticError("matroid component is not a flat")
    return comps


def is_irreducible(arr: Arrangement, flat: Flat) -> bool:
    return len(irreducible_components(arr, flat)) == 1


def all_flats(arr: Arrangement) -> list[Flat]:
    """Every flat, generated rank by rank from closures of a flat plus one covector."""
    level = {closure(arr, [a]) for a in range(len(arr))}
    out = set(level)
    while level:
        nxt = set()
        for f in level:
            for a in range(len(arr)):
                if a not in f:
                    nxt.add(closure(arr, f.members + (a,)))
        nxt -= out
        out |= nxt
        level = nxt
    return sorted(out)


def irreducible_flats(arr: Arrangement) -> list[Flat]:
    cache = arr.__dict__.get("_irreducible_flats")
    if cache is None:
        cache = [f for f in all_flats(arr) if is_irreducible(arr, f)]
        arr.__dict__["_irreducible_flats"] = cache
    return list(cache)


def flat_order(flats: Sequence[Flat]) -> list[tuple[int, int]]:
    """Pairs (i, j) with flats[i] a proper subset of flats[j]."""
    return [(i, j) for i, a in enumerate(flats) for j, b in enumerate(flats) if a.proper_subset(b)]


@dataclass(frozen=True)
class NestedSet:
    flats: tuple[Flat, ...]

    def __post_init__(self):
        object.__setattr__(self, "flats", tuple(sorted(set(self.flats))))

    def __iter__(self):
        return iter(self.flats)

    def __len__(self):
        return len(self.flats)

    def __contains__(self, f) -> bool:
        return f in self.flats

    def below(self, a: Flat) -> list[Flat]:
        """Members properly contained in ``a``."""
        return [f for f in self.flats if f.proper_subset(a)]

    def maximal_below(self, a: Flat) -> list[Flat]:
        inner = self.below(a)
        return [f for f in inner if not any(f.proper_subset(g) for g in inner)]

    def to_json(self) -> dict:
        return {"flats": [list(f.members) for f in self.flats]}


def _antichain_ok(arr: Arrangement, group: Sequence[Flat]) -> bool:
    union = set().union(*(f.members for f in group))
    if not is_flat(arr, union):
        return False
    return arr.span_rank(union) == sum(f.dim for f in group)


def _compatible(arr: Arrangement, current: Sequence[Flat], new: Flat) -> bool:
    others = [f for f in current if not f.comparable(new)]
    for k in range(1, len(others) + 1):
        for group in combinations(others, k):
            if all(not a.comparable(b) for a, b in combinations(group, 2)):
                if not _antichain_ok(arr, group + (new,)):
                    return False
    return True


def _check_members(arr: Arrangement, flats) -> list[Flat]:
    out = []
    for f in flats:
        if not isinstance(f, Flat):
            f = make_flat(arr, f)
        elif not is_flat(arr, f.members):
            raise NestedSetError(f"{f.members} is not a flat")
        if not is_irreducible(arr, f):
            raise NestedSetError(f"{f.members} is reducible")
        out.append(f)
    return out


def is_nested(arr: Arrangement, flats) -> bool:
    flats = _check_members(arr, flats)
    for k in range(2, len(flats) + 1):
        for group in combinations(flats, k):
            if all(not a.comparable(b) for a, b in combinations(group, 2)):
                if not _antichain_ok(arr, group):
                    return False
    return True


def nested_set(arr: Arrangement, flats) -> NestedSet:
    flats = _check_members(arr, flats)
    if not is_nested(arr, flats):
        raise NestedSetError("flats do not form a nested set")
    return NestedSet(tuple(flats))


def top_flat(arr: Arrangement) -> Flat:
    return closure(arr, range(len(arr)))


def minimal_containing(arr: Arrangement, s: NestedSet, alpha: int) -> Flat:
    """The unique minimal member of ``s`` containing alpha (requires Delta in s)."""
    if top_flat(arr) not in s:
        raise NestedSetError("nested set must contain Delta")
    chain = sorted((f for f in s if alpha in f), key=lambda f: len(f))
    for a, b in zip(chain, chain[1:]):
        if not a.issubset(b):
            raise NestedSetError("members containing alpha are not linearly ordered")
    return chain[0]


def is_maximal(arr: Arrangement, s: NestedSet) -> bool:
    flats = list(s)
    return not any(f not in s and _compatible(arr, flats, f) for f in irreducible_flats(arr))


def maximal_nested_sets(arr: Arrangement) -> list[NestedSet]:
    """All maximal nested sets, by backtracking over the irreducible flats."""
    if len(arr) > MAX_NESTED_COVECTORS:
        raise NestedSetError(f"nested-set enumeration limited to {MAX_NESTED_COVECTORS} covectors")
    cache = arr.__dict__.get("_maximal_nested")
    if cache is not None:
        return list(cache)
    flats = irreducible_flats(arr)
    found: list[NestedSet] = []

    def extend(start: int, current: list[Flat]):
        for i in range(start, len(flats)):
            f = flats[i]
            if _compatible(arr, current, f):
                current.append(f)
                extend(i + 1, current)
                current.pop()
        # maximal iff no flat at all (earlier ones included) can be added
        if not any(f not in current and _compatible(arr, current, f) for f in flats):
            found.append(NestedSet(tuple(current)))

    extend(0, [])
    result = sorted(set(found), key=lambda s: s.flats)
    for s in result:
        for a in s:
            if sum(f.dim for f in s.maximal_below(a)) != a.dim - 1:
                raise ArithmeticError("maximal nested set violates the dimension count")
    arr.__dict__["_maximal_nested"] = result
    return list(result)


@dataclass(frozen=True)
class AdaptedBasis:
    nested: NestedSet
    choice: tuple[tuple[Flat, int], ...]

    @property
    def basis(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.choice)

    def chosen(self, f: Flat) -> int:
        return dict(self.choice)[f]

    def to_json(self) -> dict:
        return {"pairs": [[list(f.members), a] for f, a in self.choice]}


def adapted_candidates(s: NestedSet, a: Flat) -> list[int]:
    excluded = set().union(*(f.members for f in s.below(a))) if s.below(a) else set()
    return [x for x in a.members if x not in excluded]


def adapted_bases(arr: Arrangement, s: NestedSet) -> list[AdaptedBasis]:
    """Every choice alpha_A in A minus its members-below, forming an adapted basis."""
    if not is_maximal(arr, s):
        raise NestedSetError("adapted bases need a maximal nested set")
    flats = list(s)
    out = []
    for pick in product(*(adapted_candidates(s, a) for a in flats)):
        if arr.span_rank(pick) != arr.rank or len(set(pick)) != arr.rank:
            continue
        if all(arr.span_rank([b for b in pick if b in a]) == a.dim for a in flats):
            out.append(AdaptedBasis(s, tuple(zip(flats, pick))))
    return out


def adapted_basis(arr: Arrangement, s: NestedSet, pick: dict[Flat, int] | Sequence[int]) -> AdaptedBasis:
    """Validate an explicit choice (mapping flat -> covector, or sequence aligned with ``s.flats``)."""
    if not isinstance(pick, dict):
        pick = dict(zip(s.flats, pick))
    for a in s:
        if pick.get(a) not in adapted_candidates(s, a):
            raise NestedSetError(f"invalid choice for flat {a.members}")
    chosen = [pick[a] for a in s]
    if arr.span_rank(chosen) != arr.rank or len(chosen) != arr.rank:
        raise NestedSetError("choice is not a basis")
    for a in s:
        if arr.span_rank([b for b in chosen if b in a]) != a.dim:
            raise NestedSetError(f"choice does not span flat {a.members}")
    return AdaptedBasis(s, tuple((a, pick[a]) for a in s))


# ------------------------------------------------------------ nested sets on graphs


def connected_proper_subgraphs(g: Graph) -> list[frozenset]:
    if not g.is_connected():
        raise GraphError("graph must be connected")
    out = []
    vs = list(g.vertices)
    for k in range(1, len(vs)):
        for sub in combinations(vs, k):
            if g.is_connected_subset(sub):
                out.append(frozenset(sub))
    return out


def _graph_compatible(g: Graph, a: frozenset, b: frozenset) -> bool:
    return a <= b or b <= a or g.separated(a, b)


def graph_nested_sets(g: Graph, maximal_only: bool = False) -> list[tuple[frozenset, ...]]:
    """Families of connected proper subgraphs, pairwise nested or separated."""
    subs = connected_proper_subgraphs(g)
    order = {v: i for i, v in enumerate(g.vertices)}

    def key(s):
        return (len(s), sorted(order[v] for v in s))

    subs.sort(key=key)
    out = []

    def extend(start, current):
        for i in range(start, len(subs)):
            s = subs[i]
            if all(_graph_compatible(g, s, t) for t in current):
                current.append(s)
                extend(i + 1, current)
                current.pop()
        if maximal_only:
            if any(s not in current and all(_graph_compatible(g, s, t) for t in current) for s in subs):
                return
            if len(current) != len(g) - 1:
                raise ArithmeticError("maximal graph nested set of unexpected size")
        out.append(tuple(current))

    extend(0, [])
    return sorted(out, key=lambda ns: (len(ns), [key(s) for s in ns]))


def graph_nested_to_flats(arr: Arrangement, simple: Sequence[int], ns) -> NestedSet:
    """Flats generated by the simple roots of each subgraph, plus Delta.

    Graph vertices are positions into ``simple``.
    """
    flats = [closure(arr, [simple[v] for v in sub]) for sub in ns]
    flats.append(top_flat(arr))
    return NestedSet(tuple(flats))
