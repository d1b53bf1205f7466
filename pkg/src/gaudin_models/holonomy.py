"""Degree <= 2 part of the holonomy Lie algebra and Gaudin subalgebras.

Brackets of degree-one elements live in Lambda^2 of the generator span
modulo the quadratic relations, so commutativity questions about subspaces
of the generator span reduce to exact linear algebra here.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .arrangements import Arrangement
from .exact import RationalFunction, Subspace, nullspace, rref_pivots, subspace_limit
from .flats import Flat, closure

MAX_RANDOM_TRIES = 1000


class OnHyperplaneError(ValueError):
    pass


def rank2_flats(arr: Arrangement) -> list[Flat]:
    flats = {closure(arr, [a, b]) for a in range(len(arr)) for b in range(a + 1, len(arr))}
    return sorted(flats)


class Degree2Algebra:
    """Lambda^2(span t_alpha) modulo [t_a, sum_{b in W} t_b] for rank-2 flats W."""

    def __init__(self, arr: Arrangement):
        self.arrangement = arr
        n = len(arr)
        self.pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        self.flats2 = rank2_flats(arr)
        rows = []
        for w in self.flats2:
            for a in w:
                rows.append(self.relation_row(a, w))
        self.relation_rows = rows
        red, piv = rref_pivots(rows, len(self.pairs))
        self.relations = red[: len(piv)]
        self.pivots = piv

    @property
    def n(self) -> int:
        return len(self.arrangement)

    @property
    def wedge_dim(self) -> int:
        return len(self.pairs)

    @property
    def relation_rank(self) -> int:
        return len(self.relations)

    @property
    def quotient_dim(self) -> int:
        return self.wedge_dim - self.relation_rank

    def relation_row(self, a: int, w: Flat) -> tuple:
        """t_a wedge sum_{b in W, b != a} t_b."""
        row = [Fraction(0)] * len(self.pairs)
        for b in w:
            if b == a:
                continue
            if a < b:
                row[self.pair_index[(a, b)]] += 1
            else:
                row[self.pair_index[(b, a)]] -= 1
        return tuple(row)

    def wedge(self, x: Sequence, y: Sequence) -> tuple:
        return tuple(x[a] * y[b] - x[b] * y[a] for a, b in self.pairs)

    def reduce(self, v: Sequence) -> tuple:
        v = list(v)
        for row, p in zip(self.relations, self.pivots):
            f = v[p]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """Canonical residue of x wedge y modulo the relations."""
        return self.reduce(self.wedge(x, y))

    def commute(self, x, y) -> bool:
        return all(c == 0 for c in self.bracket(x, y))

    def is_abelian(self, s) -> bool:
        rows = s.basis if isinstance(s, Subspace) else list(s)
        return all(self.commute(rows[i], rows[j]) for i in range(len(rows)) for j in range(i + 1, len(rows)))

    def generator(self, a: int) -> tuple:
        return tuple(Fraction(int(i == a)) for i in range(self.n))

    def centralizer(self, s) -> Subspace:
        """{x : [x, u] = 0 for all u in s}."""
        rows = s.basis if isinstance(s, Subspace) else list(s)
        eqs = []
        for u in rows:
            cols = [self.bracket(self.generator(a), u) for a in range(self.n)]
            eqs.extend(tuple(col[k] for col in cols) for k in range(self.wedge_dim))
        eqs = [e for e in eqs if any(c != 0 for c in e)]
        return Subspace.span(nullspace(eqs, self.n), self.n)

    def subspace(self, rows) -> Subspace:
        return Subspace.span(rows, self.n)


def central_element(arr: Arrangement) -> tuple:
    return tuple(Fraction(1) for _ in range(len(arr)))


def _check_off_hyperplanes(arr: Arrangement, z) -> list:
    vals = [arr.evaluate(a, z) for a in range(len(arr))]
    for a, v in enumerate(vals):
        if v == 0:
            raise OnHyperplaneError(f"point lies on the hyperplane of {arr.labels[a]}")
    return vals


def gaudin_hamiltonian(arr: Arrangement, z, w) -> tuple:
    """H(w) = sum_alpha alpha(w)/alpha(z) t_alpha."""
    vals = _check_off_hyperplanes(arr, z)
    return tuple(arr.evaluate(a, w) / vals[a] for a in range(len(arr)))


def _unit(r: int, i: int) -> tuple:
    return tuple(Fraction(int(k == i)) for k in range(r))


def hamiltonian_basis(arr: Arrangement, z) -> list[tuple]:
    return [gaudin_hamiltonian(arr, z, _unit(arr.rank, i)) for i in range(arr.rank)]


def gaudin_subalgebra(arr: Arrangement, z) -> Subspace:
    return Subspace.span(hamiltonian_basis(arr, z), len(arr))


def limit_gaudin(arr: Arrangement, path) -> Subspace:
    """Limit as eps -> 0 of the Gaudin subalgebra along z(eps)."""
    path = [p if isinstance(p, RationalFunction) else RationalFunction(p) for p in path]
    if len(path) != arr.rank:
        raise ValueError(f"path has {len(path)} coordinates, expected {arr.rank}")
    try:
        rows = hamiltonian_basis(arr, path)
    except OnHyperplaneError as exc:
        raise OnHyperplaneError(f"path lies generically on a hyperplane: {exc}") from exc
    return subspace_limit(rows)


def random_point(arr: Arrangement, rng: random.Random) -> tuple:
    """Rational point with coordinates in {-9..9}/{1..9}, off every hyperplane."""
    for _ in range(MAX_RANDOM_TRIES):
        z = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(arr.rank))
        if all(arr.evaluate(a, z) != 0 for a in range(len(arr))):
            return z
    raise RuntimeError("no point off the hyperplanes found")


def greedy_abelian_search(alg: Degree2Algebra, seed: Subspace, target_dim: int,
                          rng_seed: int = 0, restarts: int = 25):
    """Heuristic search for an abelian subspace of ``target_dim`` containing ``seed``.

    Extends by elements of the current centralizer (which keeps the span
    abelian), preferring single generators.  Returns the subspace, or None
    when nothing was found; None says nothing about existence.
    """
    if not alg.is_abelian(seed):
        raise ValueError("seed must be abelian")
    rng = random.Random(rng_seed)
    for _ in range(restarts):
        current = seed
        while current.dim < target_dim:
            cent = alg.centralizer(current)
            pool = [alg.generator(a) for a in range(alg.n) if alg.generator(a) in cent]
            pool = [v for v in pool if v not in current]
            if not pool:
                pool = [v for v in cent.basis if v not in current]
            if not pool:
                break
            current = current + alg.subspace([rng.choice(pool)])
        if current.dim >= target_dim:
            if not alg.is_abelian(current):
                raise ArithmeticError("search produced a non-abelian subspace")
            return current
    return None
