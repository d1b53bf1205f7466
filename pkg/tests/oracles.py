"""Independent reference implementations used only by the tests.

Each oracle recomputes a quantity by a different route from the library:
sympy for linear algebra, exhaustive subset scans for flats and nested
sets, numeric evaluation near eps = 0 for limits.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

import sympy


def sympy_rref(rows, ncols):
    m = sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(str(rows[i][j])))
    red, piv = m.rref()
    out = []
    for i in range(len(piv)):
        out.append(tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in red.row(i)))
    return out


def sympy_rank(rows, ncols):
    if not rows:
        return 0
    return sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(str(rows[i][j]))).rank()


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def span_rank(covs, idx):
    return sympy_rank([covs[i] for i in idx], len(covs[0])) if idx else 0


def brute_flats(covs):
    """All flats as closures of every nonempty subset."""
    n = len(covs)
    flats = set()
    for k in range(1, n + 1):
        for sub in combinations(range(n), k):
            r = span_rank(covs, sub)
            flats.add(frozenset(i for i in range(n) if span_rank(covs, list(sub) + [i]) == r))
    return flats


def brute_irreducible(covs, flat):
    """No split into two nonempty flats whose spans add up directly."""
    members = sorted(flat)
    total = span_rank(covs, members)
    for k in range(1, len(members)):
        for part in combinations(members, k):
            rest = [m for m in members if m not in part]
            if span_rank(covs, part) + span_rank(covs, rest) == total:
                return False
    return True


def brute_nested_condition(covs, flats, all_flats):
    """dCP nested condition checked from the definition, independently of the library."""
    for k in range(2, len(flats) + 1):
        for group in combinations(flats, k):
            if any(a <= b or b <= a for a, b in combinations(group, 2)):
                continue
            union = frozenset().union(*group)
            if union not in all_flats:
                return False
            if span_rank(covs, sorted(union)) != sum(span_rank(covs, sorted(g)) for g in group):
                return False
    return True


def brute_maximal_nested_count(covs):
    fl = brute_flats(covs)
    irr = [f for f in fl if brute_irreducible(covs, f)]
    nested = []
    for k in range(1, len(irr) + 1):
        for fam in combinations(irr, k):
            if brute_nested_condition(covs, fam, fl):
                nested.append(frozenset(fam))
    nested_set = set(nested)
    maximal = [s for s in nested if not any(s < t for t in nested_set)]
    return len(maximal), len(irr), len(fl)


def numeric_rref_at(rows, eps: Fraction):
    """Evaluate rational-function rows at a rational eps and row-reduce with sympy."""
    vals = [[x(eps) if hasattr(x, "num") else Fraction(x) for x in r] for r in rows]
    return sympy_rref(vals, len(vals[0]))


def brute_relations(covs):
    """Spanning rows t_a ^ sum_{b in W} t_b, W running over rank-2 flats found by direct rank tests."""
    n = len(covs)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    index = {p: k for k, p in enumerate(pairs)}
    flats = set()
    for a, b in combinations(range(n), 2):
        flats.add(frozenset(c for c in range(n) if span_rank(covs, [a, b, c]) == 2))
    rows = []
    for w in flats:
        for a in w:
            row = [Fraction(0)] * len(pairs)
            for b in w - {a}:
                if a < b:
                    row[index[(a, b)]] += 1
                else:
                    row[index[(b, a)]] -= 1
            rows.append(row)
    return pairs, rows


def brute_commute(covs, x, y):
    """[x, y] = 0 iff x ^ y lies in the relation span (rank test with sympy)."""
    pairs, rows = brute_relations(covs)
    w = [x[a] * y[b] - x[b] * y[a] for a, b in pairs]
    return sympy_rank(rows + [w], len(pairs)) == sympy_rank(rows, len(pairs))


def brute_centralizer_dim(covs, u):
    """n minus the rank of x -> [x, u] in the quotient."""
    pairs, rows = brute_relations(covs)
    n = len(covs)
    images = []
    for a in range(n):
        x = [Fraction(int(i == a)) for i in range(n)]
        images.append([x[p] * u[q] - x[q] * u[p] for p, q in pairs])
    base = sympy_rank(rows, len(pairs))
    return n - (sympy_rank(rows + images, len(pairs)) - base)
