"""Central hyperplane arrangements and finite Coxeter root systems."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .exact import (
    NON_UNIQUE,
    NO_SOLUTION,
    AlgebraicNumber,
    NumberField,
    dihedral_cos,
    dot,
    format_scalar,
    parse_scalar,
    rank,
    reduce_vector,
    rref_pivots,
    solve_linear,
)

MAX_GROUP_RANK = 4


class ArrangementError(ValueError):
    pass


def _scalar(x):
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True, eq=False)
class Arrangement:
    """Nonzero, pairwise non-proportional covectors spanning a rank-r dual space."""

    rank: int
    covectors: tuple[tuple, ...]
    labels: tuple[str, ...]
    field: NumberField | None = None

    def __post_init__(self):
        covs = tuple(tuple(_scalar(x) for x in c) for c in self.covectors)
        object.__setattr__(self, "covectors", covs)
        labels = tuple(self.labels) if self.labels else tuple(f"a{i}" for i in range(len(covs)))
        object.__setattr__(self, "labels", labels)
        if len(labels) != len(covs):
            raise ArrangementError("one label per covector required")
        for i, c in enumerate(covs):
            if len(c) != self.rank:
                raise ArrangementError(f"covector {labels[i]} has length {len(c)}, expected {self.rank}")
            if all(x == 0 for x in c):
                raise ArrangementError(f"covector {labels[i]} is zero")
        for i, j in combinations(range(len(covs)), 2):
            if rank([covs[i], covs[j]]) < 2:
                raise ArrangementError(f"covectors {labels[i]} and {labels[j]} are proportional")
        if rank(covs) != self.rank:
            raise ArrangementError("covectors do not span the dual space")

    def __len__(self):
        return len(self.covectors)

    def __eq__(self, other):
        return (isinstance(other, Arrangement) and self.rank == other.rank
                and self.covectors == other.covectors and self.labels == other.labels)

    def __hash__(self):
        return hash((self.rank, self.covectors))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def evaluate(self, alpha: int, z: Sequence) -> object:
        """alpha(z)."""
        return dot(self.covectors[alpha], z)

    def span_rank(self, indices) -> int:
        key = frozenset(indices)
        cache = self._rank_cache
        if key not in cache:
            cache[key] = rank([self.covectors[i] for i in sorted(key)]) if key else 0
        return cache[key]

    @cached_property
    def _rank_cache(self) -> dict:
        return {}

    def coefficients(self, alpha: int, basis: Sequence[int]) -> tuple:
        """n with covector[alpha] = sum_k n[k] covector[basis[k]]."""
        cols = [[self.covectors[b][i] for b in basis] for i in range(self.rank)]
        sol = solve_linear(cols, self.covectors[alpha])
        if sol is NON_UNIQUE:
            raise ArrangementError("basis covectors are not independent")
        if sol is NO_SOLUTION:
            raise ArrangementError(f"{self.labels[alpha]} is not in the span of the basis")
        return sol

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "covectors": [[format_scalar(x) for x in c] for c in self.covectors],
            "labels": list(self.labels),
        }
        if self.field is not None:
            out["scalar_ext"] = self.field.describe()
        return out


def arrangement_from_covectors(rank: int, covectors, labels=None, field: NumberField | None = None) -> Arrangement:
    return Arrangement(rank, tuple(tuple(c) for c in covectors), tuple(labels or ()), field)


def field_from_json(ext) -> NumberField | None:
    if ext is None:
        return None
    if isinstance(ext, int):
        return NumberField.quadratic(ext)
    return NumberField([Fraction(c) for c in ext["minpoly"]], ext["root"])


def arrangement_from_json(data: dict) -> Arrangement:
    fld = field_from_json(data.get("scalar_ext"))
    covs = [[parse_scalar(x, fld) for x in c] for c in data["covectors"]]
    return arrangement_from_covectors(int(data["rank"]), covs, data.get("labels"), fld)


def counterexample_arrangement() -> Arrangement:
    """Five lines in P^2: a1, a2, a3, a1+a2, a1+a3."""
    return arrangement_from_covectors(
        3,
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)],
        ["a1", "a2", "a3", "a1+a2", "a1+a3"],
    )


def support(arr: Arrangement, alpha: int, basis: Sequence[int]) -> dict[int, object]:
    """Basis elements occurring with nonzero coefficient in alpha, with coefficients."""
    n = arr.coefficients(alpha, basis)
    return {b: c for b, c in zip(basis, n) if c != 0}


# ---------------------------------------------------------------- root systems


@dataclass(frozen=True)
class CoxeterGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for a, b, _ in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Positive roots of a finite Coxeter system as an arrangement.

    ``gram`` is the inner product on the coordinate space of the covectors
    and ``simple_coeffs[k]`` expresses positive root k over the simple roots.
    """

    family: str
    param: int
    base: Arrangement
    simple: tuple[int, ...]
    gram: tuple[tuple, ...]
    graph: CoxeterGraph
    simple_coeffs: tuple[tuple, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2({self.param})"
        if self.family == "H":
            return f"H{self.param}"
        return f"{self.family}{self.param}"

    def inner(self, u, v):
        return dot(u, [dot(row, v) for row in self.gram])

    def root_index(self, v) -> int | None:
        """Index of +-v among the positive roots."""
        v = tuple(v)
        lookup = self._lookup
        if v in lookup:
            return lookup[v]
        neg = tuple(-x for x in v)
        return lookup.get(neg)

    @cached_property
    def _lookup(self) -> dict:
        return {c: i for i, c in enumerate(self.base.covectors)}

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["family"] = self.family
        out["param"] = self.param
        out["simple"] = list(self.simple)
        out["graph"] = self.graph.to_json()
        out["scalar_ext"] = self.base.field.describe() if self.base.field is not None else None
        return out


def reflect(rs: RootSystem, alpha, v) -> tuple:
    """s_alpha(v) = v - 2 (alpha, v)/(alpha, alpha) alpha; alpha may be an index."""
    if isinstance(alpha, int):
        alpha = rs.base.covectors[alpha]
    f = 2 * rs.inner(alpha, v) / rs.inner(alpha, alpha)
    return tuple(x - f * a for x, a in zip(v, alpha))


def _label_from_coeffs(coeffs, prefix="a") -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        name = f"{prefix}{i + 1}"
        if c == 1:
            parts.append(name)
        else:
            cs = str(c)
            if "+" in cs or "-" in cs[1:]:
                cs = f"({cs})"
            parts.append(f"{cs}{name}")
    return "+".join(parts)


def _e_label(vec) -> str:
    out = ""
    for i, c in enumerate(vec):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = abs(c)
        out += sign + ("" if mag == 1 else str(mag)) + f"e{i + 1}"
    return out


def _closure_positive(gram, n: int):
    """Positive roots in simple-root coordinates by closing simple roots under simple reflections."""
    def refl(i, v):
        gv = sum((gram[i][k] * v[k] for k in range(n)), Fraction(0))
        f = 2 * gv / gram[i][i]
        return tuple(v[k] - (f if k == i else 0) for k in range(n))

    simple = [tuple(Fraction(int(i == k)) for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(n):
            w = refl(i, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
            if len(seen) > 1000:
                raise ArrangementError("root closure did not terminate; is the group finite?")
    pos = [v for v in seen if all(_nonneg(x) for x in v)]
    if len(pos) * 2 != len(seen):
        raise ArrangementError("roots are not split into positive and negative halves")
    return pos


def _nonneg(x) -> bool:
    if isinstance(x, AlgebraicNumber):
        return x.sign() >= 0
    return x >= 0


def _root_order(coeffs):
    return (float(sum(coeffs)), tuple(-float(c) for c in coeffs))


def _assemble(family, param, roots_simple, to_coords, gram, edges, labeler, fld=None) -> RootSystem:
    """roots_simple: positive roots over simple roots; to_coords maps them to covector coordinates."""
    roots_simple = sorted(roots_simple, key=_root_order)
    coords = [to_coords(c) for c in roots_simple]
    n = len(roots_simple[0])
    simple = tuple(roots_simple.index(tuple(Fraction(int(i == k)) for k in range(n))) for i in range(n))
    arr = arrangement_from_covectors(n, coords, [labeler(c, s) for c, s in zip(coords, roots_simple)], fld)
    graph = CoxeterGraph(simple, tuple((simple[i], simple[j], m) for i, j, m in edges))
    return RootSystem(family, param, arr, simple, tuple(tuple(r) for r in gram), graph,
                      tuple(tuple(c) for c in roots_simple))


def build_root_system(family: str, rank_or_m: int | None = None) -> RootSystem:
    """Standard realization of A_n, B_n, D_n, I2(m) or H3."""
    family = family.upper()
    n = rank_or_m
    if family == "A":
        if n is None or n < 1:
            raise ArrangementError("A_n needs n >= 1")
        # e_i - e_j (i<j) in the simple-root basis a_k = e_k - e_{k+1}
        roots = []
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                roots.append(tuple(Fraction(int(i <= k < j)) for k in range(n)))
        gram = [[Fraction(2 if i == j else (-1 if abs(i - j) == 1 else 0)) for j in range(n)] for i in range(n)]
        edges = [(i, i + 1, 3) for i in range(n - 1)]

        def lab(c, s):
            i = next(k for k, x in enumerate(s) if x != 0)
            j = max(k for k, x in enumerate(s) if x != 0) + 1
            return f"e{i + 1}-e{j + 1}"
        return _assemble("A", n, roots, lambda s: s, gram, edges, lab)
    if family in ("B", "D"):
        lo = 2 if family == "B" else 3
        if n is None or n < lo:
            raise ArrangementError(f"{family}_n needs n >= {lo}")
        simple_e = [tuple(Fraction((k == i) - (k == i + 1)) for k in range(n)) for i in range(n - 1)]
        if family == "B":
            simple_e.append(tuple(Fraction(int(k == n - 1)) for k in range(n)))
        else:
            simple_e.append(tuple(Fraction(int(k >= n - 2)) for k in range(n)))
        e_roots = []
        for i in range(n):
            if family == "B":
                e_roots.append(tuple(Fraction(int(k == i)) for k in range(n)))
            for j in range(i + 1, n):
                e_roots.append(tuple(Fraction((k == i) - (k == j)) for k in range(n)))
                e_roots.append(tuple(Fraction((k == i) + (k == j)) for k in range(n)))
        cols = [[s[i] for s in simple_e] for i in range(n)]
        roots = [solve_linear(cols, r) for r in e_roots]
        gram_e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        edges = [(i, i + 1, 3) for i in range(n - 2)]
        if family == "B":
            edges.append((n - 2, n - 1, 4))
        else:
            edges.append((n - 3, n - 1, 3))

        def to_e(s):
            return tuple(sum((s[k] * simple_e[k][i] for k in range(n)), Fraction(0)) for i in range(n))
        return _assemble(family, n, roots, to_e, gram_e, edges, lambda c, s: _e_label(c))
    if family == "I2":
        m = n
        if m is None or m < 3:
            raise ArrangementError("I2(m) needs m >= 3")
        if m in (3, 4, 6):
            # crystallographic realizations A2, B2, G2 keep coordinates rational
            gram = {3: [[2, -1], [-1, 2]], 4: [[2, -1], [-1, 1]], 6: [[2, -3], [-3, 6]]}[m]
            gram = [[Fraction(x) for x in row] for row in gram]
            fld = None
        else:
            c = dihedral_cos(m)
            fld = c.field
            gram = [[c.field([2]), -c], [-c, c.field([2])]]
        roots = _closure_positive(gram, 2)
        if len(roots) != m:
            raise ArrangementError(f"I2({m}) closure produced {len(roots)} roots")
        return _assemble("I2", m, roots, lambda s: s, gram, [(0, 1, m)],
                         lambda c, s: _label_from_coeffs(s), fld)
    if family == "H":
        if n not in (None, 3):
            raise ArrangementError("only H3 is supported")
        phi = dihedral_cos(5)
        fld = phi.field
        two, zero, one = fld([2]), fld([0]), fld([1])
        gram = [[two, -one, zero], [-one, two, -phi], [zero, -phi, two]]
        roots = _closure_positive(gram, 3)
        return _assemble("H", 3, roots, lambda s: s, gram, [(0, 1, 3), (1, 2, 5)],
                         lambda c, s: _label_from_coeffs(s), fld)
    raise ArrangementError(f"unknown family {family!r}")


def parse_type(text: str, rank_or_m: int | None = None) -> RootSystem:
    """Accepts ``A``/``B``/``D`` with a rank, ``I2`` with m, ``H3``, or joined forms like ``B3`` / ``I2(5)``."""
    t = text.strip().upper().replace(" ", "")
    if t.startswith("I2"):
        rest = t[2:].strip("()")
        return build_root_system("I2", int(rest) if rest else rank_or_m)
    if t.startswith("H"):
        return build_root_system("H", int(t[1:]) if t[1:] else rank_or_m)
    fam, rest = t[0], t[1:]
    return build_root_system(fam, int(rest) if rest else rank_or_m)


def simple_reflection_matrix(rs: RootSystem, alpha) -> tuple[tuple, ...]:
    """Matrix of s_alpha acting on covector coordinates (column convention)."""
    n = rs.rank
    cols = [reflect(rs, alpha, tuple(Fraction(int(i == k)) for k in range(n))) for i in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
                 for i in range(n))


def group_elements(rs: RootSystem) -> list[tuple[tuple, ...]]:
    """All elements of the reflection group, by breadth-first closure over simple reflections."""
    if rs.rank > MAX_GROUP_RANK:
        raise ArrangementError(f"group closure limited to rank <= {MAX_GROUP_RANK}")
    gens = [simple_reflection_matrix(rs, s) for s in rs.simple]
    n = rs.rank
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = _mat_mul(s, g)
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
    return order


def group_order(rs: RootSystem) -> int:
    return len(group_elements(rs))


def is_reflection_matrix(g) -> bool:
    n = len(g)
    if _mat_mul(g, g) != tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)):
        return False
    diff = [[g[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    return rank(diff) == 1


def theta_for(rs: RootSystem, subset) -> int:
    """A root in the span of a connected set of simple roots, with all coefficients positive.

    The subset is ordered so every prefix is connected in the Coxeter graph,
    then theta = s_r ... s_2 alpha_1.
    """
    subset = sorted(set(subset))
    if not subset:
        raise ArrangementError("empty subset")
    if any(s not in rs.simple for s in subset):
        raise ArrangementError("subset must consist of simple roots")
    order = [subset[0]]
    pending = set(subset[1:])
    while pending:
        nxt = sorted(v for v in pending if rs.graph.neighbours(v) & set(order))
        if not nxt:
            raise ArrangementError("subset is disconnected in the Coxeter graph")
        order.append(nxt[0])
        pending.discard(nxt[0])
    v = rs.base.covectors[order[0]]
    for s in order[1:]:
        v = reflect(rs, s, v)
    idx = rs.root_index(v)
    if idx is None or rs.base.covectors[idx] != v:
        raise ArrangementError("reflection chain left the positive roots")
    return idx


def apply_group_element(rs: RootSystem, g, alpha: int) -> int:
    """Index of the positive root +-g(alpha)."""
    v = tuple(sum((g[i][k] * rs.base.covectors[alpha][k] for k in range(rs.rank)), Fraction(0))
              for i in range(rs.rank))
    idx = rs.root_index(v)
    if idx is None:
        raise ArrangementError("group element does not preserve the roots")
    return idx


def in_span(arr: Arrangement, indices, vec) -> bool:
    basis, piv = rref_pivots([arr.covectors[i] for i in indices])
    basis = basis[: len(piv)]
    return all(x == 0 for x in reduce_vector(vec, basis, piv))
