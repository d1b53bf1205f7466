"""Graph-associahedra: H-representation, vertices from nested sets, faces, OFF export."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import combinations

from .arrangements import RootSystem, group_order
from .exact import NO_SOLUTION, NON_UNIQUE, format_scalar, rank, solve_linear
from .flats import connected_proper_subgraphs, graph_nested_sets
from .graph import Graph, GraphError

MAX_VERTICES = 8
MAX_BRUTE_FACETS = 16


class PolytopeError(ValueError):
    pass


def connected_subgraphs(g: Graph) -> list[frozenset]:
    """Nonempty proper vertex subsets inducing connected subgraphs."""
    return connected_proper_subgraphs(g)


def _guard(g: Graph):
    if len(g) > MAX_VERTICES:
        raise PolytopeError(f"graph has {len(g)} vertices; limit is {MAX_VERTICES}")


@dataclass(frozen=True)
class HPolytope:
    graph: Graph
    inequalities: tuple[tuple[frozenset, int], ...]

    @property
    def dim(self) -> int:
        return len(self.graph) - 1

    @property
    def total(self) -> int:
        return 3 ** len(self.graph)

    def row(self, subset) -> tuple:
        return tuple(Fraction(int(v in subset)) for v in self.graph.vertices)

    def value(self, subset, x) -> Fraction:
        return sum((xi for v, xi in zip(self.graph.vertices, x) if v in subset), Fraction(0))

    def contains(self, x) -> bool:
        return sum(x, Fraction(0)) == self.total and all(self.value(i, x) >= r for i, r in self.inequalities)

    def tight(self, x) -> list[frozenset]:
        return [i for i, r in self.inequalities if self.value(i, x) == r]

    def __eq__(self, other):
        if not isinstance(other, HPolytope):
            return NotImplemented
        return (self.graph.vertices == other.graph.vertices
                and set(self.inequalities) == set(other.inequalities))

    def __hash__(self):
        return hash((self.graph.vertices, frozenset(self.inequalities)))

    def to_json(self) -> dict:
        order = {v: k for k, v in enumerate(self.graph.vertices)}
        return {
            "equality": {"coeffs": [1] * len(self.graph), "rhs": self.total},
            "inequalities": [{"subgraph": sorted(i, key=order.__getitem__), "rhs": r}
                             for i, r in self.inequalities],
        }


def _sort_key(g: Graph):
    order = {v: k for k, v in enumerate(g.vertices)}
    return lambda s: (len(s), sorted(order[v] for v in s))


def build_polytope(g: Graph) -> HPolytope:
    subs = sorted(connected_subgraphs(g), key=_sort_key(g))
    return HPolytope(g, tuple((s, 3 ** len(s)) for s in subs))


def coxeter_polytope(rs: RootSystem) -> HPolytope:
    """Polytope of the Coxeter graph with edge labels forgotten."""
    g = Graph.from_edges(range(rs.rank), [(a, b) for a, b, _ in rs.graph.edges])
    return build_polytope(g)


def _solve_tight(p: HPolytope, tight) -> tuple | None:
    rows = [p.row(i) for i in tight] + [tuple(Fraction(1) for _ in p.graph.vertices)]
    rhs = [Fraction(3 ** len(i)) for i in tight] + [Fraction(p.total)]
    x = solve_linear(rows, rhs)
    if x is NO_SOLUTION or x is NON_UNIQUE:
        return None
    return x


def vertex_for(g: Graph, ns) -> tuple:
    p = build_polytope(g)
    ns = [frozenset(i) for i in ns]
    if len(ns) != len(g) - 1:
        raise PolytopeError("a vertex needs a maximal nested set")
    x = _solve_tight(p, ns)
    if x is None:
        raise PolytopeError("tight system is singular")
    for i, r in p.inequalities:
        val = p.value(i, x)
        if i in ns:
            continue
        if val <= r:
            raise PolytopeError(f"vertex violates or touches inequality {sorted(i)}")
    return x


def enumerate_vertices(g: Graph) -> list[tuple[tuple, tuple]]:
    _guard(g)
    out = [(ns, vertex_for(g, ns)) for ns in graph_nested_sets(g, maximal_only=True)]
    if len({v for _, v in out}) != len(out):
        raise PolytopeError("two nested sets gave the same vertex")
    return out


def f_vector(g: Graph) -> tuple[int, ...]:
    """Counts of proper nonempty faces by dimension 0..dim-1 (nested set S has dimension |B|-1-|S|)."""
    _guard(g)
    d = len(g) - 1
    counts = [0] * d
    for ns in graph_nested_sets(g):
        k = d - len(ns)
        if k < d:
            counts[k] += 1
    return tuple(counts)


def euler_check(fv, dim: int) -> bool:
    """Alternating sum over all faces, empty face and polytope included, vanishes."""
    return -1 + sum((-1) ** i * f for i, f in enumerate(fv)) + (-1) ** dim == 0


def simplicity_check(g: Graph) -> bool:
    p = build_polytope(g)
    return all(len(p.tight(v)) == len(g) - 1 for _, v in enumerate_vertices(g))


def tessellation_count(rs: RootSystem) -> int:
    return group_order(rs) // 2


# ------------------------------------------------------------------ brute-force oracles


def brute_force_vertices(g: Graph) -> set[tuple]:
    """Feasible unique solutions over every (|B|-1)-subset of the inequalities."""
    p = build_polytope(g)
    if len(p.inequalities) > MAX_BRUTE_FACETS:
        raise PolytopeError("too many facets for brute force")
    out = set()
    for tight in combinations([i for i, _ in p.inequalities], len(g) - 1):
        x = _solve_tight(p, tight)
        if x is not None and p.contains(x):
            out.add(x)
    return out


def brute_force_f_vector(g: Graph) -> tuple[int, ...]:
    """Faces as distinct vertex sets cut out by subsets of facets, sized by affine rank."""
    p = build_polytope(g)
    verts = sorted(brute_force_vertices(g))
    tights = [set(p.tight(v)) for v in verts]
    facets = [i for i, _ in p.inequalities]
    faces = set()
    for k in range(1, len(facets) + 1):
        for sub in combinations(facets, k):
            on = frozenset(j for j, t in enumerate(tights) if t.issuperset(sub))
            if on:
                faces.add(on)
    d = len(g) - 1
    counts = [0] * d
    for face in faces:
        pts = [verts[j] for j in face]
        dim = rank([tuple(a - b for a, b in zip(q, pts[0])) for q in pts[1:]]) if len(pts) > 1 else 0
        if dim < d:
            counts[dim] += 1
    return tuple(counts)


# ------------------------------------------------------------------ export


def _decimal(x: Fraction) -> tuple[str, bool]:
    """Decimal rendering and whether it is exact (denominator of the form 2^a 5^b)."""
    den = x.denominator
    for q in (2, 5):
        while den % q == 0:
            den //= q
    if den != 1:
        return repr(float(x)), False
    with localcontext() as ctx:
        ctx.prec = 200
        return str(Decimal(x.numerator) / Decimal(x.denominator)), True


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def off_export(g: Graph) -> str:
    """OFF text for a 3-dimensional graph-associahedron (|B| = 4), last coordinate dropped."""
    if len(g) != 4:
        raise PolytopeError("OFF export needs a 3-dimensional polytope (4 graph vertices)")
    p = build_polytope(g)
    verts = [v for _, v in enumerate_vertices(g)]
    pts = [v[:3] for v in verts]
    tights = [set(p.tight(v)) for v in verts]
    lines_faces = []
    for i, _ in p.inequalities:
        on = [j for j, t in enumerate(tights) if i in t]
        # adjacent vertices share two facets
        adj = {j: [k for k in on if k != j and len(tights[j] & tights[k]) == 2] for j in on}
        cycle = [on[0]]
        while len(cycle) < len(on):
            nxt = [k for k in adj[cycle[-1]] if k not in cycle]
            if not nxt:
                raise PolytopeError("facet boundary is not a cycle")
            cycle.append(nxt[0])
        # outward normal of sum_{I} x >= 3^|I| after x4 = total - x1 - x2 - x3
        grad = [Fraction(int(v in i)) - Fraction(int(g.vertices[3] in i)) for v in g.vertices[:3]]
        a, b, c = (pts[k] for k in cycle[:3])
        n = _cross(tuple(y - x for x, y in zip(a, b)), tuple(y - x for x, y in zip(a, c)))
        if sum(ni * gi for ni, gi in zip(n, grad)) > 0:
            cycle.reverse()
        lines_faces.append(cycle)
    exact = True
    vlines = []
    for q in pts:
        parts = []
        for x in q:
            s, ok = _decimal(x)
            exact &= ok
            parts.append(s)
        vlines.append(" ".join(parts))
    out = ["OFF", f"# exact: {'true' if exact else 'false'}",
           f"{len(pts)} {len(lines_faces)} 0"]
    out += vlines
    out += [" ".join(map(str, [len(f)] + f)) for f in lines_faces]
    return "\n".join(out) + "\n"


def polytope_json(g: Graph, with_vertices: bool = True, with_f_vector: bool = True) -> dict:
    p = build_polytope(g)
    out = p.to_json()
    if with_vertices:
        out["vertices"] = [[format_scalar(x) for x in v] for _, v in enumerate_vertices(g)]
    if with_f_vector:
        out["f_vector"] = list(f_vector(g))
    return out


def check_graph(g: Graph) -> Graph:
    if not g.is_connected():
        raise GraphError("graph must be connected")
    return g
