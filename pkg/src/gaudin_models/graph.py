"""Small simple undirected graphs (Coxeter graphs, associahedron inputs)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertices")
        norm = set()
        for e in self.edges:
            a, b = tuple(e)
            if a == b:
                raise GraphError("loops are not allowed")
            if a not in vs or b not in vs:
                raise GraphError(f"edge {a}-{b} uses unknown vertices")
            norm.add(frozenset((a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, vertices, edges) -> "Graph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @classmethod
    def path(cls, n: int) -> "Graph":
        if n < 1:
            raise GraphError("path needs at least one vertex")
        return cls.from_edges(range(1, n + 1), [(i, i + 1) for i in range(1, n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("cycle needs at least three vertices")
        return cls.from_edges(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])

    @classmethod
    def star(cls, n: int) -> "Graph":
        """Centre 1 joined to leaves 2..n."""
        if n < 1:
            raise GraphError("star needs at least one vertex")
        return cls.from_edges(range(1, n + 1), [(1, i) for i in range(2, n + 1)])

    def __len__(self):
        return len(self.vertices)

    def adjacent(self, a, b) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbours(self, v) -> set:
        return {u for e in self.edges if v in e for u in e if u != v}

    def is_connected_subset(self, subset) -> bool:
        subset = set(subset)
        if not subset:
            return False
        start = next(iter(subset))
        seen, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for u in self.neighbours(v) & subset:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == subset

    def is_connected(self) -> bool:
        return self.is_connected_subset(self.vertices)

    def separated(self, a, b) -> bool:
        """Vertex-disjoint with no edge between the two vertex sets."""
        if set(a) & set(b):
            return False
        return not any(self.adjacent(x, y) for x in a for y in b)

    def sorted_edges(self) -> list[tuple]:
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted((tuple(sorted(e, key=order.__getitem__)) for e in self.edges),
                      key=lambda e: (order[e[0]], order[e[1]]))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}


def parse_graph_spec(text: str) -> Graph:
    """``path:n``, ``cycle:n``, ``star:n`` or inline JSON ``{"vertices": [...], "edges": [[a, b], ...]}``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            return Graph.from_edges(data["vertices"], [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
    kind, _, count = text.partition(":")
    builders = {"path": Graph.path, "cycle": Graph.cycle, "star": Graph.star}
    if kind not in builders or not count.isdigit():
        raise GraphError(f"malformed graph spec {text!r}")
    return builders[kind](int(count))


def all_subsets(items, min_size=1):
    items = list(items)
    for k in range(min_size, len(items) + 1):
        yield from combinations(items, k)
