"""The defining graph of a partially commutative group.

Vertices carry a strict total order given by their listing order: the first
listed vertex is the smallest. Adjacent vertices commute.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class GraphError(ValueError):
    """Raised for malformed or inconsistent graph descriptions."""


@dataclass(frozen=True)
class CommutationGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = frozenset()
    _rank: dict = field(init=False, repr=False, compare=False)
    _masks: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        rank = {}
        for i, v in enumerate(vertices):
            if not isinstance(v, str) or not SYMBOL_RE.match(v):
                raise GraphError(f"invalid vertex symbol {v!r}")
            if v in rank:
                raise GraphError(f"duplicate vertex {v!r}")
            rank[v] = i
        edges = set()
        for e in self.edges:
            pair = tuple(e)
            if len(pair) == 1 or (len(pair) == 2 and pair[0] == pair[1]):
                raise GraphError(f"loop edge at {pair[0]!r}")
            if len(pair) != 2:
                raise GraphError(f"edge must join two vertices, got {pair!r}")
            for v in pair:
                if v not in rank:
                    raise GraphError(f"edge endpoint {v!r} is not a declared vertex")
            edges.add(frozenset(pair))
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "_rank", rank)
        # masks[i] has bit j set iff vertices i and j commute (i != j)
        masks = [0] * len(vertices)
        for e in edges:
            a, b = (rank[v] for v in e)
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        object.__setattr__(self, "_masks", tuple(masks))

    @classmethod
    def from_pairs(cls, vertices: Iterable[str], pairs: Iterable[Iterable[str]] = ()) -> "CommutationGraph":
        return cls(tuple(vertices), frozenset(_edge(p) for p in pairs))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._rank

    @property
    def masks(self) -> tuple[int, ...]:
        """Commutation bitmasks indexed by vertex rank."""
        return self._masks

    def rank(self, v: str) -> int:
        try:
            return self._rank[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def adjacent(self, a: str, b: str) -> bool:
        ra, rb = self.rank(a), self.rank(b)
        return bool(self._masks[ra] >> rb & 1)

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges as (smaller, larger) pairs, sorted by rank."""
        out = []
        for e in self.edges:
            a, b = sorted(e, key=self.rank)
            out.append((a, b))
        return sorted(out, key=lambda p: (self.rank(p[0]), self.rank(p[1])))

    def with_edge(self, a: str, b: str) -> "CommutationGraph":
        return CommutationGraph(self.vertices, self.edges | {frozenset((a, b))})

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(p) for p in self.sorted_edges()]}


def _edge(pair) -> frozenset:
    pair = list(pair)
    if len(pair) != 2:
        raise GraphError(f"edge must be a 2-element array, got {pair!r}")
    if pair[0] == pair[1]:
        raise GraphError(f"loop edge at {pair[0]!r}")
    return frozenset(pair)


def adjacent(g: CommutationGraph, a: str, b: str) -> bool:
    return g.adjacent(a, b)


def vertex_rank(g: CommutationGraph, a: str) -> int:
    return g.rank(a)


_ALLOWED_KEYS = {"vertices", "edges", "schema"}


def parse_graph(text: str | dict) -> CommutationGraph:
    """Build a graph from its JSON description.

    ``{"vertices": [...], "edges": [[a, b], ...]}``; vertices are listed in
    ascending order. An optional ``"schema": "pcnil/1"`` tag is accepted; any
    other key is rejected.
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph document: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise GraphError(f"unknown keys in graph document: {sorted(unknown)}")
    if "schema" in doc and doc["schema"] != "pcnil/1":
        raise GraphError(f"unsupported schema {doc['schema']!r}")
    vertices = doc.get("vertices")
    edges = doc.get("edges", [])
    if not isinstance(vertices, list) or not vertices:
        raise GraphError('"vertices" must be a nonempty array of strings')
    if not isinstance(edges, list):
        raise GraphError('"edges" must be an array')
    for e in edges:
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, str) for v in e):
            raise GraphError(f"edge must be a 2-element string array, got {e!r}")
    return CommutationGraph.from_pairs(vertices, edges)


def load_graph(path) -> CommutationGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def complete_graph(vertices: Iterable[str]) -> CommutationGraph:
    vs = tuple(vertices)
    return CommutationGraph.from_pairs(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def edgeless_graph(vertices: Iterable[str]) -> CommutationGraph:
    return CommutationGraph(tuple(vertices))


def example_graph() -> CommutationGraph:
    """Three vertices x1 > x2 > x3 with the single edge {x1, x2}."""
    return CommutationGraph.from_pairs(("x3", "x2", "x1"), [("x1", "x2")])
