from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

import networkx as nx

from endograph.exception import ValidationError, PreconditionError


def _edge(v: str, w: str) -> tuple[str, str]:
    return (v, w) if v <= w else (w, v)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on string labels. Vertex order is declaration order."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    _adjacency: dict[str, frozenset[str]] = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex labels")
        declared = set(self.vertices)
        adjacency: dict[str, set[str]] = {v: set() for v in self.vertices}
        for v, w in self.edges:
            if v == w:
                raise ValidationError(f"loop at vertex {v}")
            if v not in declared or w not in declared:
                raise ValidationError(f"edge {v} {w} uses an undeclared vertex")
            if (v, w) != _edge(v, w):
                raise ValidationError(f"edge {v} {w} is not normalized")
            adjacency[v].add(w)
            adjacency[w].add(v)
        object.__setattr__(self, "_adjacency", {v: frozenset(ns) for v, ns in adjacency.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], vertices: Iterable[str] = ()) -> Graph:
        order: list[str] = list(dict.fromkeys(vertices))
        seen: set[tuple[str, str]] = set()
        for v, w in edges:
            if v == w:
                raise ValidationError(f"loop at vertex {v}")
            edge = _edge(v, w)
            if edge in seen:
                raise ValidationError(f"duplicate edge {v} {w}")
            seen.add(edge)
            for label in (v, w):
                if label not in order:
                    order.append(label)
        return cls(vertices=tuple(order), edges=frozenset(seen))

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def sorted_vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def sorted_edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: str) -> frozenset[str]:
        return self._adjacency[v]

    def adjacent(self, v: str, w: str) -> bool:
        return w in self._adjacency[v]

    def degree(self, v: str) -> int:
        return len(self._adjacency[v])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_connected(self.to_networkx())

    def require_connected(self) -> None:
        """Connected with more than one vertex."""
        if len(self.vertices) < 2:
            raise PreconditionError("the graph needs more than one vertex")
        if not self.is_connected():
            raise PreconditionError("the graph is not connected")

    def relabeled(self, mapping: Mapping[str, str]) -> Graph:
        return Graph.from_edges(
            ((mapping[v], mapping[w]) for v, w in self.sorted_edges), (mapping[v] for v in self.vertices)
        )


@dataclass(frozen=True)
class GraphMorphism:
    source: Graph
    target: Graph
    vertex_map: Mapping[str, str]

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def preimage(self, w: str) -> str | None:
        for v, image in self.vertex_map.items():
            if image == w:
                return v
        return None


def is_full_monomorphism(m: GraphMorphism) -> bool:
    """Injective, and v ~ w exactly when their images are adjacent."""
    if set(m.vertex_map) != set(m.source.vertices):
        return False
    images = [m.vertex_map[v] for v in m.source.vertices]
    if len(set(images)) != len(images) or not set(images) <= set(m.target.vertices):
        return False
    for v, w in combinations(m.source.vertices, 2):
        if m.source.adjacent(v, w) != m.target.adjacent(m.vertex_map[v], m.vertex_map[w]):
            return False
    return True


def compose_graph_morphisms(second: GraphMorphism, first: GraphMorphism) -> GraphMorphism:
    """second after first."""
    return GraphMorphism(
        source=first.source,
        target=second.target,
        vertex_map={v: second.vertex_map[first.vertex_map[v]] for v in first.source.vertices},
    )


# named graphs


def path_graph(n: int) -> Graph:
    labels = [f"v{i}" for i in range(1, n + 1)]
    return Graph.from_edges(zip(labels, labels[1:]), labels)


def complete_graph(n: int) -> Graph:
    labels = [f"v{i}" for i in range(1, n + 1)]
    return Graph.from_edges(combinations(labels, 2), labels)


def star_graph(leaves: int) -> Graph:
    labels = [f"l{i}" for i in range(1, leaves + 1)]
    return Graph.from_edges((("c", leaf) for leaf in labels), ["c", *labels])


def spider_graph(legs: tuple[int, ...] = (1, 2, 3)) -> Graph:
    """A center with paths of the given lengths attached; legs (1, 2, 3) give the smallest asymmetric tree."""
    edges = []
    for leg, length in enumerate(legs, start=1):
        previous = "c"
        for step in range(1, length + 1):
            label = f"l{leg}.{step}"
            edges.append((previous, label))
            previous = label
    return Graph.from_edges(edges, ["c"])
