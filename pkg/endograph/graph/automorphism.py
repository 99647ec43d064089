"""
Automorphism groups of simple graphs by backtracking.

Vertices are first split into cells by degree and distance profile, candidates for a vertex come from its own cell,
and every partial assignment has to preserve distances to the vertices assigned before it. Preserving distances
implies preserving adjacency, so every complete assignment is an automorphism.
"""

from collections import Counter

import networkx as nx

from endograph import settings, logging
from endograph.exception import ResourceLimit
from endograph.graph.graph import Graph
from endograph.graph.perm_group import PermGroup, Perm


def _distances(graph: Graph) -> list[list[int]]:
    index = {v: i for i, v in enumerate(graph.vertices)}
    n = len(graph.vertices)
    table = [[-1] * n for _ in range(n)]
    for source, lengths in nx.all_pairs_shortest_path_length(graph.to_networkx()):
        row = table[index[source]]
        for target, length in lengths.items():
            row[index[target]] = length
    return table


def _search_order(graph: Graph, cell_size: list[int]) -> list[int]:
    """Start in the smallest cell, then prefer vertices with many neighbors already placed."""
    n = len(graph.vertices)
    index = {v: i for i, v in enumerate(graph.vertices)}
    neighbors = [[index[w] for w in graph.neighbors(v)] for v in graph.vertices]
    placed: list[int] = []
    weight = [0] * n
    remaining = set(range(n))
    while remaining:
        best = min(remaining, key=lambda i: (-weight[i], cell_size[i], i))
        placed.append(best)
        remaining.discard(best)
        for j in neighbors[best]:
            weight[j] += 1
    return placed


def automorphism_group(graph: Graph, vertex_budget: int | None = None, order_budget: int | None = None) -> PermGroup:
    """All automorphisms as permutations of vertex positions in `graph.vertices`."""
    vertex_budget = settings.VERTEX_BUDGET if vertex_budget is None else vertex_budget
    order_budget = settings.ORDER_BUDGET if order_budget is None else order_budget
    n = len(graph.vertices)
    if n > vertex_budget:
        raise ResourceLimit(f"{n} vertices exceed the vertex budget of {vertex_budget}")

    distance = _distances(graph)
    invariant = [
        (graph.degree(v), tuple(sorted(Counter(distance[i]).items()))) for i, v in enumerate(graph.vertices)
    ]
    sizes = Counter(invariant)
    cell_size = [sizes[inv] for inv in invariant]
    order = _search_order(graph, cell_size)

    found: list[Perm] = []
    image = [-1] * n
    used = [False] * n

    def extend(position: int) -> None:
        if position == n:
            found.append(tuple(image))
            if len(found) > order_budget:
                raise ResourceLimit(f"automorphism group exceeds the order budget of {order_budget}")
            return
        v = order[position]
        for w in range(n):
            if used[w] or invariant[w] != invariant[v]:
                continue
            if any(distance[v][u] != distance[w][image[u]] for u in order[:position]):
                continue
            image[v] = w
            used[w] = True
            extend(position + 1)
            used[w] = False
            image[v] = -1

    extend(0)
    logging.info(f"automorphism group of a {n}-vertex graph has order {len(found)}")
    return PermGroup.from_elements(n, found, order_budget)


def as_label_map(graph: Graph, perm: Perm) -> dict[str, str]:
    return {v: graph.vertices[perm[i]] for i, v in enumerate(graph.vertices)}


def from_label_map(graph: Graph, mapping: dict[str, str]) -> Perm:
    index = {v: i for i, v in enumerate(graph.vertices)}
    return tuple(index[mapping[v]] for v in graph.vertices)


def is_automorphism(graph: Graph, mapping: dict[str, str]) -> bool:
    """Bijective and edge-iff on all vertex pairs."""
    if sorted(mapping) != sorted(graph.vertices) or sorted(mapping.values()) != sorted(graph.vertices):
        return False
    return all(
        graph.adjacent(v, w) == graph.adjacent(mapping[v], mapping[w])
        for v in graph.vertices
        for w in graph.vertices
        if v != w
    )
