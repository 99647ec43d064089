"""
Graphs with a prescribed automorphism group.

Vertices of the Cayley graph are group elements. Every directed edge g -> g*s_k (generator number k, 1-based)
becomes a path g - u - v - g*s_k with a pendant path of length 2k-1 at u and one of length 2k at v: unequal
pendants fix the direction, their lengths fix the color. An involution contributes both of its directed edges.
The result is always checked against the group before it is returned.
"""

from typing import Sequence

from endograph import logging
from endograph.exception import VerificationFailure
from endograph.graph.graph import Graph, spider_graph
from endograph.graph.perm_group import PermGroup, Perm, compose, groups_isomorphic
from endograph.graph.automorphism import automorphism_group


def _pendant(edges: list[tuple[str, str]], anchor: str, length: int) -> None:
    previous = anchor
    for step in range(1, length + 1):
        label = f"{anchor}{step}"
        edges.append((previous, label))
        previous = label


def cayley_gadget_graph(group: PermGroup, generators: Sequence[Perm]) -> Graph:
    elements = group.elements
    index = {g: i for i, g in enumerate(elements)}
    vertices = [f"g{i}" for i in range(len(elements))]
    edges: list[tuple[str, str]] = []
    for k, s in enumerate(generators, start=1):
        for g in elements:
            h = compose(g, s)
            start, end = f"g{index[g]}", f"g{index[h]}"
            u, v = f"{start}.s{k}.u", f"{start}.s{k}.v"
            edges += [(start, u), (u, v), (v, end)]
            _pendant(edges, u, 2 * k - 1)
            _pendant(edges, v, 2 * k)
    return Graph.from_edges(edges, vertices)


def frucht_graph(
    group: PermGroup,
    generators: Sequence[Perm] | None = None,
    vertex_budget: int | None = None,
) -> Graph:
    """A connected graph with more than one vertex whose automorphism group is isomorphic to `group`."""
    if group.order == 1:
        graph = spider_graph()
    else:
        chosen: list[Perm] = []
        for s in generators if generators is not None else group.elements:
            if s != group.identity and s not in chosen:
                if s not in group:
                    raise VerificationFailure(f"generator {s} is not an element of the group")
                chosen.append(s)
        if PermGroup(group.degree, chosen).order != group.order:
            raise VerificationFailure("the chosen elements do not generate the group")
        graph = cayley_gadget_graph(group, chosen)
    verify_realization(graph, group, vertex_budget)
    logging.info(f"realized a group of order {group.order} by a graph on {len(graph)} vertices")
    return graph


def verify_realization(graph: Graph, group: PermGroup, vertex_budget: int | None = None) -> None:
    aut = automorphism_group(graph, vertex_budget=vertex_budget)
    isomorphic, _ = groups_isomorphic(aut, group)
    if not isomorphic or not graph.is_connected() or len(graph) < 2:
        raise VerificationFailure(f"automorphism group of order {aut.order} does not realize the group")
