from itertools import permutations

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from endograph.exception import ParseError, PreconditionError, ResourceLimit, ValidationError, VerificationFailure
from endograph.graph.automorphism import as_label_map, automorphism_group, from_label_map, is_automorphism
from endograph.graph.formats import dump_graph, dump_group, parse_graph, parse_group
from endograph.graph.frucht import frucht_graph, verify_realization
from endograph.graph.graph import Graph, complete_graph, path_graph, spider_graph, star_graph
from endograph.graph.perm_group import (
    PermGroup,
    compose,
    format_cycles,
    groups_isomorphic,
    inverse,
    parse_cycles,
    perm_order,
)


def brute_force_automorphisms(graph: Graph) -> int:
    vertices = graph.vertices
    return sum(1 for image in permutations(vertices) if is_automorphism(graph, dict(zip(vertices, image))))


def vf2_automorphisms(graph: Graph) -> int:
    g = graph.to_networkx()
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


SMALL_GRAPHS = {
    "p2": path_graph(2),
    "p3": path_graph(3),
    "p4": path_graph(4),
    "k3": complete_graph(3),
    "k4": complete_graph(4),
    "star3": star_graph(3),
    "spider": spider_graph(),
    "c5": Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")]),
    "paw": Graph.from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")]),
}


@pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
def test_automorphism_counts(name: str) -> None:
    graph = SMALL_GRAPHS[name]
    group = automorphism_group(graph)
    assert group.order == brute_force_automorphisms(graph) == vf2_automorphisms(graph)
    for perm in group.elements:
        assert is_automorphism(graph, as_label_map(graph, perm))
        assert from_label_map(graph, as_label_map(graph, perm)) == perm


def test_spider_is_asymmetric() -> None:
    graph = spider_graph()
    assert len(graph) == 7
    assert automorphism_group(graph).order == 1


def test_vertex_budget() -> None:
    with pytest.raises(ResourceLimit):
        automorphism_group(path_graph(10), vertex_budget=5)


def test_graph_file_format() -> None:
    text = "# a triangle with a tail\nvertex e\na b\nb c\nc a\nc d  # tail\n"
    graph = parse_graph(text)
    assert graph.vertices == ("e", "a", "b", "c", "d")
    assert len(graph.edges) == 4
    assert not graph.is_connected()
    with pytest.raises(PreconditionError):
        graph.require_connected()
    reread = parse_graph(dump_graph(graph))
    assert set(reread.vertices) == set(graph.vertices)
    assert reread.edges == graph.edges


@pytest.mark.parametrize(
    ("text", "error"),
    [
        ("", ParseError),
        ("a b c\n", ParseError),
        ("vertex\n", ParseError),
        ("a a\n", ValidationError),
        ("a b\nb a\n", ValidationError),
    ],
)
def test_malformed_graph_files(text: str, error: type[Exception]) -> None:
    with pytest.raises(error):
        parse_graph(text)


def test_parse_error_carries_the_line() -> None:
    with pytest.raises(ParseError) as info:
        parse_graph("a b\n\nb c d\n")
    assert info.value.line == 3


def test_cycle_notation() -> None:
    p = parse_cycles("(1 2 3)(4 5)")
    assert p == (1, 2, 0, 4, 3)
    assert perm_order(p) == 6
    assert format_cycles(p) == "(1 2 3)(4 5)"
    assert format_cycles(compose(p, inverse(p))) == "()"
    for text in ("(1 2", "(1 1)", "(0 1)", "(1 2)(2 3)", "(a b)"):
        with pytest.raises(ParseError):
            parse_cycles(text)


def test_groups_from_generators_and_tables() -> None:
    s3 = parse_group("perms\n(1 2 3)\n(1 2)\n").group
    assert s3.order == 6
    assert s3.verify()
    table = [[(g + h) % 4 for h in range(4)] for g in range(4)]
    z4 = parse_group("table\n" + "\n".join(" ".join(map(str, row)) for row in table)).group
    assert z4.order == 4
    assert groups_isomorphic(z4, PermGroup(4, [(1, 2, 3, 0)]))[0]
    klein = PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    assert not groups_isomorphic(z4, klein)[0]
    assert parse_group(dump_group(s3)).group.order == 6


@pytest.mark.parametrize(
    "text",
    ["", "cosets\n", "table\n0 1\n1 1\n", "table\n0 1\n1 x\n", "table\n1 0\n0 1\n0 1\n"],
)
def test_malformed_group_files(text: str) -> None:
    with pytest.raises((ParseError, ValidationError)):
        parse_group(text)


def test_isomorphism_witness_is_a_homomorphism() -> None:
    a = PermGroup(3, [(1, 2, 0), (1, 0, 2)])
    b = automorphism_group(complete_graph(3))
    ok, witness = groups_isomorphic(a, b)
    assert ok and witness is not None
    for x in a.elements:
        for y in a.elements:
            assert witness[compose(x, y)] == compose(witness[x], witness[y])


def test_small_generating_set() -> None:
    s3 = PermGroup(3, [(1, 2, 0), (1, 0, 2)])
    gens = s3.small_generating_set()
    assert len(gens) == 2
    assert PermGroup(3, gens).order == 6


@pytest.mark.parametrize(("text", "order"), [("perms\n()\n", 1), ("perms\n(1 2)\n", 2), ("perms\n(1 2 3)\n", 3)])
def test_frucht_realizes_small_groups(text: str, order: int) -> None:
    group_input = parse_group(text)
    graph = frucht_graph(group_input.group, group_input.generators)
    assert graph.is_connected()
    assert len(graph) > 1
    aut = automorphism_group(graph)
    assert aut.order == order
    assert groups_isomorphic(aut, group_input.group)[0]


def test_frucht_for_the_trivial_group_is_the_spider() -> None:
    graph = frucht_graph(PermGroup(1, []))
    assert graph == spider_graph()


@pytest.mark.slow
def test_frucht_for_klein_four() -> None:
    klein = PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    graph = frucht_graph(klein, klein.generators, vertex_budget=100)
    assert vf2_automorphisms(graph) == 4


@pytest.mark.slow
def test_frucht_for_s3() -> None:
    group_input = parse_group("perms\n(1 2 3)\n(1 2)\n")
    graph = frucht_graph(group_input.group, group_input.generators, vertex_budget=200)
    assert automorphism_group(graph, vertex_budget=200).order == 6
    g = graph.to_networkx()
    assert nx.is_connected(g)


def test_wrong_realizations_are_caught() -> None:
    with pytest.raises(VerificationFailure):
        verify_realization(path_graph(3), PermGroup(3, [(1, 2, 0)]))
    with pytest.raises(VerificationFailure):
        frucht_graph(PermGroup(3, [(1, 2, 0)]), [(1, 0, 2)])
