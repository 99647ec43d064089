from functools import cache

import pytest

from endograph import settings
from endograph.algebra.element import Element, GeneratorSet
from endograph.algebra.sullivan import SullivanAlgebra
from endograph.construction.mg import MGAlgebra, build_mg
from endograph.graph.graph import Graph, complete_graph, path_graph, spider_graph, star_graph
from endograph.solver.classify import Classification, classify_endos


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--seed", type=int, default=settings.SEED, help="seed of the randomized suites")
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def seed(request: pytest.FixtureRequest) -> int:
    return request.config.getoption("--seed")


GRAPHS = {
    "p2": lambda: path_graph(2),
    "p3": lambda: path_graph(3),
    "k3": lambda: complete_graph(3),
    "star3": lambda: star_graph(3),
    "spider": lambda: spider_graph(),
}


@cache
def graph(name: str) -> Graph:
    return GRAPHS[name]()


@cache
def mg(name: str, u1: int = 0, u2: int = 1) -> MGAlgebra:
    return build_mg(graph(name), u1, u2)


@cache
def classification(name: str, u1: int = 0, u2: int = 1) -> Classification:
    """Classifications are the expensive part of the suite, every test shares one per graph and variant."""
    return classify_endos(mg(name, u1, u2))


def sphere_model() -> SullivanAlgebra:
    """Lambda(a, b) with |a| = 2, |b| = 3 and d(b) = a^2."""
    gens = GeneratorSet.from_pairs([("a", 2), ("b", 3)])
    return SullivanAlgebra(gens, {"b": Element.from_names(gens, [("a", 2)])})


def brute_force_tails(g: Graph, coupling: int) -> int:
    """
    Integer vectors t with t_v * (t_v^2 + coupling * sum of t_w over neighbors w) = 0 for every vertex. Rational
    solutions are integers bounded by the largest degree, so the box search is exhaustive.
    """
    vertices = g.sorted_vertices
    if not coupling:
        return 1
    bound = max(g.degree(v) for v in vertices)
    position_of = {v: i for i, v in enumerate(vertices)}
    # the constraint of v can be checked as soon as v and all its neighbors have values
    ready: dict[int, list[str]] = {}
    for v in vertices:
        last = max(position_of[u] for u in (v, *g.neighbors(v)))
        ready.setdefault(last, []).append(v)
    count = 0

    def search(position: int, values: dict[str, int]) -> None:
        nonlocal count
        if position == len(vertices):
            count += 1
            return
        for t in range(-bound, bound + 1):
            values[vertices[position]] = t
            if all(
                values[v] * (values[v] ** 2 + coupling * sum(values[w] for w in g.neighbors(v))) == 0
                for v in ready.get(position, ())
            ):
                search(position + 1, values)
        del values[vertices[position]]

    search(0, {})
    return count
