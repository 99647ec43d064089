"""
The minimal Sullivan algebra attached to a graph.

Generators, in this order: x1(8), x2(10), y1(33), y2(35), y3(37), x[v](40) for every vertex in sorted label order,
z(119), z[v](119) in the same vertex order. With U = u1*x1^5 + u2*x2^4:

    d(y1) = x1^3 x2        d(y2) = x1^2 x2^2        d(y3) = x1 x2^3
    d(z)  = y1 y2 x1^4 x2^2 - y1 y3 x1^5 x2 + y2 y3 x1^6 + x1^15 + x2^12
    d(z[v]) = x[v]^3 + sum over neighbors w of v of x[v] x[w] U

The default variant is (u1, u2) = (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from sympy import QQ

from endograph import logging
from endograph.exception import InternalInvariantError, ValidationError
from endograph.algebra.element import Element, GeneratorSet
from endograph.algebra.sullivan import SullivanAlgebra, check_structure
from endograph.graph.graph import Graph

BASE_GENERATORS: tuple[tuple[str, int], ...] = (("x1", 8), ("x2", 10), ("y1", 33), ("y2", 35), ("y3", 37))
VERTEX_DEGREE = 40
TOP_DEGREE = 119


def x_name(v: str) -> str:
    return f"x[{v}]"


def z_name(v: str) -> str:
    return f"z[{v}]"


@dataclass(frozen=True)
class MGAlgebra:
    algebra: SullivanAlgebra
    graph: Graph
    variant: tuple[Any, Any]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.sorted_vertices

    @property
    def generators(self) -> GeneratorSet:
        return self.algebra.generators

    def generator(self, name: str) -> Element:
        return self.algebra.generator(name)

    def x(self, v: str) -> Element:
        return self.algebra.generator(x_name(v))

    def z(self, v: str) -> Element:
        return self.algebra.generator(z_name(v))

    @property
    def expected_formal_dimension(self) -> int:
        return 208 + 80 * len(self.vertices)


def coupling(generators: GeneratorSet, variant: tuple[Any, Any]) -> Element:
    u1, u2 = variant
    return Element.from_names(generators, [("x1", 5)], u1) + Element.from_names(generators, [("x2", 4)], u2)


def build_mg(graph: Graph, u1: Any = 0, u2: Any = 1) -> MGAlgebra:
    variant = (QQ.convert(u1), QQ.convert(u2))
    if not variant[0] and not variant[1]:
        raise ValidationError("the variant (u1, u2) must not be (0, 0)")
    graph.require_connected()
    vertices = graph.sorted_vertices
    pairs = list(BASE_GENERATORS)
    pairs += [(x_name(v), VERTEX_DEGREE) for v in vertices]
    pairs += [("z", TOP_DEGREE)] + [(z_name(v), TOP_DEGREE) for v in vertices]
    gens = GeneratorSet.from_pairs(pairs)

    def term(coeff: Any, *factors: tuple[str, int]) -> Element:
        return Element.from_names(gens, factors, coeff)

    u = coupling(gens, variant)
    differential = {
        "y1": term(1, ("x1", 3), ("x2", 1)),
        "y2": term(1, ("x1", 2), ("x2", 2)),
        "y3": term(1, ("x1", 1), ("x2", 3)),
        "z": term(1, ("y1", 1), ("y2", 1), ("x1", 4), ("x2", 2))
        - term(1, ("y1", 1), ("y3", 1), ("x1", 5), ("x2", 1))
        + term(1, ("y2", 1), ("y3", 1), ("x1", 6))
        + term(1, ("x1", 15))
        + term(1, ("x2", 12)),
    }
    for v in vertices:
        image = term(1, (x_name(v), 3))
        for w in sorted(graph.neighbors(v)):
            image = image + term(1, (x_name(v), 1), (x_name(w), 1)) * u
        differential[z_name(v)] = image

    algebra = SullivanAlgebra(gens, differential)
    report = check_structure(algebra)
    if not report.passed:
        raise InternalInvariantError(f"graph algebra failed its structure checks: {report.failures}")
    logging.info(f"built the algebra of a {len(vertices)}-vertex graph, variant {variant}")
    return MGAlgebra(algebra=algebra, graph=graph, variant=variant)
