"""
The generic self-map of a graph algebra: every generator goes to the full basis of its degree with one fresh
unknown per monomial.

Unknowns get the conventional names of the hand computation: f(x1) = a1 x1, f(y1) = b1 y1,
f(x[v]) = sum a(v,w) x[w] + a1(v) x1^5 + a2(v) x2^4, f(z) = c z + sum c(w) z[w] + alpha/beta/gamma terms on
y1/y2/y3, f(z[v]) = e(v) z + sum c(v,w) z[w] + alpha(v)/beta(v)/gamma(v) terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from sympy import QQ

from endograph import logging
from endograph.exception import InternalInvariantError, PreconditionError
from endograph.algebra.element import Element
from endograph.algebra.monomial import Monomial
from endograph.algebra.morphism import Morphism
from endograph.algebra.polynomial import Polynomial
from endograph.construction.mg import MGAlgebra

GREEK = {"y1": "alpha", "y2": "beta", "y3": "gamma"}


@dataclass(frozen=True)
class Unknown:
    id: int
    name: str
    generator: str
    monomial: Monomial
    template_degree: int


def _owner(generator: str) -> str | None:
    """Vertex label of x[v] / z[v], None for the base generators."""
    return generator[2:-1] if generator.endswith("]") else None


def unknown_name(alg: MGAlgebra, generator: str, monomial: Monomial) -> str | None:
    names = alg.generators.names
    factors = {names[i]: exp for i, exp in monomial}
    owner = _owner(generator)
    if generator in ("x1", "x2"):
        return "a" + generator[1]
    if generator in GREEK:
        return "b" + generator[1]
    if generator.startswith("x["):
        if factors == {"x1": 5}:
            return f"a1({owner})"
        if factors == {"x2": 4}:
            return f"a2({owner})"
        if len(factors) == 1:
            (only, exp), = factors.items()
            if only.startswith("x[") and exp == 1:
                return f"a({owner},{_owner(only)})"
        return None
    if generator == "z" or generator.startswith("z["):
        prefix = "" if owner is None else f"{owner},"
        if factors == {"z": 1}:
            return "c" if owner is None else f"e({owner})"
        if len(factors) == 1:
            (only, exp), = factors.items()
            if only.startswith("z[") and exp == 1:
                return f"c({prefix}{_owner(only)})"
            return None
        ys = [name for name in factors if name in GREEK]
        if len(ys) != 1:
            return None
        greek = GREEK[ys[0]]
        vertex = [name for name in factors if name.startswith("x[")]
        if vertex:
            return f"{greek}3({prefix}{_owner(vertex[0])})" if len(vertex) == 1 else None
        index = 1 if factors.get("x1", 0) < 5 else 2
        return f"{greek}{index}" if owner is None else f"{greek}{index}({owner})"
    return None


@dataclass
class GenericMorphism:
    alg: MGAlgebra
    unknowns: list[Unknown]
    templates: dict[str, Element]

    def name(self, var: int) -> str:
        return self.unknowns[var].name

    def by_name(self, name: str) -> Unknown:
        for unknown in self.unknowns:
            if unknown.name == name:
                return unknown
        raise KeyError(name)

    def counts(self) -> dict[str, int]:
        return {gen: len(template) for gen, template in self.templates.items()}

    def morphism(self) -> Morphism:
        return Morphism(self.alg.algebra, self.alg.algebra, self.templates)

    def instantiate(self, values: Mapping[int, Any]) -> Morphism:
        """A concrete morphism; unknowns missing from `values` are set to zero."""
        everything = {u.id: values.get(u.id, QQ(0)) for u in self.unknowns}

        def evaluate(coeff: Any) -> Any:
            value = coeff.substitute(everything) if isinstance(coeff, Polynomial) else coeff
            if isinstance(value, Polynomial):
                if not value.is_constant:
                    raise PreconditionError(f"unknowns left in {value}")
                value = value.constant_value
            return value

        return Morphism(
            self.alg.algebra,
            self.alg.algebra,
            {gen: template.map_coefficients(evaluate) for gen, template in self.templates.items()},
        )


def generic_ansatz(alg: MGAlgebra) -> GenericMorphism:
    algebra = alg.algebra
    unknowns: list[Unknown] = []
    templates: dict[str, Element] = {}
    for gen in algebra.generators:
        template = algebra.zero()
        for monomial in algebra.basis(gen.degree):
            name = unknown_name(alg, gen.name, monomial)
            if name is None:
                raise InternalInvariantError(
                    f"unexpected monomial {algebra.generators.format(monomial)} in the template of {gen.name}"
                )
            var = len(unknowns)
            unknowns.append(
                Unknown(id=var, name=name, generator=gen.name, monomial=monomial, template_degree=gen.degree)
            )
            template = template + Element.from_monomial(algebra.generators, monomial, Polynomial.variable(var))
        templates[gen.name] = template

    n = len(alg.vertices)
    expected = {"x1": 1, "x2": 1, "y1": 1, "y2": 1, "y3": 1, "z": 7 + 4 * n}
    for v in alg.vertices:
        expected[f"x[{v}]"] = n + 2
        expected[f"z[{v}]"] = 7 + 4 * n
    counts = {gen: len(t) for gen, t in templates.items()}
    if counts != expected:
        raise InternalInvariantError(f"template sizes {counts} differ from the expected shapes {expected}")
    logging.info(f"generic ansatz with {len(unknowns)} unknowns")
    return GenericMorphism(alg=alg, unknowns=unknowns, templates=templates)
