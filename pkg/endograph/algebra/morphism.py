"""Degree preserving algebra maps between Sullivan algebras, given on generators."""

from __future__ import annotations

from typing import Mapping

from endograph.exception import DomainMismatch, ValidationError
from endograph.algebra.element import Element
from endograph.algebra.monomial import Monomial
from endograph.algebra.sullivan import SullivanAlgebra


class Morphism:
    source: SullivanAlgebra
    target: SullivanAlgebra
    images: dict[int, Element]

    def __init__(self, source: SullivanAlgebra, target: SullivanAlgebra, assignment: Mapping[str, Element]) -> None:
        self.source = source
        self.target = target
        self.images = {}
        for name in assignment:
            source.generators.index(name)
        for gen in source.generators:
            image = assignment.get(gen.name, target.zero())
            if image.generators != target.generators:
                raise DomainMismatch(f"image of {gen.name} does not live in the target algebra")
            if not image.is_homogeneous(gen.degree):
                raise ValidationError(f"image of {gen.name} is not homogeneous of degree {gen.degree}")
            self.images[gen.index] = image
        self._cache: dict[Monomial, Element] = {}

    @classmethod
    def identity(cls, alg: SullivanAlgebra) -> Morphism:
        return cls(alg, alg, {name: alg.generator(name) for name in alg.generators.names})

    @classmethod
    def zero(cls, source: SullivanAlgebra, target: SullivanAlgebra) -> Morphism:
        return cls(source, target, {})

    def image(self, name: str) -> Element:
        return self.images[self.source.generators.index(name)]

    def assignment(self) -> dict[str, Element]:
        return {name: self.images[i] for i, name in enumerate(self.source.generators.names)}

    def _apply_monomial(self, monomial: Monomial) -> Element:
        cached = self._cache.get(monomial)
        if cached is not None:
            return cached
        result = self.target.one()
        for index, exp in monomial:
            result = result * self.images[index] ** exp
            if not result:
                break
        self._cache[monomial] = result
        return result

    def apply(self, element: Element) -> Element:
        if element.generators != self.source.generators:
            raise DomainMismatch("element does not live in the source algebra")
        result = self.target.zero()
        for monomial, coeff in element.terms.items():
            image = self._apply_monomial(monomial)
            if image:
                result = result + image.scale(coeff)
        return result

    def __call__(self, element: Element) -> Element:
        return self.apply(element)

    def commutation_defect(self, name: str) -> Element:
        """f(d g) - d(f g) for one generator."""
        return self.apply(self.source.d_generator(name)) - self.target.d(self.image(name))

    def failing_generators(self) -> list[str]:
        return [name for name in self.source.generators.names if self.commutation_defect(name)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source.generators == other.source.generators
            and self.target.generators == other.target.generators
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.images.items())))

    def __repr__(self) -> str:
        parts = ", ".join(f"{name} -> {self.images[i]}" for i, name in enumerate(self.source.generators.names))
        return f"Morphism({parts})"


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.target.generators != g.source.generators:
        raise DomainMismatch("target of f is not the source of g")
    return Morphism(f.source, g.target, {name: g.apply(f.image(name)) for name in f.source.generators.names})


def is_dga_morphism(f: Morphism) -> bool:
    return all(not f.commutation_defect(name) for name in f.source.generators.names)
