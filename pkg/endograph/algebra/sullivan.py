"""
Sullivan algebras: a free graded-commutative algebra with a degree +1 derivation given on generators.

Construction only refuses inputs that make the object unusable (unknown names, foreign universes, symbolic
coefficients, degrees below the connectivity bound). Whether d is homogeneous, squares to zero, respects the
generator filtration or is minimal is reported by `check_structure`, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from endograph import settings, logging
from endograph.exception import DomainMismatch, PreconditionError, ResourceLimit, ValidationError
from endograph.algebra.element import Element, GeneratorSet
from endograph.algebra.monomial import Monomial, UNIT


class SullivanAlgebra:
    generators: GeneratorSet
    differential: dict[int, Element]
    allow_degree_one: bool

    def __init__(
        self,
        generators: GeneratorSet,
        differential: Mapping[str, Element],
        *,
        allow_degree_one: bool = False,
    ) -> None:
        lowest = 1 if allow_degree_one else 2
        for gen in generators:
            if gen.degree < lowest:
                raise ValidationError(f"generator {gen.name} has degree {gen.degree}, expected at least {lowest}")
        self.generators = generators
        self.allow_degree_one = allow_degree_one
        self.differential = {}
        for name, image in differential.items():
            index = generators.index(name)
            if image.generators != generators:
                raise DomainMismatch(f"d({name}) lives over a different generator set")
            if image.has_symbolic_coefficients:
                raise ValidationError(f"d({name}) has non-rational coefficients")
            if image:
                self.differential[index] = image
        self._d_cache: dict[Monomial, Element] = {}
        self._basis_cache: dict[int, list[Monomial]] = {}

    def __repr__(self) -> str:
        return f"SullivanAlgebra({', '.join(f'{n}({d})' for n, d in zip(self.generators.names, self.generators.degrees))})"

    # elements

    def generator(self, name: str) -> Element:
        return Element.generator(self.generators, name)

    def zero(self) -> Element:
        return Element.zero(self.generators)

    def one(self) -> Element:
        return Element.scalar(self.generators, 1)

    def element(self, terms: Iterable[tuple[object, Iterable[tuple[str, int]]]]) -> Element:
        """Sum of coefficient * product of named powers."""
        result = self.zero()
        for coeff, factors in terms:
            result = result + Element.from_names(self.generators, factors, coeff)
        return result

    def d_generator(self, name: str) -> Element:
        return self.differential.get(self.generators.index(name), self.zero())

    # differential

    def d_monomial(self, monomial: Monomial) -> Element:
        cached = self._d_cache.get(monomial)
        if cached is not None:
            return cached
        if not monomial:
            result = self.zero()
        else:
            (index, exp), rest = monomial[0], monomial[1:]
            head = Element.from_monomial(self.generators, ((index, exp),))
            d_generator = self.differential.get(index, self.zero())
            if exp > 1:
                d_head = Element.from_monomial(self.generators, ((index, exp - 1),), exp) * d_generator
            else:
                d_head = d_generator
            tail = Element.from_monomial(self.generators, rest)
            result = d_head * tail
            if rest:
                d_tail = self.d_monomial(rest)
                if d_tail:
                    sign = -1 if (self.generators.degrees[index] * exp) % 2 else 1
                    result = result + (head * d_tail).scale(sign)
        self._d_cache[monomial] = result
        return result

    def d(self, element: Element) -> Element:
        """The derivation extended linearly; coefficients may be symbolic."""
        if element.generators != self.generators:
            raise DomainMismatch("element does not live in this algebra")
        result = self.zero()
        for monomial, coeff in element.terms.items():
            image = self.d_monomial(monomial)
            if image:
                result = result + image.scale(coeff)
        return result

    # bases

    def basis(self, degree: int, budget: int | None = None) -> list[Monomial]:
        """
        All monomials of the given total degree, larger exponents of earlier generators first.
        Exceeding the monomial budget raises ResourceLimit rather than returning a truncated basis.
        """
        budget = settings.MONOMIAL_BUDGET if budget is None else budget
        if degree in self._basis_cache:
            cached = self._basis_cache[degree]
            if len(cached) > budget:
                raise ResourceLimit(f"degree {degree} has {len(cached)} monomials, budget is {budget}")
            return cached
        if degree < 0:
            return []
        degrees = self.generators.degrees
        parity = self.generators.parity
        n = len(degrees)

        # reachable[i][r]: degree r can be written with generators i..n-1
        reachable = [[False] * (degree + 1) for _ in range(n + 1)]
        reachable[n][0] = True
        for i in range(n - 1, -1, -1):
            step = degrees[i]
            row, below = reachable[i], reachable[i + 1]
            for r in range(degree + 1):
                if below[r]:
                    row[r] = True
                elif r >= step and (row[r - step] if not parity[i] else below[r - step]):
                    row[r] = True

        found: list[Monomial] = []
        factors: list[tuple[int, int]] = []

        def walk(i: int, remaining: int) -> None:
            if remaining == 0:
                found.append(tuple(factors))
                if len(found) > budget:
                    raise ResourceLimit(f"degree {degree} exceeds the monomial budget of {budget}")
                return
            if i == n or not reachable[i][remaining]:
                return
            top = 1 if parity[i] else remaining // degrees[i]
            for exp in range(min(top, remaining // degrees[i]), 0, -1):
                rest = remaining - exp * degrees[i]
                if reachable[i + 1][rest]:
                    factors.append((i, exp))
                    walk(i + 1, rest)
                    factors.pop()
            walk(i + 1, remaining)

        walk(0, degree)
        logging.debug(f"basis of degree {degree}: {len(found)} monomials")
        self._basis_cache[degree] = found
        return found

    # derived algebras

    def with_differential(self, differential: Mapping[str, Element]) -> SullivanAlgebra:
        return SullivanAlgebra(self.generators, differential, allow_degree_one=self.allow_degree_one)

    def subalgebra(self, names: Iterable[str]) -> SullivanAlgebra:
        """The sub-Sullivan algebra on the named generators; d must not leave it."""
        keep = [name for name in self.generators.names if name in set(names)]
        sub_generators = GeneratorSet(
            names=tuple(keep), degrees=tuple(self.generators.degrees[self.generators.index(n)] for n in keep)
        )
        old_to_new = {self.generators.index(name): i for i, name in enumerate(keep)}
        differential = {}
        for name in keep:
            image = self.d_generator(name)
            terms = {}
            for monomial, coeff in image.terms.items():
                if any(index not in old_to_new for index, _ in monomial):
                    raise PreconditionError(f"d({name}) leaves the subalgebra on {keep}")
                terms[tuple((old_to_new[index], exp) for index, exp in monomial)] = coeff
            differential[name] = Element(sub_generators, terms)
        return SullivanAlgebra(sub_generators, differential, allow_degree_one=self.allow_degree_one)


@dataclass
class StructureReport:
    homogeneous: bool = True
    lower_degree: bool = True
    filtration: bool = True
    d_squared_zero: bool = True
    minimal: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def is_sullivan(self) -> bool:
        """Sullivan in the filtration sense: d of a generator only uses earlier generators."""
        return self.homogeneous and self.filtration and self.d_squared_zero

    @property
    def passed(self) -> bool:
        return self.is_sullivan and self.lower_degree and self.minimal


def check_structure(alg: SullivanAlgebra) -> StructureReport:
    report = StructureReport()
    gens = alg.generators
    for gen in gens:
        image = alg.d_generator(gen.name)
        if not image.is_homogeneous(gen.degree + 1):
            report.homogeneous = False
            report.failures.append(f"d({gen.name}) is not homogeneous of degree {gen.degree + 1}")
        used = image.generator_indices()
        if any(gens.degrees[i] >= gen.degree for i in used):
            report.lower_degree = False
            report.failures.append(f"d({gen.name}) uses a generator of degree >= {gen.degree}")
        if any(i >= gen.index for i in used):
            report.filtration = False
            report.failures.append(f"d({gen.name}) uses a generator that is not earlier than {gen.name}")
        if alg.d(image):
            report.d_squared_zero = False
            report.failures.append(f"d(d({gen.name})) is not zero")
        if any(len(m) == 1 and m[0][1] == 1 for m in image.terms) or UNIT in image.terms:
            report.minimal = False
            report.failures.append(f"d({gen.name}) has a linear part")
    return report


def pure_part(alg: SullivanAlgebra) -> SullivanAlgebra:
    """Keeps only the even-generator monomials of d on odd generators, zero on even generators."""
    parity = alg.generators.parity
    differential = {}
    for gen in alg.generators:
        if not gen.is_odd:
            continue
        image = alg.d_generator(gen.name)
        differential[gen.name] = image.project(lambda m: not any(parity[i] for i, _ in m))
    return alg.with_differential(differential)


def formal_dimension(alg: SullivanAlgebra) -> int:
    """Sum of odd degrees minus the sum of (even degree - 1); only meaningful for minimal algebras."""
    report = check_structure(alg)
    if not report.minimal:
        raise PreconditionError("formal dimension is only defined here for minimal algebras; use cohomology_dim")
    return sum(gen.degree if gen.is_odd else -(gen.degree - 1) for gen in alg.generators)
