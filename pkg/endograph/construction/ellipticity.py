"""
Ellipticity certificates.

A Sullivan algebra is elliptic when the quotient of the polynomial ring on its even generators by the pure images
of its odd generators is finite dimensional, i.e. every even generator has a pure power among the leading terms of
a Groebner basis of that ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from endograph import logging
from endograph.exception import InternalInvariantError
from endograph.algebra.element import Element
from endograph.algebra.linalg import solve_exactness
from endograph.algebra.polynomial import Polynomial, Term
from endograph.algebra.sullivan import SullivanAlgebra, pure_part
from endograph.construction.groebner import WeightedRevlex, buchberger, pure_power
from endograph.construction.mg import MGAlgebra


@dataclass
class Witness:
    target: Element
    preimage: Element


@dataclass
class EllipticityCertificate:
    pure_ideal_generators: list[Polynomial]
    groebner_basis: list[Polynomial]
    leading_terms: list[Term]
    nilpotence_exponents: dict[str, int]
    even_generators: list[str]
    complete_run: bool
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(name in self.nilpotence_exponents for name in self.even_generators)


def even_polynomial(element: Element) -> Polynomial:
    """An element in even generators only, read as a polynomial in generator indices."""
    terms = {}
    for monomial, coeff in element.terms.items():
        assert not any(element.generators.parity[i] for i, _ in monomial), "odd generator in a pure image"
        terms[monomial] = coeff
    return Polynomial(terms)


def pure_ideal(alg: SullivanAlgebra) -> list[Polynomial]:
    pure = pure_part(alg)
    return [even_polynomial(pure.d_generator(gen.name)) for gen in alg.generators if gen.is_odd]


def ellipticity_certificate(alg: SullivanAlgebra | MGAlgebra, budget: int | None = None) -> EllipticityCertificate:
    base = alg.algebra if isinstance(alg, MGAlgebra) else alg
    gens = base.generators
    even = [gen for gen in gens if not gen.is_odd]
    generators = [p for p in pure_ideal(base) if p]
    order = WeightedRevlex.by_weight({gen.index: gen.degree for gen in even})
    wanted = {gen.index for gen in even}

    def all_nilpotent(leads: list[Term]) -> bool:
        return wanted <= {pure_power(t) for t in leads}

    if generators:
        run = buchberger(generators, order, budget, stop_when=all_nilpotent)
        basis, leads, complete = run.basis, run.leading_terms, not run.stopped_early
    else:
        basis, leads, complete = [], [], True

    exponents: dict[str, int] = {}
    for lead in leads:
        var = pure_power(lead)
        if var is not None:
            name = gens.names[var]
            exponents[name] = min(exponents.get(name, lead[0][1]), lead[0][1])

    certificate = EllipticityCertificate(
        pure_ideal_generators=generators,
        groebner_basis=basis,
        leading_terms=leads,
        nilpotence_exponents=exponents,
        even_generators=[gen.name for gen in even],
        complete_run=complete,
    )
    if isinstance(alg, MGAlgebra):
        certificate.witnesses = mg_witnesses(alg)
    logging.info(f"ellipticity certificate: valid {certificate.valid}, exponents {exponents}")
    return certificate


def mg_witnesses(alg: MGAlgebra) -> list[Witness]:
    """x1^17 and x2^13 are boundaries in the pure part, with explicit preimages that are also re-derived."""
    pure = pure_part(alg.algebra)
    g = pure.generators

    def el(coeff: int, *factors: tuple[str, int]) -> Element:
        return Element.from_names(g, factors, coeff)

    explicit = [
        (el(1, ("x1", 17)), el(1, ("z", 1), ("x1", 2)) - el(1, ("y2", 1), ("x2", 10))),
        (el(1, ("x2", 13)), el(1, ("z", 1), ("x2", 1)) - el(1, ("y1", 1), ("x1", 12))),
    ]
    witnesses = []
    for target, preimage in explicit:
        if pure.d(preimage) != target:
            raise InternalInvariantError(f"d({preimage}) is not {target} in the pure part")
        if not solve_exactness(pure, target).exact:
            raise InternalInvariantError(f"{target} is not exact in the pure part")
        witnesses.append(Witness(target=target, preimage=preimage))
    return witnesses
