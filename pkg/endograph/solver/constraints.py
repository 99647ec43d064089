"""The polynomial system f(dg) = d(fg), one equation per generator and target monomial."""

from __future__ import annotations

from dataclasses import dataclass

from endograph import logging
from endograph.exception import InternalInvariantError
from endograph.algebra.polynomial import Polynomial
from endograph.solver.ansatz import GenericMorphism, Unknown


@dataclass(frozen=True)
class Equation:
    poly: Polynomial
    generator: str
    monomial: str

    @property
    def provenance(self) -> str:
        return f"d({self.generator}) at {self.monomial}"


@dataclass
class ConstraintSystem:
    generic: GenericMorphism
    equations: list[Equation]

    @property
    def unknowns(self) -> list[Unknown]:
        return self.generic.unknowns

    def name(self, var: int) -> str:
        return self.generic.name(var)

    def format(self, poly: Polynomial) -> str:
        return poly.format(self.name)

    def by_generator(self) -> dict[str, list[Equation]]:
        grouped: dict[str, list[Equation]] = {}
        for eq in self.equations:
            grouped.setdefault(eq.generator, []).append(eq)
        return grouped


def constraint_system(generic: GenericMorphism) -> ConstraintSystem:
    algebra = generic.alg.algebra
    f = generic.morphism()
    equations: list[Equation] = []
    for gen in algebra.generators:
        defect = f.commutation_defect(gen.name)
        for monomial, coeff in defect.sorted_terms():
            poly = coeff if isinstance(coeff, Polynomial) else Polynomial.constant(coeff)
            if poly.constant_value:
                raise InternalInvariantError(
                    f"{generic.alg.generators.format(monomial)} in d({gen.name}) has a constant term, "
                    "so the zero map would not commute with d"
                )
            equations.append(Equation(poly=poly, generator=gen.name, monomial=algebra.generators.format(monomial)))
    logging.info(f"{len(equations)} equations in {len(generic.unknowns)} unknowns")
    return ConstraintSystem(generic=generic, equations=equations)
