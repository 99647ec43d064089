"""
Degrees of self-maps of tilde extensions.

A self-map f of the base with f(x) = a*x + d(m) extends by y -> a*y + m, and the extension acts on the top class
x*y - z by a^2. For graph algebras the scalar a is certified per homotopy class instead of computed on x itself,
whose degree is far above any monomial budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from sympy import QQ

from endograph import logging
from endograph.exception import InternalInvariantError, PreconditionError
from endograph.algebra.element import Element
from endograph.algebra.linalg import solve_linear
from endograph.algebra.monomial import uses_only
from endograph.algebra.morphism import Morphism, is_dga_morphism
from endograph.algebra.sullivan import formal_dimension
from endograph.construction.ellipticity import ellipticity_certificate
from endograph.construction.functor import FIXED
from endograph.construction.mg import MGAlgebra
from endograph.construction.tilde import TildeExtension
from endograph.graph.automorphism import from_label_map
from endograph.graph.perm_group import perm_order
from endograph.solver.classify import EndoClass, EndoKind


@dataclass
class TildeMorphism:
    morphism: Morphism
    scalar: Any
    witness: Element

    @property
    def degree(self) -> Any:
        return self.scalar**2


def extend_to_tilde(te: TildeExtension, f: Morphism, budget: int | None = None) -> TildeMorphism:
    """Solves d(m) + a*x = f(x) and sends y to a*y + m."""
    base = te.base
    if f.source.generators != base.generators or f.target.generators != base.generators:
        raise PreconditionError("the map is not a self-map of the base of the extension")
    if not is_dga_morphism(f):
        raise PreconditionError("the map does not commute with d")
    degree = te.x.homogeneous_degree()
    assert degree is not None
    basis = base.basis(degree - 1, budget)
    columns = [base.d_monomial(m) for m in basis] + [te.x]
    solution = solve_linear(columns, f.apply(te.x))
    if solution is None:
        raise PreconditionError("f(x) is not a multiple of x up to a boundary")
    scalar = QQ.convert(solution[-1])
    witness = base.zero()
    for monomial, coeff in zip(basis, solution):
        if coeff:
            witness = witness + Element.from_monomial(base.generators, monomial, coeff)

    extended = te.extended
    assignment = {name: f.image(name).rebase(extended.generators) for name in base.generators.names}
    assignment[te.y_name] = te.y.scale(scalar) + witness.rebase(extended.generators)
    lifted = Morphism(extended, extended, assignment)
    if not is_dga_morphism(lifted):
        raise InternalInvariantError("the extended map does not commute with d")
    logging.debug(f"extended a self-map to the tilde extension with scalar {scalar}")
    return TildeMorphism(morphism=lifted, scalar=scalar, witness=witness)


@dataclass
class DegreeCertificate:
    endo: EndoClass
    scalars: tuple[int, ...]
    justification: str
    detail: str

    @property
    def degree(self) -> int:
        """The action a^2 on the top class of the tilde extension, the same for every candidate a."""
        degrees = {a * a for a in self.scalars}
        assert len(degrees) == 1, f"candidates {self.scalars} disagree on a^2"
        return degrees.pop()


def _factors_through_base(mg: MGAlgebra, cls: EndoClass) -> str:
    """Checks that the class lands in the sub-algebra on x1, x2, y1, y2, y3, z and returns a description."""
    allowed = frozenset(mg.generators.index(name) for name in FIXED)
    for name in mg.generators.names:
        if not all(uses_only(m, allowed) for m in cls.representative.image(name).terms):
            raise InternalInvariantError(f"{cls.label} sends {name} outside the base sub-algebra")
    sub = mg.algebra.subalgebra(FIXED)
    if not ellipticity_certificate(sub).valid:
        raise InternalInvariantError("the base sub-algebra is not elliptic")
    dimension = formal_dimension(sub)
    if dimension >= mg.expected_formal_dimension:
        raise InternalInvariantError(f"the base sub-algebra has formal dimension {dimension}")
    return f"factors through an elliptic sub-algebra of formal dimension {dimension}"


def degree_certificate(mg: MGAlgebra, cls: EndoClass) -> DegreeCertificate:
    if cls.kind is EndoKind.CONSTANT and cls.s == 0:
        return DegreeCertificate(cls, (0,), "zero-map", "every generator goes to zero")
    if cls.kind in (EndoKind.CONSTANT, EndoKind.COLLAPSE):
        return DegreeCertificate(cls, (0,), "factorization", _factors_through_base(mg, cls))
    if cls.kind is EndoKind.AUTOMORPHISM:
        assert cls.sigma is not None
        if cls.is_identity:
            return DegreeCertificate(cls, (1,), "identity", "the identity map")
        order = perm_order(from_label_map(mg.graph, cls.sigma))
        scalars = (1,) if order % 2 else (-1, 1)
        return DegreeCertificate(cls, scalars, "finite-order", f"a^{order} = 1 over the rationals")
    raise PreconditionError(f"no degree certificate for classes of kind {cls.kind}")


def is_inflexible(certificates: Sequence[DegreeCertificate]) -> bool:
    return all(cert.degree in (-1, 0, 1) for cert in certificates)


def orientation_reversing(certificates: Sequence[DegreeCertificate]) -> list[str]:
    """Labels of classes acting by -1 on the top class of the extension."""
    return [cert.endo.label for cert in certificates if cert.degree == -1]
