"""
Exact linear algebra on degree slices: exactness, ranks of d and cohomology dimensions.

Matrices are sparse sympy DomainMatrix objects over QQ, eliminated fraction-free (clear denominators, then
integer elimination). A modular rank over GF(p) is available as a fast path and is checked against the exact one
in the tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from sympy import QQ
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from endograph import settings, logging
from endograph.exception import InternalInvariantError, PreconditionError
from endograph.algebra.element import Element
from endograph.algebra.monomial import Monomial
from endograph.algebra.sullivan import SullivanAlgebra


@dataclass(frozen=True)
class ExactnessAnswer:
    exact: bool
    preimage: Element | None = None
    reason: str = ""


def coordinate_matrix(columns: Sequence[Element], extra: Element | None = None) -> tuple[DomainMatrix, list[Monomial]]:
    """
    Columns are the coordinate vectors of the given elements (plus `extra` as a last column) on the monomials that
    occur in any of them, rows sorted canonically.
    """
    everything = list(columns) + ([extra] if extra is not None else [])
    monomials: set[Monomial] = set()
    for element in everything:
        monomials.update(element.terms)
    if everything:
        gens = everything[0].generators
        rows = sorted(monomials, key=gens.sort_key)
    else:
        rows = []
    row_index = {m: i for i, m in enumerate(rows)}
    entries: dict[int, dict[int, object]] = {}
    for j, element in enumerate(everything):
        for m, c in element.terms.items():
            entries.setdefault(row_index[m], {})[j] = QQ.convert(c)
    matrix = DomainMatrix(entries, (len(rows), len(everything)), QQ)
    return matrix, rows


def exact_rank(matrix: DomainMatrix) -> int:
    if 0 in matrix.shape:
        return 0
    return matrix.rank()


def modular_rank(matrix: DomainMatrix, prime: int | None = None) -> int:
    """Rank over GF(p) after clearing denominators; a lower bound for the rank over QQ."""
    if 0 in matrix.shape:
        return 0
    prime = settings.MODULAR_PRIME if prime is None else prime
    _, integral = matrix.clear_denoms(convert=True)
    return integral.convert_to(GF(prime)).rank()


def solve_linear(columns: Sequence[Element], target: Element) -> list[object] | None:
    """Rational coefficients x with sum x_j * columns[j] == target, or None when there are none."""
    if not target:
        return [QQ(0)] * len(columns)
    matrix, _ = coordinate_matrix(columns, target)
    n = len(columns)
    reduced, pivots = matrix.rref(method="CD")
    if n in pivots:
        return None
    rows = reduced.to_sparse().rep
    solution = [QQ(0)] * n
    for i, pivot in enumerate(pivots):
        row = rows.get(i, {})
        solution[pivot] = QQ.convert(row.get(n, 0)) / QQ.convert(row[pivot])
    return solution


def solve_exactness(
    alg: SullivanAlgebra,
    element: Element,
    budget: int | None = None,
    rng: random.Random | None = None,
) -> ExactnessAnswer:
    """
    Finds a preimage of `element` under d or certifies that none exists. `rng` shuffles the basis order, the answer
    must not depend on it.
    """
    if not element:
        return ExactnessAnswer(exact=True, preimage=alg.zero())
    if element.has_symbolic_coefficients:
        raise PreconditionError("exactness needs rational coefficients")
    degree = element.homogeneous_degree()
    if degree is None:
        raise PreconditionError("exactness is only decided for homogeneous elements")
    if alg.d(element):
        return ExactnessAnswer(exact=False, reason="not closed")
    basis = list(alg.basis(degree - 1, budget))
    if rng is not None:
        rng.shuffle(basis)
    if not basis:
        return ExactnessAnswer(exact=False, reason=f"degree {degree - 1} is empty")
    images = [alg.d_monomial(m) for m in basis]
    solution = solve_linear(images, element)
    if solution is None:
        return ExactnessAnswer(exact=False, reason="no solution of the linear system")
    preimage = alg.zero()
    for monomial, coeff in zip(basis, solution):
        if coeff:
            preimage = preimage + Element.from_monomial(alg.generators, monomial, coeff)
    if alg.d(preimage) != element:
        raise InternalInvariantError(f"computed preimage does not map to {element}")
    logging.debug(f"exact in degree {degree}: preimage has {len(preimage)} terms")
    return ExactnessAnswer(exact=True, preimage=preimage)


def all_exact(alg: SullivanAlgebra, elements: Sequence[Element], budget: int | None = None) -> bool:
    """Whether every element is a boundary, decided by one rank comparison for the whole batch."""
    nonzero = [e for e in elements if e]
    if not nonzero:
        return True
    degrees = {e.homogeneous_degree() for e in nonzero}
    if len(degrees) != 1 or None in degrees or any(e.has_symbolic_coefficients for e in nonzero):
        raise PreconditionError("a batch exactness check needs rational elements of one degree")
    if any(alg.d(e) for e in nonzero):
        return False
    (degree,) = degrees
    images = [image for image in (alg.d_monomial(m) for m in alg.basis(degree - 1, budget)) if image]
    if not images:
        return False
    base = exact_rank(coordinate_matrix(images)[0])
    return exact_rank(coordinate_matrix(images + nonzero)[0]) == base


def differential_rank(alg: SullivanAlgebra, degree: int, budget: int | None = None, modular: bool = False) -> int:
    """Rank of d restricted to the given degree."""
    basis = alg.basis(degree, budget)
    if not basis:
        return 0
    matrix, _ = coordinate_matrix([alg.d_monomial(m) for m in basis])
    return modular_rank(matrix) if modular else exact_rank(matrix)


def cohomology_dim(alg: SullivanAlgebra, degree: int, budget: int | None = None, modular: bool = False) -> int:
    if degree < 0:
        return 0
    size = len(alg.basis(degree, budget))
    cycles = size - differential_rank(alg, degree, budget, modular)
    boundaries = differential_rank(alg, degree - 1, budget, modular) if degree > 0 else 0
    return cycles - boundaries
