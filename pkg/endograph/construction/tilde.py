"""
Tilde extensions: kill a top cocycle x by a new odd generator y with d(y) = x.

When z with d(z) = x^2 is known, x*y - z is a closed representative of the new top class. A cocycle that is a
boundary is refused: killing it only adds a free odd generator, whose sign flip reverses the orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from endograph import logging
from endograph.exception import InternalInvariantError, PreconditionError, ResourceLimit
from endograph.algebra.element import Element
from endograph.algebra.linalg import solve_exactness
from endograph.algebra.sullivan import SullivanAlgebra, check_structure, formal_dimension
from endograph.construction.ellipticity import ellipticity_certificate


@dataclass
class TildeExtension:
    base: SullivanAlgebra
    x: Element
    z_witness: Element | None
    extended: SullivanAlgebra
    y_name: str
    fundamental_rep: Element | None
    minimal: bool
    # False when deciding whether x is a boundary ran out of budget
    nonexact_verified: bool = True

    @property
    def y(self) -> Element:
        return self.extended.generator(self.y_name)

    @property
    def fundamental_rep_verified(self) -> bool:
        return self.fundamental_rep is not None

    def lift(self, element: Element) -> Element:
        """A base element seen in the extension."""
        return element.rebase(self.extended.generators)


def _fresh_name(alg: SullivanAlgebra, wanted: str) -> str:
    name = wanted
    while name in alg.generators:
        name += "'"
    return name


def d_closure(alg: SullivanAlgebra, names: Iterable[str]) -> frozenset[str]:
    """The smallest set of generators containing `names` whose differentials stay in the algebra they generate."""
    found = set(names)
    pending = list(found)
    while pending:
        for index in alg.d_generator(pending.pop()).generator_indices():
            name = alg.generators.names[index]
            if name not in found:
                found.add(name)
                pending.append(name)
    return frozenset(found)


def boundary_reason(alg: SullivanAlgebra, x: Element, budget: int | None = None) -> str | None:
    """
    Why the closed element x is a boundary, None when it is not. Raises ResourceLimit when neither can be shown.

    x is a boundary when it lies in an elliptic minimal sub-algebra whose formal dimension is below the degree of x.
    The candidates are the d-closures of the generators of x, alone and together with one more generator. Failing
    that, the linear system d(p) = x is solved in the whole algebra.
    """
    degree = x.homogeneous_degree()
    assert degree is not None
    own = {alg.generators.names[index] for index in x.generator_indices()}
    candidates = {d_closure(alg, own)} | {d_closure(alg, own | {name}) for name in alg.generators.names}
    for names in sorted(candidates, key=lambda c: (len(c), sorted(c))):
        sub = alg.subalgebra(names)
        if not check_structure(sub).minimal or formal_dimension(sub) >= degree:
            continue
        try:
            elliptic = ellipticity_certificate(sub).valid
        except ResourceLimit:
            continue
        if elliptic:
            return f"above the formal dimension {formal_dimension(sub)} of the elliptic sub-algebra on {sorted(names)}"

    answer = solve_exactness(alg, x, budget)
    if answer.exact:
        return f"d({answer.preimage}) = x"
    return None


def tilde_extend(
    alg: SullivanAlgebra,
    x: Element,
    z_witness: Element | None = None,
    y_name: str = "y",
    budget: int | None = None,
) -> TildeExtension:
    degree = x.homogeneous_degree()
    if degree is None:
        raise PreconditionError("x must be a nonzero homogeneous element")
    if degree % 2:
        raise PreconditionError(f"x has odd degree {degree}")
    if alg.d(x):
        raise PreconditionError("x is not closed")
    if z_witness is not None:
        if z_witness.homogeneous_degree() != 2 * degree - 1:
            raise PreconditionError(f"the witness for x^2 must be homogeneous of degree {2 * degree - 1}")
        if alg.d(z_witness) != x * x:
            raise PreconditionError("d(z_witness) is not x^2")

    nonexact_verified = True
    try:
        reason = boundary_reason(alg, x, budget)
    except ResourceLimit as err:
        logging.warning(f"could not decide whether the cocycle is a boundary: {err}")
        reason, nonexact_verified = None, False
    if reason is not None:
        raise PreconditionError(f"x is a boundary, {reason}")

    name = _fresh_name(alg, y_name)
    generators = alg.generators.extended([(name, degree - 1)])
    differential = {gen.name: alg.d_generator(gen.name).rebase(generators) for gen in alg.generators}
    differential[name] = x.rebase(generators)
    extended = SullivanAlgebra(generators, differential, allow_degree_one=alg.allow_degree_one or degree - 1 == 1)

    report = check_structure(extended)
    if not report.is_sullivan:
        raise InternalInvariantError(f"tilde extension is not a Sullivan algebra: {report.failures}")

    rep = None
    if z_witness is not None:
        rep = x.rebase(generators) * extended.generator(name) - z_witness.rebase(generators)
        if extended.d(rep):
            raise InternalInvariantError("x*y - z is not closed")
    logging.info(f"tilde extension by {name} of degree {degree - 1}, minimal {report.minimal}")
    return TildeExtension(
        base=alg,
        x=x,
        z_witness=z_witness,
        extended=extended,
        y_name=name,
        fundamental_rep=rep,
        minimal=report.minimal,
        nonexact_verified=nonexact_verified,
    )
