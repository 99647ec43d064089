"""
Homotopy classes of self-maps of a graph algebra.

Two self-maps are identified when they agree below the top degree and their images of z and of every z[v] differ by
boundaries. The low images of a self-map are pinned down by a scalar s in {0, 1} for x1, x2, y1, y2, y3, and by the
images of the x[v]: a graph automorphism (f_sigma), nothing (f0, f1) or a tail p*x1^5 + q*x2^4 per vertex
(collapse maps).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from sympy import QQ

from endograph import logging
from endograph.exception import (
    ClassificationMismatch,
    InternalInvariantError,
    PreconditionError,
    VerificationFailure,
)
from endograph.algebra.element import Element
from endograph.algebra.linalg import all_exact, solve_exactness
from endograph.algebra.morphism import Morphism, compose, is_dga_morphism
from endograph.construction.functor import FIXED, induced_automorphism
from endograph.construction.mg import MGAlgebra, TOP_DEGREE, x_name
from endograph.graph.automorphism import automorphism_group, from_label_map, is_automorphism
from endograph.graph.perm_group import Perm, PermGroup, format_cycles, groups_isomorphic
from endograph.solver.ansatz import GenericMorphism, generic_ansatz
from endograph.solver.case_tree import CaseNode, CaseTree, solve_cases, verify_tree
from endograph.solver.constraints import ConstraintSystem, constraint_system


class EndoKind(str, Enum):
    CONSTANT = "constant"
    AUTOMORPHISM = "automorphism"
    COLLAPSE = "collapse"


@dataclass
class EndoClass:
    kind: EndoKind
    s: int
    sigma: dict[str, str] | None
    tail: dict[str, tuple[Any, Any]] | None
    representative: Morphism
    exact_freedom: list[str] = field(default_factory=list)
    leaves: int = 1

    @property
    def key(self) -> tuple:
        sigma = tuple(sorted(self.sigma.items())) if self.sigma else ()
        tail = tuple((v, str(p), str(q)) for v, (p, q) in sorted(self.tail.items())) if self.tail else ()
        return self.kind.value, self.s, sigma, tail

    @property
    def label(self) -> str:
        if self.kind is EndoKind.CONSTANT:
            return f"f{self.s}"
        if self.kind is EndoKind.AUTOMORPHISM:
            assert self.sigma is not None
            moved = [f"{v}->{w}" for v, w in sorted(self.sigma.items()) if v != w]
            return "id" if not moved else "sigma[" + ",".join(moved) + "]"
        assert self.tail is not None
        parts = [f"{v}:{p},{q}" for v, (p, q) in sorted(self.tail.items()) if p or q]
        return "collapse[" + ";".join(parts) + "]"

    @property
    def is_identity(self) -> bool:
        return self.kind is EndoKind.AUTOMORPHISM and all(v == w for v, w in (self.sigma or {}).items())


def _order_key(cls: EndoClass) -> tuple:
    rank = {EndoKind.CONSTANT: 0, EndoKind.AUTOMORPHISM: 1, EndoKind.COLLAPSE: 2}[cls.kind]
    return rank, cls.key


def _coefficient(mg: MGAlgebra, element: Element, *factors: tuple[str, int]) -> Any:
    monomial = tuple(sorted((mg.generators.index(name), exp) for name, exp in factors))
    return element.coefficient(monomial)


def describe(mg: MGAlgebra, f: Morphism) -> tuple[EndoKind, int, dict[str, str] | None, dict[str, tuple[Any, Any]] | None]:
    """Kind, scalar, permutation and tail read off the images below the top degree."""
    scalars = [_coefficient(mg, f.image(name), (name, 1)) for name in ("x1", "x2", "y1", "y2", "y3")]
    if len(set(scalars)) != 1 or scalars[0] not in (0, 1):
        raise ClassificationMismatch(f"x1, x2, y1, y2, y3 are scaled by {[str(c) for c in scalars]}")
    s = int(scalars[0])
    rows: dict[str, dict[str, Any]] = {}
    tails: dict[str, tuple[Any, Any]] = {}
    for v in mg.vertices:
        image = f.image(x_name(v))
        rows[v] = {w: c for w in mg.vertices if (c := _coefficient(mg, image, (x_name(w), 1)))}
        tails[v] = (_coefficient(mg, image, ("x1", 5)), _coefficient(mg, image, ("x2", 4)))
    has_tail = any(p or q for p, q in tails.values())
    if s == 0:
        if has_tail or any(rows.values()):
            raise ClassificationMismatch("x1 goes to zero but some x[v] does not")
        return EndoKind.CONSTANT, 0, None, None
    if not any(rows.values()):
        if not has_tail:
            return EndoKind.CONSTANT, 1, None, None
        return EndoKind.COLLAPSE, 1, None, tails
    if has_tail or any(len(row) != 1 or next(iter(row.values())) != 1 for row in rows.values()):
        raise ClassificationMismatch("the images of the x[v] are neither a permutation nor a tail")
    sigma = {v: next(iter(row)) for v, row in rows.items()}
    if not is_automorphism(mg.graph, sigma):
        raise ClassificationMismatch(f"{sigma} is not a graph automorphism")
    return EndoKind.AUTOMORPHISM, 1, sigma, None


def canonical_representative(
    mg: MGAlgebra,
    kind: EndoKind,
    s: int,
    sigma: dict[str, str] | None = None,
    tail: dict[str, tuple[Any, Any]] | None = None,
) -> Morphism:
    alg = mg.algebra
    if kind is EndoKind.AUTOMORPHISM:
        assert sigma is not None
        return induced_automorphism(mg, sigma)
    if s == 0:
        return Morphism.zero(alg, alg)
    assignment = {name: mg.generator(name) for name in FIXED}
    if kind is EndoKind.CONSTANT:
        return Morphism(alg, alg, assignment)
    assert tail is not None
    for v, (p, q) in tail.items():
        assignment[x_name(v)] = Element.from_names(mg.generators, [("x1", 5)], p) + Element.from_names(
            mg.generators, [("x2", 4)], q
        )
    partial = Morphism(alg, alg, assignment)
    for v in mg.vertices:
        name = f"z[{v}]"
        answer = solve_exactness(alg, partial.apply(alg.d_generator(name)))
        if not answer.exact or answer.preimage is None:
            raise ClassificationMismatch(f"the tail {tail} does not extend over {name}: {answer.reason}")
        assignment[name] = answer.preimage
    return Morphism(alg, alg, assignment)


def _top_names(mg: MGAlgebra) -> list[str]:
    return [gen.name for gen in mg.generators if gen.degree == TOP_DEGREE]


def homotopic(mg: MGAlgebra, f: Morphism, g: Morphism, budget: int | None = None) -> bool:
    """Same images below the top degree, top images differing by boundaries."""
    for gen in mg.generators:
        if gen.degree != TOP_DEGREE and f.image(gen.name) != g.image(gen.name):
            return False
    return all_exact(mg.algebra, [f.image(name) - g.image(name) for name in _top_names(mg)], budget)


def classify_homotopy(
    mg: MGAlgebra, f: Morphism, classes: Sequence[EndoClass] | None = None, budget: int | None = None
) -> EndoClass:
    if not is_dga_morphism(f):
        raise PreconditionError("the map does not commute with d")
    kind, s, sigma, tail = describe(mg, f)
    expected = EndoClass(kind=kind, s=s, sigma=sigma, tail=tail, representative=f)
    if classes is not None:
        match = next((cls for cls in classes if cls.key == expected.key), None)
        if match is None:
            raise ClassificationMismatch(f"no computed class looks like {expected.label}")
    else:
        match = EndoClass(
            kind=kind, s=s, sigma=sigma, tail=tail, representative=canonical_representative(mg, kind, s, sigma, tail)
        )
    if not homotopic(mg, f, match.representative, budget):
        raise ClassificationMismatch(f"the map agrees with {match.label} below the top degree but is not homotopic")
    return match


@dataclass
class Classification:
    mg: MGAlgebra
    generic: GenericMorphism
    system: ConstraintSystem
    tree: CaseTree
    classes: list[EndoClass]
    automorphisms: PermGroup

    @property
    def count(self) -> int:
        return len(self.classes)

    def by_kind(self, kind: EndoKind) -> list[EndoClass]:
        return [cls for cls in self.classes if cls.kind is kind]

    @property
    def tail_solutions(self) -> int:
        """Rational tails including the zero tail of f1."""
        return len(self.by_kind(EndoKind.COLLAPSE)) + 1


def _leaf_class(mg: MGAlgebra, generic: GenericMorphism, leaf: CaseNode, budget: int | None) -> EndoClass:
    assert leaf.solution is not None
    top = {u.id for u in generic.unknowns if u.template_degree == TOP_DEGREE}
    free = set(leaf.free)
    if free - top:
        names = sorted(generic.name(v) for v in free - top)
        raise ClassificationMismatch(f"free parameters {names} below the top degree")
    for var, value in leaf.solution.items():
        if value.total_degree() > 1 or (var not in top and not value.is_constant):
            raise ClassificationMismatch(f"{generic.name(var)} = {value.format(generic.name)} is not affine")

    def instantiate(base: dict[int, Any]) -> Morphism:
        values = dict(base)
        for var, value in leaf.solution.items():
            values[var] = value.substitute(base).constant_value
        return generic.instantiate(values)

    base = {v: QQ(1) if v in leaf.nonzero else QQ(0) for v in free}
    rep = instantiate(base)
    if not is_dga_morphism(rep):
        raise InternalInvariantError("a case tree solution does not commute with d")
    directions = []
    for v in sorted(free):
        shifted = instantiate({**base, v: base[v] + 1})
        directions += [shifted.image(name) - rep.image(name) for name in _top_names(mg)]
    if not all_exact(mg.algebra, directions, budget):
        raise ClassificationMismatch("a free direction of a solution family is not a boundary")
    kind, s, sigma, tail = describe(mg, rep)
    return EndoClass(
        kind=kind,
        s=s,
        sigma=sigma,
        tail=tail,
        representative=rep,
        exact_freedom=sorted(generic.name(v) for v in free),
    )


def classify_endos(
    mg: MGAlgebra, split_budget: int | None = None, verify: bool = True, budget: int | None = None
) -> Classification:
    generic = generic_ansatz(mg)
    system = constraint_system(generic)
    tree = solve_cases(system, split_budget)
    tree.require_complete()
    if verify:
        verify_tree(tree)

    found: dict[tuple, EndoClass] = {}
    for leaf in tree.solutions():
        cls = _leaf_class(mg, generic, leaf, budget)
        existing = found.get(cls.key)
        if existing is None:
            found[cls.key] = cls
            continue
        if not homotopic(mg, cls.representative, existing.representative, budget):
            raise ClassificationMismatch(f"two solution families of {cls.label} are not homotopic")
        existing.leaves += 1
        existing.exact_freedom = sorted(set(existing.exact_freedom) | set(cls.exact_freedom))
    classes = sorted(found.values(), key=_order_key)

    automorphisms = automorphism_group(mg.graph)
    realized = {from_label_map(mg.graph, cls.sigma) for cls in classes if cls.sigma is not None}
    if realized != set(automorphisms.elements):
        raise InternalInvariantError(
            f"{len(realized)} automorphism classes for a graph with {automorphisms.order} automorphisms"
        )
    logging.info(f"{len(classes)} homotopy classes: {[cls.label for cls in classes]}")
    return Classification(
        mg=mg, generic=generic, system=system, tree=tree, classes=classes, automorphisms=automorphisms
    )


@dataclass
class EquivalenceGroup:
    classes: list[EndoClass]
    table: list[list[int]]
    group: PermGroup
    witness: dict[Perm, Perm]

    @property
    def order(self) -> int:
        return self.group.order

    def witness_labels(self) -> dict[str, str]:
        """Class label -> image automorphism in 1-based cycle notation."""
        identity = next(i for i, cls in enumerate(self.classes) if cls.is_identity)
        # in the left regular representation the element of class g sends the identity class to g
        return {self.classes[element[identity]].label: format_cycles(image) for element, image in self.witness.items()}


def equivalence_group(classification: Classification, budget: int | None = None) -> EquivalenceGroup:
    mg = classification.mg
    classes = classification.by_kind(EndoKind.AUTOMORPHISM)
    index = {cls.key: i for i, cls in enumerate(classes)}
    table = []
    for first in classes:
        row = []
        for second in classes:
            product = classify_homotopy(mg, compose(first.representative, second.representative), classes, budget)
            row.append(index[product.key])
        table.append(row)

    for i, first in enumerate(classes):
        for j, second in enumerate(classes):
            assert first.sigma is not None and second.sigma is not None
            expected = {v: first.sigma[second.sigma[v]] for v in mg.vertices}
            if classes[table[i][j]].sigma != expected:
                raise VerificationFailure(f"{first.label} after {second.label} is not the class of the composite")

    group = PermGroup.from_table(table)
    ok, witness = groups_isomorphic(group, classification.automorphisms)
    if not ok or witness is None:
        raise VerificationFailure("the self-equivalence group is not isomorphic to the automorphism group")
    logging.info(f"self-equivalences form a group of order {group.order}")
    return EquivalenceGroup(classes=classes, table=table, group=group, witness=witness)


def perturb_top(mg: MGAlgebra, f: Morphism, rng: random.Random, terms: int = 3, budget: int | None = None) -> Morphism:
    """Adds the boundary of a random degree 118 element to the image of z and of every z[v]."""
    alg = mg.algebra
    basis = alg.basis(TOP_DEGREE - 1, budget)
    assignment = f.assignment()
    for name in _top_names(mg):
        noise = alg.zero()
        for monomial in rng.sample(basis, min(terms, len(basis))):
            noise = noise + Element.from_monomial(alg.generators, monomial, rng.randint(-3, 3))
        assignment[name] = assignment[name] + alg.d(noise)
    return Morphism(f.source, f.target, assignment)
