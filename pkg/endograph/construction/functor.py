"""
Morphisms of graph algebras induced by maps of graphs.

An automorphism sigma of the graph gives f_sigma: x[v] -> x[sigma v], z[v] -> z[sigma v], identity elsewhere.
A full monomorphism sigma: G1 -> G2 gives, contravariantly, M(sigma) from the algebra of G2 to that of G1:
x[v'] -> x[v] when sigma(v) = v' and 0 when v' is not hit, the same for z[v'].
"""

from typing import Mapping

from endograph.exception import InternalInvariantError, PreconditionError, ValidationError
from endograph.algebra.morphism import Morphism, is_dga_morphism
from endograph.construction.mg import MGAlgebra, BASE_GENERATORS, x_name, z_name
from endograph.graph.automorphism import is_automorphism
from endograph.graph.graph import GraphMorphism, is_full_monomorphism

FIXED = tuple(name for name, _ in BASE_GENERATORS) + ("z",)


def induced_automorphism(alg: MGAlgebra, sigma: Mapping[str, str]) -> Morphism:
    if not is_automorphism(alg.graph, dict(sigma)):
        raise ValidationError(f"{dict(sigma)} is not an automorphism of the graph")
    assignment = {name: alg.generator(name) for name in FIXED}
    for v in alg.vertices:
        assignment[x_name(v)] = alg.x(sigma[v])
        assignment[z_name(v)] = alg.z(sigma[v])
    f = Morphism(alg.algebra, alg.algebra, assignment)
    if not is_dga_morphism(f):
        raise InternalInvariantError(f"f_sigma for {dict(sigma)} does not commute with d")
    return f


def functor_morphism(m: GraphMorphism, target_alg: MGAlgebra, source_alg: MGAlgebra) -> Morphism:
    """M(m) from the algebra on m.target to the algebra on m.source."""
    if not is_full_monomorphism(m):
        raise PreconditionError("the graph map is not a full monomorphism")
    if target_alg.graph != m.target or source_alg.graph != m.source:
        raise PreconditionError("algebras do not belong to the graphs of the map")
    if target_alg.variant != source_alg.variant:
        raise PreconditionError("both algebras must use the same variant")
    assignment = {name: source_alg.generator(name) for name in FIXED}
    for v_prime in target_alg.vertices:
        v = m.preimage(v_prime)
        if v is not None:
            assignment[x_name(v_prime)] = source_alg.x(v)
            assignment[z_name(v_prime)] = source_alg.z(v)
    f = Morphism(target_alg.algebra, source_alg.algebra, assignment)
    if not is_dga_morphism(f):
        raise InternalInvariantError("the functor image does not commute with d")
    return f
