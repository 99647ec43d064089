import pytest

from endograph.exception import PreconditionError, ValidationError
from endograph.algebra.element import Element, GeneratorSet
from endograph.algebra.morphism import compose, is_dga_morphism
from endograph.algebra.sullivan import SullivanAlgebra, check_structure, formal_dimension, pure_part
from endograph.construction.ellipticity import ellipticity_certificate, pure_ideal
from endograph.construction.functor import functor_morphism, induced_automorphism
from endograph.construction.mg import TOP_DEGREE, build_mg
from endograph.construction.tilde import boundary_reason, d_closure, tilde_extend
from endograph.graph.graph import Graph, GraphMorphism, path_graph

from conftest import graph, mg


@pytest.mark.parametrize(("name", "dimension"), [("p2", 368), ("p3", 448), ("k3", 448), ("spider", 768)])
def test_formal_dimension(name: str, dimension: int) -> None:
    alg = mg(name)
    assert check_structure(alg.algebra).passed
    assert formal_dimension(alg.algebra) == dimension == alg.expected_formal_dimension


def test_p2_generators_and_differentials() -> None:
    alg = mg("p2")
    assert alg.generators.names == ("x1", "x2", "y1", "y2", "y3", "x[v1]", "x[v2]", "z", "z[v1]", "z[v2]")
    assert alg.generators.degrees == (8, 10, 33, 35, 37, 40, 40, 119, 119, 119)
    g = alg.generators
    expected = Element.from_names(g, [("x[v1]", 3)]) + Element.from_names(g, [("x2", 4), ("x[v1]", 1), ("x[v2]", 1)])
    assert alg.algebra.d_generator("z[v1]") == expected
    assert alg.algebra.d_generator("y2") == Element.from_names(g, [("x1", 2), ("x2", 2)])


def test_variant_changes_the_coupling() -> None:
    alg = build_mg(path_graph(2), 1, 0)
    g = alg.generators
    expected = Element.from_names(g, [("x[v1]", 3)]) + Element.from_names(g, [("x1", 5), ("x[v1]", 1), ("x[v2]", 1)])
    assert alg.algebra.d_generator("z[v1]") == expected
    assert formal_dimension(alg.algebra) == 368


def test_invalid_graphs_and_variants() -> None:
    with pytest.raises(PreconditionError):
        build_mg(Graph.from_edges([("a", "b"), ("c", "d")]))
    with pytest.raises(PreconditionError):
        build_mg(Graph.from_edges([], ["a"]))
    with pytest.raises(ValidationError):
        build_mg(path_graph(2), 0, 0)


@pytest.mark.parametrize("name", ["p2", "p3", "k3", "spider"])
@pytest.mark.parametrize("variant", [(0, 1), (1, 0), (1, 1)])
def test_ellipticity(name: str, variant: tuple[int, int]) -> None:
    cert = ellipticity_certificate(mg(name, *variant))
    assert cert.valid
    assert set(cert.nilpotence_exponents) == set(cert.even_generators)
    assert len(cert.witnesses) == 2


def test_witness_identities() -> None:
    cert = ellipticity_certificate(mg("p2"))
    g = pure_part(mg("p2").algebra).generators

    def el(*factors: tuple[str, int]) -> Element:
        return Element.from_names(g, factors)

    found = {w.target: w.preimage for w in cert.witnesses}
    assert found == {
        el(("x1", 17)): el(("z", 1), ("x1", 2)) - el(("y2", 1), ("x2", 10)),
        el(("x2", 13)): el(("z", 1), ("x2", 1)) - el(("y1", 1), ("x1", 12)),
    }


def test_pure_ideal_of_the_base() -> None:
    polys = pure_ideal(mg("p2").algebra)
    # y1, y2, y3, z and one per vertex
    assert len(polys) == 6


def test_unbounded_cohomology_is_not_certified() -> None:
    gens = GeneratorSet.from_pairs([("a", 2), ("c", 4), ("b", 5)])
    alg = SullivanAlgebra(gens, {"b": Element.from_names(gens, [("a", 3)])})
    cert = ellipticity_certificate(alg)
    assert not cert.valid
    assert cert.nilpotence_exponents == {"a": 3}


def test_d_closure_of_the_top_base_generator() -> None:
    alg = mg("p2").algebra
    assert d_closure(alg, ["z"]) == {"x1", "x2", "y1", "y2", "y3", "z"}
    assert d_closure(alg, ["x1"]) == {"x1"}
    # the default variant couples through x2^4 only
    assert d_closure(alg, ["z[v1]"]) == {"x2", "x[v1]", "x[v2]", "z[v1]"}


def test_power_of_x1_in_the_top_degree_is_refused_as_a_boundary() -> None:
    alg = mg("p2").algebra
    x = Element.from_names(alg.generators, [("x1", 46)])
    assert x.homogeneous_degree() == 368
    assert not alg.d(x)
    reason = boundary_reason(alg, x)
    assert reason is not None
    assert "formal dimension 208" in reason
    with pytest.raises(PreconditionError, match="boundary"):
        tilde_extend(alg, x)


def test_induced_automorphisms() -> None:
    alg = mg("p3")
    flip = induced_automorphism(alg, {"v1": "v3", "v2": "v2", "v3": "v1"})
    assert is_dga_morphism(flip)
    assert flip.image("z[v1]") == alg.z("v3")
    assert compose(flip, flip) == induced_automorphism(alg, {v: v for v in alg.vertices})
    with pytest.raises(ValidationError):
        induced_automorphism(alg, {"v1": "v2", "v2": "v1", "v3": "v3"})


FULL_MONOMORPHISMS = [
    ("p2", "p3", {"v1": "v1", "v2": "v2"}),
    ("p2", "p3", {"v1": "v3", "v2": "v2"}),
    ("p2", "k3", {"v1": "v1", "v2": "v3"}),
    ("p2", "k3", {"v1": "v2", "v2": "v1"}),
    ("p2", "star3", {"v1": "c", "v2": "l2"}),
    ("p3", "star3", {"v1": "l1", "v2": "c", "v3": "l3"}),
    ("p3", "p3", {"v1": "v3", "v2": "v2", "v3": "v1"}),
    ("k3", "k3", {"v1": "v2", "v2": "v3", "v3": "v1"}),
    ("p2", "p2", {"v1": "v2", "v2": "v1"}),
    ("star3", "star3", {"c": "c", "l1": "l2", "l2": "l3", "l3": "l1"}),
]


@pytest.mark.parametrize(("source", "target", "vertex_map"), FULL_MONOMORPHISMS)
def test_functor_on_full_monomorphisms(source: str, target: str, vertex_map: dict[str, str]) -> None:
    m = GraphMorphism(source=graph(source), target=graph(target), vertex_map=vertex_map)
    f = functor_morphism(m, mg(target), mg(source))
    assert is_dga_morphism(f)
    assert f.source is mg(target).algebra
    assert f.target is mg(source).algebra
    if source == target:
        inverse = {w: v for v, w in vertex_map.items()}
        assert f == induced_automorphism(mg(source), inverse)


COMPOSABLE = [
    (first, second)
    for first in FULL_MONOMORPHISMS
    for second in FULL_MONOMORPHISMS
    if first[1] == second[0]
]


@pytest.mark.parametrize(("first", "second"), COMPOSABLE)
def test_functor_is_contravariant(
    first: tuple[str, str, dict[str, str]], second: tuple[str, str, dict[str, str]]
) -> None:
    (source, middle, first_map), (_, target, second_map) = first, second
    m_first = GraphMorphism(source=graph(source), target=graph(middle), vertex_map=first_map)
    m_second = GraphMorphism(source=graph(middle), target=graph(target), vertex_map=second_map)
    vertex_map = {v: m_second(m_first(v)) for v in graph(source).vertices}
    composite = GraphMorphism(source=graph(source), target=graph(target), vertex_map=vertex_map)
    f_first = functor_morphism(m_first, mg(middle), mg(source))
    f_second = functor_morphism(m_second, mg(target), mg(middle))
    assert functor_morphism(composite, mg(target), mg(source)) == compose(f_first, f_second)


def test_functor_rejects_maps_that_are_not_full() -> None:
    m = GraphMorphism(source=graph("p3"), target=graph("k3"), vertex_map={"v1": "v1", "v2": "v2", "v3": "v3"})
    with pytest.raises(PreconditionError):
        functor_morphism(m, mg("k3"), mg("p3"))
    other_variant = build_mg(graph("p2"), 1, 1)
    m = GraphMorphism(source=graph("p2"), target=graph("p3"), vertex_map={"v1": "v1", "v2": "v2"})
    with pytest.raises(PreconditionError):
        functor_morphism(m, mg("p3"), other_variant)


def test_top_degree() -> None:
    assert {gen.name for gen in mg("p2").generators if gen.degree == TOP_DEGREE} == {"z", "z[v1]", "z[v2]"}
