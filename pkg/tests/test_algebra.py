import random

import pytest
from sympy import QQ, Mul, expand, symbols

from endograph.exception import DomainMismatch, ParseError, ResourceLimit, ValidationError
from endograph.algebra.codec import algebra_from_json, algebra_to_json, element_from_json, element_to_json
from endograph.algebra.element import Element, GeneratorSet
from endograph.algebra.morphism import Morphism, compose, is_dga_morphism
from endograph.algebra.polynomial import Polynomial
from endograph.algebra.sullivan import SullivanAlgebra, check_structure, formal_dimension, pure_part

from conftest import mg, sphere_model


def random_element(alg: SullivanAlgebra, rng: random.Random, degrees: list[int]) -> Element:
    for _ in range(20):
        basis = alg.basis(rng.choice(degrees))
        if basis:
            break
    element = alg.zero()
    for monomial in rng.sample(basis, min(3, len(basis))):
        element = element + Element.from_monomial(alg.generators, monomial, rng.randint(-5, 5))
    return element


def sign(a: Element, b: Element) -> int:
    da, db = a.homogeneous_degree(), b.homogeneous_degree()
    if da is None or db is None:
        return 1
    return -1 if da * db % 2 else 1


ALGEBRAS = {
    "sphere": (sphere_model, [0, 2, 3, 4, 5, 6, 7, 8]),
    "p2": (lambda: mg("p2").algebra, [8, 10, 16, 18, 33, 35, 40, 41, 43, 45]),
    "k3": (lambda: mg("k3").algebra, [8, 10, 33, 35, 40, 43]),
}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_graded_algebra_laws(name: str, seed: int) -> None:
    build, degrees = ALGEBRAS[name]
    alg = build()
    rng = random.Random(seed)
    for _ in range(1000):
        a, b, c = (random_element(alg, rng, degrees) for _ in range(3))
        assert a * b == (b * a).scale(sign(a, b))
        assert (a * b) * c == a * (b * c)
        assert alg.d(alg.d(a)) == alg.zero()
        da = a.homogeneous_degree() or 0
        assert alg.d(a * b) == alg.d(a) * b + (a * alg.d(b)).scale(-1 if da % 2 else 1)


def test_odd_generators_anticommute() -> None:
    alg = mg("p2").algebra
    y1, y2 = alg.generator("y1"), alg.generator("y2")
    assert y1 * y2 == -(y2 * y1)
    assert not y1 * y1
    assert str(y2 * y1) == "-y1*y2"


def test_elements_of_different_algebras_do_not_mix() -> None:
    with pytest.raises(DomainMismatch):
        sphere_model().generator("a") + mg("p2").generator("x1")


def test_sphere_model_structure() -> None:
    alg = sphere_model()
    report = check_structure(alg)
    assert report.passed
    assert formal_dimension(alg) == 2


def test_structure_report_names_the_failures() -> None:
    gens = GeneratorSet.from_pairs([("a", 2), ("b", 3), ("c", 4)])
    linear = SullivanAlgebra(gens, {"b": Element.from_names(gens, [("c", 1)])})
    report = check_structure(linear)
    assert report.homogeneous
    assert not report.lower_degree
    assert not report.filtration
    assert not report.minimal
    assert not report.passed
    assert report.failures


def test_low_degree_generators_are_rejected() -> None:
    gens = GeneratorSet.from_pairs([("t", 1)])
    with pytest.raises(ValidationError):
        SullivanAlgebra(gens, {})
    assert SullivanAlgebra(gens, {}, allow_degree_one=True).generators.names == ("t",)


def test_pure_part_keeps_even_monomials_of_odd_generators() -> None:
    pure = pure_part(mg("p2").algebra)
    assert pure.d_generator("z") == Element.from_names(pure.generators, [("x1", 15)]) + Element.from_names(
        pure.generators, [("x2", 12)]
    )
    assert pure.d_generator("y1") == mg("p2").algebra.d_generator("y1")
    assert not pure.d_generator("x1")


def test_basis_respects_the_budget() -> None:
    alg = mg("p2").algebra
    assert len(alg.basis(40)) == 4
    with pytest.raises(ResourceLimit):
        alg.basis(119, budget=3)


def test_morphisms_compose_and_commute_with_d() -> None:
    alg = sphere_model()
    double = Morphism(alg, alg, {"a": alg.generator("a").scale(2), "b": alg.generator("b").scale(4)})
    assert is_dga_morphism(double)
    square = compose(double, double)
    assert square.image("a") == alg.generator("a").scale(4)
    assert square.image("b") == alg.generator("b").scale(16)
    broken = Morphism(alg, alg, {"a": alg.generator("a").scale(2), "b": alg.generator("b")})
    assert not is_dga_morphism(broken)
    assert broken.failing_generators() == ["b"]


def test_morphism_images_must_be_homogeneous() -> None:
    alg = sphere_model()
    with pytest.raises(ValidationError):
        Morphism(alg, alg, {"a": alg.generator("b")})


def test_algebra_json_round_trip() -> None:
    alg = mg("p2", 1, 1).algebra
    doc = algebra_to_json(alg)
    again = algebra_from_json(doc)
    assert again.generators == alg.generators
    assert algebra_to_json(again) == doc
    z = alg.d_generator("z[v1]")
    assert element_from_json(alg.generators, element_to_json(z)) == z


def test_element_json_with_fractions() -> None:
    alg = sphere_model()
    element = element_from_json(alg.generators, [["3", "2", [["a", 2]]], ["-1", "1", [["a", 1], ["b", 1]]]])
    assert element.coefficient(((0, 2),)) == QQ(3, 2)
    assert element.homogeneous_degree() is None


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"generators": [{"name": "a"}]},
        {"generators": [{"name": "a", "degree": 2}], "differential": {"q": []}},
        {"generators": [{"name": "a", "degree": 2}, {"name": "b", "degree": 3}], "differential": {"b": [["1"]]}},
        {"generators": [{"name": "a", "degree": 2}], "differential": {"a": [["1", "0", []]]}},
    ],
)
def test_malformed_algebra_documents(doc: object) -> None:
    with pytest.raises(ParseError):
        algebra_from_json(doc)


T = symbols("t0:5")


def random_polynomial(rng: random.Random) -> Polynomial:
    p = Polynomial()
    for _ in range(rng.randint(2, 4)):
        term = tuple((var, rng.randint(1, 3)) for var in sorted(rng.sample(range(5), rng.randint(0, 3))))
        p = p + Polynomial.monomial(term, QQ(rng.randint(-6, 6), rng.randint(1, 4)))
    return p


def as_expr(p: Polynomial):
    return sum((QQ.to_sympy(coeff) * Mul(*(T[var] ** exp for var, exp in term)) for term, coeff in p), 0)


def test_polynomial_arithmetic_agrees_with_expansion(seed: int) -> None:
    rng = random.Random(seed)
    for _ in range(200):
        p, q, r = (random_polynomial(rng) for _ in range(3))
        assert expand(as_expr(p * q) - as_expr(p) * as_expr(q)) == 0
        assert expand(as_expr(p**3) - as_expr(p) ** 3) == 0
        values = {1: q, 3: r, 4: QQ(-2, 3)}
        replaced = {T[1]: as_expr(q), T[3]: as_expr(r), T[4]: QQ.to_sympy(QQ(-2, 3))}
        expected = as_expr(p).subs(replaced, simultaneous=True)
        assert expand(as_expr(p.substitute(values)) - expected) == 0


def test_polynomial_results_are_sparse_terms() -> None:
    a, b = Polynomial.variable(2), Polynomial.variable(7)
    square = (a + b) ** 2
    assert square.terms == {((2, 2),): 1, ((2, 1), (7, 1)): 2, ((7, 2),): 1}
    assert ((a - b) * (a + b)).terms == {((2, 2),): 1, ((7, 2),): -1}
    assert (a * b - 1).substitute({7: a}) == a**2 - 1
    assert (a + b).substitute({2: -b}) == Polynomial()
    assert Polynomial.constant(3) ** 0 == 1
