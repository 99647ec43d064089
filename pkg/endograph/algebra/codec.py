"""
JSON documents for algebras and elements.

    {"generators": [{"name": "a", "degree": 2}, ...],
     "differential": {"b": [["1", "1", [["a", 2]]]], ...}}

A term is [numerator, denominator, [[generator, exponent], ...]] with integers as strings, terms in canonical
monomial order. The optional key "allow_degree_one" marks algebras with degree one generators.
"""

from typing import Any

from sympy import QQ

from endograph.exception import ParseError, ValidationError, DomainMismatch
from endograph.algebra.element import Element, GeneratorSet
from endograph.algebra.sullivan import SullivanAlgebra


def element_to_json(element: Element) -> list[list[Any]]:
    names = element.generators.names
    terms = []
    for monomial, coeff in element.sorted_terms():
        value = QQ.convert(coeff)
        terms.append(
            [str(int(value.numerator)), str(int(value.denominator)), [[names[i], exp] for i, exp in monomial]]
        )
    return terms


def element_from_json(generators: GeneratorSet, terms: Any) -> Element:
    if not isinstance(terms, list):
        raise ParseError("an element is a list of terms")
    result = Element.zero(generators)
    for term in terms:
        try:
            numerator, denominator, factors = term
            coeff = QQ(int(numerator), int(denominator))
            product = [(str(name), int(exp)) for name, exp in factors]
        except (TypeError, ValueError, ZeroDivisionError) as err:
            raise ParseError(f"malformed term {term!r}: {err}") from None
        for name, exp in product:
            if exp < 1:
                raise ParseError(f"non-positive exponent in term {term!r}")
        try:
            result = result + Element.from_names(generators, product, coeff)
        except DomainMismatch as err:
            raise ParseError(str(err)) from None
    return result


def algebra_to_json(alg: SullivanAlgebra) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "generators": [{"name": gen.name, "degree": gen.degree} for gen in alg.generators],
        "differential": {gen.name: element_to_json(alg.d_generator(gen.name)) for gen in alg.generators},
    }
    if alg.allow_degree_one:
        doc["allow_degree_one"] = True
    return doc


def algebra_from_json(doc: Any) -> SullivanAlgebra:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise ParseError("an algebra document needs a 'generators' list")
    try:
        pairs = [(str(entry["name"]), int(entry["degree"])) for entry in doc["generators"]]
    except (TypeError, KeyError, ValueError) as err:
        raise ParseError(f"malformed generator entry: {err}") from None
    try:
        generators = GeneratorSet.from_pairs(pairs)
    except ValidationError as err:
        raise ParseError(str(err)) from None
    differential = {}
    for name, terms in dict(doc.get("differential", {})).items():
        if name not in generators:
            raise ParseError(f"differential given for unknown generator {name!r}")
        differential[name] = element_from_json(generators, terms)
    return SullivanAlgebra(generators, differential, allow_degree_one=bool(doc.get("allow_degree_one", False)))
