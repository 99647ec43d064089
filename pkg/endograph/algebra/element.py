"""
Generators and Elements of a free graded-commutative algebra over the rationals.

An Element lives in one generator universe (a GeneratorSet). Its coefficients are exact rationals (sympy QQ) or,
for generic morphisms, Polynomials in unknowns; both kinds mix freely through the helpers below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping

from sympy import QQ

from endograph.exception import DomainMismatch, ValidationError
from endograph.algebra import monomial as mono
from endograph.algebra.monomial import Monomial, UNIT
from endograph.algebra.polynomial import Polynomial


def cmul(a: Any, b: Any) -> Any:
    """Product of two coefficients, either of which may be a Polynomial."""
    if isinstance(b, Polynomial) and not isinstance(a, Polynomial):
        return b * a
    return a * b


def cadd(a: Any, b: Any) -> Any:
    if isinstance(b, Polynomial) and not isinstance(a, Polynomial):
        return b + a
    return a + b


def coerce_coefficient(value: Any) -> Any:
    if isinstance(value, Polynomial):
        return value
    return QQ.convert(value)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    index: int

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered generator universe; equality is by names and degrees."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    parity: tuple[bool, ...] = field(init=False, compare=False, repr=False)
    _index: dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.names) != len(self.degrees):
            raise ValidationError("every generator needs exactly one degree")
        if len(set(self.names)) != len(self.names):
            raise ValidationError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not name or any(ch.isspace() for ch in name):
                raise ValidationError(f"invalid generator name {name!r}")
        object.__setattr__(self, "parity", tuple(d % 2 == 1 for d in self.degrees))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> GeneratorSet:
        listed = list(pairs)
        return cls(names=tuple(name for name, _ in listed), degrees=tuple(degree for _, degree in listed))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[Generator]:
        for index, (name, degree) in enumerate(zip(self.names, self.degrees)):
            yield Generator(name=name, degree=degree, index=index)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DomainMismatch(f"unknown generator {name!r}") from None

    def generator(self, name: str) -> Generator:
        index = self.index(name)
        return Generator(name=name, degree=self.degrees[index], index=index)

    def extended(self, pairs: Iterable[tuple[str, int]]) -> GeneratorSet:
        """A new universe with generators appended; old monomials keep their meaning."""
        extra = list(pairs)
        return GeneratorSet(
            names=self.names + tuple(name for name, _ in extra),
            degrees=self.degrees + tuple(degree for _, degree in extra),
        )

    def monomial_degree(self, monomial: Monomial) -> int:
        return mono.degree(self.degrees, monomial)

    def sort_key(self, monomial: Monomial) -> tuple[int, tuple[int, ...]]:
        return mono.sort_key(self.degrees, monomial)

    def format(self, monomial: Monomial) -> str:
        return mono.format_monomial(self.names, monomial)


class Element:
    """Finite sum of canonical monomials with nonzero coefficients."""

    __slots__ = ("generators", "terms")

    generators: GeneratorSet
    terms: dict[Monomial, Any]

    def __init__(self, generators: GeneratorSet, terms: Mapping[Monomial, Any] | None = None) -> None:
        self.generators = generators
        self.terms = {}
        if terms:
            for monomial, coeff in terms.items():
                value = coerce_coefficient(coeff)
                if value:
                    self.terms[monomial] = value

    @classmethod
    def _raw(cls, generators: GeneratorSet, terms: dict[Monomial, Any]) -> Element:
        obj = cls.__new__(cls)
        obj.generators = generators
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, generators: GeneratorSet) -> Element:
        return cls._raw(generators, {})

    @classmethod
    def scalar(cls, generators: GeneratorSet, value: Any) -> Element:
        return cls(generators, {UNIT: value})

    @classmethod
    def generator(cls, generators: GeneratorSet, name: str, coeff: Any = 1) -> Element:
        return cls(generators, {((generators.index(name), 1),): coeff})

    @classmethod
    def from_monomial(cls, generators: GeneratorSet, monomial: Monomial, coeff: Any = 1) -> Element:
        for index, exp in monomial:
            assert exp >= 1, f"exponent {exp} in {monomial}"
            assert exp == 1 or not generators.parity[index], f"odd generator squared in {monomial}"
        return cls(generators, {monomial: coeff})

    @classmethod
    def from_names(cls, generators: GeneratorSet, factors: Iterable[tuple[str, int]], coeff: Any = 1) -> Element:
        """Product of named powers in the given order, Koszul sign included."""
        result = cls.scalar(generators, coeff)
        for name, exp in factors:
            result = result * cls.generator(generators, name) ** exp
        return result

    # queries

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list[tuple[Monomial, Any]]:
        return sorted(self.terms.items(), key=lambda item: self.generators.sort_key(item[0]))

    def coefficient(self, monomial: Monomial) -> Any:
        return self.terms.get(monomial, QQ(0))

    def degrees(self) -> set[int]:
        return {self.generators.monomial_degree(m) for m in self.terms}

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms; None for zero (homogeneous of every degree) or mixed degrees."""
        found = self.degrees()
        return found.pop() if len(found) == 1 else None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        found = self.degrees()
        if not found:
            return True
        if len(found) > 1:
            return False
        return degree is None or degree in found

    def generator_indices(self) -> set[int]:
        return {index for m in self.terms for index, _ in m}

    @property
    def has_symbolic_coefficients(self) -> bool:
        return any(isinstance(c, Polynomial) for c in self.terms.values())

    # arithmetic

    def _check(self, other: Element) -> None:
        if other.generators is not self.generators and other.generators != self.generators:
            raise DomainMismatch("elements live over different generator sets")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        result = dict(self.terms)
        for m, c in other.terms.items():
            value = cadd(result[m], c) if m in result else c
            if value:
                result[m] = value
            else:
                result.pop(m, None)
        return Element._raw(self.generators, result)

    def __neg__(self) -> Element:
        return Element._raw(self.generators, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def scale(self, factor: Any) -> Element:
        factor = coerce_coefficient(factor)
        if not factor:
            return Element.zero(self.generators)
        result = {}
        for m, c in self.terms.items():
            value = cmul(c, factor)
            if value:
                result[m] = value
        return Element._raw(self.generators, result)

    def __mul__(self, other: Any) -> Element:
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        parity = self.generators.parity
        result: dict[Monomial, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = mono.product(parity, m1, m2)
                if not sign:
                    continue
                value = cmul(c1, c2)
                if sign < 0:
                    value = -value
                if m in result:
                    value = cadd(result[m], value)
                if value:
                    result[m] = value
                else:
                    result.pop(m, None)
        return Element._raw(self.generators, result)

    def __rmul__(self, other: Any) -> Element:
        return self.scale(other)

    def __pow__(self, exponent: int) -> Element:
        assert exponent >= 0, "negative powers are not defined"
        result = Element.scalar(self.generators, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def map_coefficients(self, fn: Any) -> Element:
        result = {}
        for m, c in self.terms.items():
            value = fn(c)
            if value:
                result[m] = value
        return Element._raw(self.generators, result)

    def project(self, keep: Any) -> Element:
        """Sub-sum of the terms whose monomial satisfies the predicate."""
        return Element._raw(self.generators, {m: c for m, c in self.terms.items() if keep(m)})

    def rebase(self, generators: GeneratorSet) -> Element:
        """Same terms over a universe whose leading generators coincide with ours."""
        n = len(self.generators)
        if generators.names[:n] != self.generators.names or generators.degrees[:n] != self.generators.degrees:
            raise DomainMismatch("target universe does not extend the source universe")
        return Element._raw(generators, dict(self.terms))

    # comparison and display

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.generators == other.generators and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.generators.names, frozenset(self.terms.items())))

    def format(self, coefficient_format: Any = str) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            body = self.generators.format(m)
            if isinstance(c, Polynomial):
                pieces.append(f"({coefficient_format(c)})*{body}")
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{c}*{body}" if m else str(c))
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Element({self.format()})"
