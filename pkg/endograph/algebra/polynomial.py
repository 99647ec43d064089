"""
Sparse multivariate polynomials over the rationals in integer-indexed unknowns.

These are the coefficients of a generic morphism: every template coefficient is an unknown, and the equations a
morphism has to satisfy are polynomials in these unknowns. Terms are tuples of (variable, exponent) pairs sorted by
variable id, the empty tuple is the constant term. Coefficients are elements of sympy's QQ.

Products, powers and substitutions run in sympy's sparse polynomial rings over QQ, one ring per number of
variables; the unknowns of an operation are mapped onto the ring generators in increasing order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator, Mapping

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing

Term = tuple[tuple[int, int], ...]
ONE: Term = ()


def merge_terms(a: Term, b: Term) -> Term:
    """Product of two terms."""
    if not a:
        return b
    if not b:
        return a
    exponents = dict(a)
    for var, exp in b:
        exponents[var] = exponents.get(var, 0) + exp
    return tuple(sorted(exponents.items()))


def term_variables(term: Term) -> tuple[int, ...]:
    return tuple(var for var, _ in term)


@lru_cache(maxsize=None)
def _ring(size: int) -> PolyRing:
    return PolyRing([f"t{i}" for i in range(size)], QQ)


def _shared_ring(polys: Iterable[Polynomial]) -> tuple[tuple[int, ...], PolyRing]:
    variables = tuple(sorted(set().union(*(p.variables() for p in polys))))
    return variables, _ring(max(len(variables), 1))


class Polynomial:
    __slots__ = ("terms",)

    terms: dict[Term, Any]

    def __init__(self, terms: Mapping[Term, Any] | None = None) -> None:
        self.terms = {}
        if terms:
            for term, coeff in terms.items():
                value = QQ.convert(coeff)
                if value:
                    self.terms[term] = value

    @classmethod
    def _raw(cls, terms: dict[Term, Any]) -> Polynomial:
        """Trusted constructor: no conversion, no zero pruning."""
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def variable(cls, var: int) -> Polynomial:
        return cls._raw({((var, 1),): QQ(1)})

    @classmethod
    def constant(cls, value: Any) -> Polynomial:
        return cls({ONE: value})

    @classmethod
    def monomial(cls, term: Term, coeff: Any = 1) -> Polynomial:
        return cls({term: coeff})

    def lift(self, ring: PolyRing, variables: tuple[int, ...]) -> PolyElement:
        """The polynomial in `ring`, variables[i] becoming the i-th generator."""
        position = {var: i for i, var in enumerate(variables)}
        element = ring.zero
        for term, coeff in self.terms.items():
            monom = [0] * ring.ngens
            for var, exp in term:
                monom[position[var]] = exp
            element[tuple(monom)] = coeff
        return element

    @classmethod
    def lower(cls, element: PolyElement, variables: tuple[int, ...]) -> Polynomial:
        return cls._raw(
            {
                tuple((variables[i], exp) for i, exp in enumerate(monom) if exp): coeff
                for monom, coeff in element.items()
            }
        )

    # queries

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Term, Any]]:
        return iter(sorted(self.terms.items()))

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    @property
    def constant_value(self) -> Any:
        """Constant coefficient (the whole value for constant polynomials)."""
        return self.terms.get(ONE, QQ(0))

    @property
    def is_term(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> set[int]:
        found: set[int] = set()
        for term in self.terms:
            found.update(var for var, _ in term)
        return found

    def degree_in(self, var: int) -> int:
        degree = 0
        for term in self.terms:
            for v, exp in term:
                if v == var and exp > degree:
                    degree = exp
        return degree

    def total_degree(self) -> int:
        return max((sum(exp for _, exp in term) for term in self.terms), default=0)

    def split(self, var: int) -> dict[int, Polynomial]:
        """Coefficients with respect to one variable: exponent -> polynomial in the others."""
        parts: dict[int, dict[Term, Any]] = {}
        for term, coeff in self.terms.items():
            exp = 0
            rest = []
            for v, e in term:
                if v == var:
                    exp = e
                else:
                    rest.append((v, e))
            bucket = parts.setdefault(exp, {})
            bucket[tuple(rest)] = coeff
        return {exp: Polynomial._raw(bucket) for exp, bucket in parts.items()}

    def common_factor(self, among: set[int] | frozenset[int]) -> Term:
        """Largest term in the given variables dividing every term."""
        if not self.terms:
            return ONE
        iterator = iter(self.terms)
        first = next(iterator)
        common = {var: exp for var, exp in first if var in among}
        for term in iterator:
            if not common:
                break
            exps = dict(term)
            for var in list(common):
                exp = exps.get(var, 0)
                if exp == 0:
                    del common[var]
                elif exp < common[var]:
                    common[var] = exp
        return tuple(sorted(common.items()))

    def divide_term(self, divisor: Term) -> Polynomial:
        """Exact division by a term that divides every term."""
        if not divisor:
            return self
        cut = dict(divisor)
        result: dict[Term, Any] = {}
        for term, coeff in self.terms.items():
            reduced = []
            for var, exp in term:
                left = exp - cut.get(var, 0)
                assert left >= 0, f"{divisor} does not divide {term}"
                if left:
                    reduced.append((var, left))
            result[tuple(reduced)] = coeff
        return Polynomial._raw(result)

    def leading(self) -> tuple[Term, Any]:
        """First term in the canonical (sorted) order."""
        term = min(self.terms)
        return term, self.terms[term]

    def primitive(self) -> Polynomial:
        """Scaled so that the leading coefficient is one."""
        if not self.terms:
            return self
        _, coeff = self.leading()
        if coeff == 1:
            return self
        inverse = QQ(1) / coeff
        return Polynomial._raw({term: c * inverse for term, c in self.terms.items()})

    # arithmetic

    def _coerce(self, other: Any) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial.constant(other)
        except Exception:
            return None

    def __add__(self, other: Any) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        result = dict(self.terms)
        for term, coeff in rhs.terms.items():
            value = result.get(term, 0) + coeff
            if value:
                result[term] = value
            else:
                result.pop(term, None)
        return Polynomial._raw(result)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({term: -coeff for term, coeff in self.terms.items()})

    def __sub__(self, other: Any) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> Polynomial:
        return (-self) + other

    def scale(self, factor: Any) -> Polynomial:
        factor = QQ.convert(factor)
        if not factor:
            return Polynomial()
        return Polynomial._raw({term: coeff * factor for term, coeff in self.terms.items()})

    def __mul__(self, other: Any) -> Polynomial:
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except Exception:
                return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial()
        if self.is_term or other.is_term:
            (t1, c1), (t2, c2) = (self.leading(), other) if self.is_term else (other.leading(), self)
            return Polynomial._raw({merge_terms(t1, term): c1 * coeff for term, coeff in c2.terms.items()})
        variables, ring = _shared_ring((self, other))
        return Polynomial.lower(self.lift(ring, variables) * other.lift(ring, variables), variables)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        assert exponent >= 0, "negative powers are not polynomials"
        if exponent == 0:
            return Polynomial.constant(1)
        if self.is_term:
            ((term, coeff),) = self.terms.items()
            return Polynomial._raw({tuple((var, exp * exponent) for var, exp in term): coeff**exponent})
        variables, ring = _shared_ring((self,))
        return Polynomial.lower(self.lift(ring, variables) ** exponent, variables)

    def substitute(self, values: Mapping[int, Any]) -> Polynomial:
        """Replace variables by polynomials or rationals, expanding the result."""
        hit = self.variables() & values.keys()
        if not hit:
            return self
        replacements = {
            var: value if isinstance(value, Polynomial) else Polynomial.constant(value)
            for var, value in values.items()
            if var in hit
        }
        variables, ring = _shared_ring((self, *replacements.values()))
        position = {var: i for i, var in enumerate(variables)}
        pairs = [(ring.gens[position[var]], value.lift(ring, variables)) for var, value in sorted(replacements.items())]
        return Polynomial.lower(self.lift(ring, variables).compose(pairs), variables)

    # comparison and display

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        try:
            return self.terms == Polynomial.constant(other).terms
        except Exception:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def format(self, name: Callable[[int], str] = lambda var: f"t{var}") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for term, coeff in sorted(self.terms.items()):
            factors = "*".join(name(var) if exp == 1 else f"{name(var)}^{exp}" for var, exp in term)
            if not factors:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(factors)
            elif coeff == -1:
                pieces.append(f"-{factors}")
            else:
                pieces.append(f"{coeff}*{factors}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"
