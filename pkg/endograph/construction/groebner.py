"""
Buchberger's algorithm with the sugar selection strategy over QQ.

Polynomials are endograph Polynomials whose variables are generator indices. The term order is a weighted graded
reverse lexicographic order: terms compare by weighted degree first, ties are broken from the revlex-smallest
variable upwards, the term with the smaller exponent there being the larger one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from endograph import settings, logging
from endograph.exception import ResourceLimit
from endograph.algebra.polynomial import Polynomial, Term, merge_terms


def divides(a: Term, b: Term) -> bool:
    exps = dict(b)
    return all(exps.get(var, 0) >= exp for var, exp in a)


def quotient(b: Term, a: Term) -> Term:
    """b / a for a dividing b."""
    cut = dict(a)
    return tuple((var, exp - cut.get(var, 0)) for var, exp in b if exp - cut.get(var, 0) > 0)


def lcm_term(a: Term, b: Term) -> Term:
    exps = dict(a)
    for var, exp in b:
        exps[var] = max(exps.get(var, 0), exp)
    return tuple(sorted(exps.items()))


def coprime(a: Term, b: Term) -> bool:
    return not ({var for var, _ in a} & {var for var, _ in b})


def pure_power(term: Term) -> int | None:
    """Variable of a pure power term, None for mixed terms and the constant."""
    return term[0][0] if len(term) == 1 else None


@dataclass(frozen=True)
class WeightedRevlex:
    """weights[var] is the weight of a variable; revlex_order lists variables, the revlex-smallest last."""

    weights: dict[int, int]
    revlex_order: tuple[int, ...]

    def weighted_degree(self, term: Term) -> int:
        return sum(self.weights[var] * exp for var, exp in term)

    def key(self, term: Term) -> tuple[int, tuple[int, ...]]:
        exps = dict(term)
        return self.weighted_degree(term), tuple(-exps.get(var, 0) for var in reversed(self.revlex_order))

    @classmethod
    def by_weight(cls, weights: dict[int, int]) -> WeightedRevlex:
        """Heavier variables first, so the lightest variable is the revlex-smallest."""
        return cls(weights=weights, revlex_order=tuple(sorted(weights, key=lambda var: (-weights[var], var))))


@dataclass
class _Entry:
    poly: Polynomial
    lead: Term
    lead_coeff: Any
    sugar: int


@dataclass
class GroebnerRun:
    basis: list[Polynomial] = field(default_factory=list)
    leading_terms: list[Term] = field(default_factory=list)
    pairs_processed: int = 0
    stopped_early: bool = False


def leading(poly: Polynomial, order: WeightedRevlex) -> tuple[Term, Any]:
    term = max(poly.terms, key=order.key)
    return term, poly.terms[term]


def normal_form(poly: Polynomial, basis: Sequence[_Entry], order: WeightedRevlex) -> Polynomial:
    """Full reduction of every term by the basis."""
    remainder = Polynomial()
    p = poly
    while p:
        term, coeff = leading(p, order)
        for entry in basis:
            if divides(entry.lead, term):
                factor = Polynomial.monomial(quotient(term, entry.lead), coeff / entry.lead_coeff)
                p = p - factor * entry.poly
                break
        else:
            remainder = remainder + Polynomial.monomial(term, coeff)
            p = p - Polynomial.monomial(term, coeff)
    return remainder


def buchberger(
    polys: Sequence[Polynomial],
    order: WeightedRevlex,
    budget: int | None = None,
    stop_when: Callable[[list[Term]], bool] | None = None,
) -> GroebnerRun:
    """
    Groebner basis of the ideal spanned by `polys`. When `stop_when` holds for the current leading terms the run
    stops early; the polynomials found so far still lie in the ideal.
    """
    budget = settings.GROEBNER_BUDGET if budget is None else budget
    run = GroebnerRun()
    entries: list[_Entry] = []
    pairs: list[tuple[int, tuple[int, tuple[int, ...]], int, int]] = []

    def add(poly: Polynomial, sugar: int) -> bool:
        poly = poly.primitive()
        lead, lead_coeff = leading(poly, order)
        entries.append(_Entry(poly=poly, lead=lead, lead_coeff=lead_coeff, sugar=sugar))
        new = len(entries) - 1
        for old in range(new):
            if coprime(entries[old].lead, lead):
                continue
            lcm = lcm_term(entries[old].lead, lead)
            pair_sugar = max(
                entries[old].sugar + order.weighted_degree(quotient(lcm, entries[old].lead)),
                sugar + order.weighted_degree(quotient(lcm, lead)),
            )
            pairs.append((pair_sugar, order.key(lcm), old, new))
        return stop_when is not None and stop_when([e.lead for e in entries])

    for poly in sorted(polys, key=lambda p: order.key(leading(p, order)[0]) if p else (0, ())):
        reduced = normal_form(poly, entries, order)
        if reduced and add(reduced, max(order.weighted_degree(t) for t in poly.terms)):
            run.stopped_early = True
            break

    while pairs and not run.stopped_early:
        pairs.sort()
        sugar, _, i, j = pairs.pop(0)
        run.pairs_processed += 1
        if run.pairs_processed > budget:
            raise ResourceLimit(f"Groebner computation exceeded the pair budget of {budget}")
        a, b = entries[i], entries[j]
        lcm = lcm_term(a.lead, b.lead)
        s_poly = Polynomial.monomial(quotient(lcm, a.lead), 1 / a.lead_coeff) * a.poly - Polynomial.monomial(
            quotient(lcm, b.lead), 1 / b.lead_coeff
        ) * b.poly
        reduced = normal_form(s_poly, entries, order)
        if reduced:
            if add(reduced, sugar):
                run.stopped_early = True

    run.basis = [e.poly for e in entries]
    run.leading_terms = [e.lead for e in entries]
    logging.debug(
        f"groebner: {len(entries)} polynomials, {run.pairs_processed} pairs, early stop {run.stopped_early}"
    )
    return run
