"""
Finite permutation groups on points 0..n-1.

Permutations are tuples of images. Products follow function composition: compose(p, q) applies q first.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import cached_property
from math import lcm
from typing import Sequence

from endograph import settings, logging
from endograph.exception import ParseError, ResourceLimit, ValidationError

Perm = tuple[int, ...]


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    result = [0] * len(p)
    for i, image in enumerate(p):
        result[image] = i
    return tuple(result)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    found = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        seen.add(start)
        nxt = p[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = p[nxt]
        found.append(tuple(cycle))
    return found


def perm_order(p: Perm) -> int:
    return lcm(*(len(c) for c in cycles(p))) if cycles(p) else 1


def format_cycles(p: Perm) -> str:
    """1-based cycle notation, "()" for the identity."""
    found = cycles(p)
    if not found:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in found)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None, line: int | None = None) -> Perm:
    stripped = text.strip()
    if not stripped or _CYCLE.sub("", stripped).strip():
        raise ParseError(f"not a permutation in cycle notation: {text!r}", line=line)
    parsed: list[list[int]] = []
    for body in _CYCLE.findall(stripped):
        try:
            points = [int(token) - 1 for token in body.split()]
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}", line=line) from None
        if any(point < 0 for point in points) or len(set(points)) != len(points):
            raise ParseError(f"invalid cycle ({body})", line=line)
        parsed.append(points)
    highest = max((max(c) for c in parsed if c), default=-1) + 1
    size = max(degree or 0, highest)
    mapping = list(range(size))
    touched: set[int] = set()
    for cycle in parsed:
        if touched & set(cycle):
            raise ParseError(f"cycles are not disjoint in {text!r}", line=line)
        touched.update(cycle)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            mapping[a] = b
    return tuple(mapping)


def pad(p: Perm, degree: int) -> Perm:
    return p + tuple(range(len(p), degree))


class PermGroup:
    degree: int
    generators: tuple[Perm, ...]

    def __init__(self, degree: int, generators: Sequence[Perm], budget: int | None = None) -> None:
        self.degree = degree
        gens = []
        for g in generators:
            if len(g) > degree or sorted(pad(g, degree)) != list(range(degree)):
                raise ValidationError(f"{g} is not a permutation of {degree} points")
            g = pad(g, degree)
            if g != identity_perm(degree) and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self.budget = settings.ORDER_BUDGET if budget is None else budget

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], budget: int | None = None) -> PermGroup:
        """Left regular representation of a multiplication table, table[g][h] = g*h."""
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise ValidationError("a multiplication table must be a non-empty square")
        if any(not 0 <= entry < n for row in table for entry in row):
            raise ValidationError("table entries must be element indices")
        units = [e for e in range(n) if list(table[e]) == list(range(n))]
        if not units or any(table[h][units[0]] != h for h in range(n)):
            raise ValidationError("the table has no identity")
        for g in range(n):
            if sorted(table[g]) != list(range(n)):
                raise ValidationError(f"row {g} is not a permutation, inverses are missing")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise ValidationError(f"the table is not associative at ({a}, {b}, {c})")
        group = cls(n, [tuple(row) for row in table], budget)
        return group

    @classmethod
    def from_elements(cls, degree: int, elements: Sequence[Perm], budget: int | None = None) -> PermGroup:
        """A group whose complete element list is already known; generators are all elements."""
        group = cls(degree, elements, budget)
        group.__dict__["elements"] = tuple(sorted({pad(p, degree) for p in elements} | {identity_perm(degree)}))
        return group

    # materialization

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        """All elements, sorted, identity first."""
        e = identity_perm(self.degree)
        found = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = compose(x, g)
                    if y not in found:
                        found.add(y)
                        if len(found) > self.budget:
                            raise ResourceLimit(f"group order exceeds the order budget of {self.budget}")
                        nxt.append(y)
            frontier = nxt
        logging.debug(f"materialized group of order {len(found)}")
        return tuple(sorted(found))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    @cached_property
    def _position(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def index(self, p: Perm) -> int:
        return self._position[p]

    def __contains__(self, p: object) -> bool:
        return p in self._position

    def verify(self) -> bool:
        """Closure, identity and inverses of the materialized element list."""
        elements = set(self.elements)
        if self.identity not in elements:
            return False
        for p in elements:
            if inverse(p) not in elements:
                return False
            for q in elements:
                if compose(p, q) not in elements:
                    return False
        return True

    def order_statistics(self) -> Counter[int]:
        return Counter(perm_order(p) for p in self.elements)

    def small_generating_set(self) -> list[Perm]:
        """Greedy: repeatedly add an element of largest order outside the subgroup generated so far."""
        chosen: list[Perm] = []
        span = {self.identity}
        for p in sorted(self.elements, key=lambda p: (-perm_order(p), p)):
            if p in span:
                continue
            chosen.append(p)
            span = set(PermGroup(self.degree, chosen, self.budget).elements)
            if len(span) == self.order:
                break
        return chosen


def _extend(
    a_gens: list[Perm], images: list[Perm], a_identity: Perm, b_identity: Perm
) -> dict[Perm, Perm] | None:
    """The homomorphism on the subgroup generated by a_gens, or None when the images are inconsistent or collapse."""
    mapping = {a_identity: b_identity}
    used = {b_identity}
    frontier = [a_identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(a_gens, images):
                y = compose(x, g)
                image = compose(mapping[x], h)
                if y in mapping:
                    if mapping[y] != image:
                        return None
                    continue
                if image in used:
                    return None
                mapping[y] = image
                used.add(image)
                nxt.append(y)
        frontier = nxt
    return mapping


def groups_isomorphic(a: PermGroup, b: PermGroup) -> tuple[bool, dict[Perm, Perm] | None]:
    """Generator-image search with element-order pruning; the witness maps every element of a to b."""
    if a.order != b.order or a.order_statistics() != b.order_statistics():
        return False, None
    gens = a.small_generating_set()
    candidates = [[q for q in b.elements if perm_order(q) == perm_order(g)] for g in gens]

    def search(images: list[Perm]) -> dict[Perm, Perm] | None:
        k = len(images)
        partial = _extend(gens[:k], images, a.identity, b.identity)
        if partial is None:
            return None
        if k == len(gens):
            return partial if len(partial) == a.order else None
        for q in candidates[k]:
            found = search(images + [q])
            if found is not None:
                return found
        return None

    witness = search([])
    if witness is None:
        return False, None
    # respecting right multiplication by generators makes it a homomorphism
    for x in a.elements:
        for g in gens:
            assert witness[compose(x, g)] == compose(witness[x], witness[g]), "witness is not a homomorphism"
    return True, witness
