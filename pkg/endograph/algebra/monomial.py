"""
Monomials of a free graded-commutative algebra.

A monomial is a tuple of (generator index, exponent) pairs sorted by index; the empty tuple is the unit. Odd
generators carry exponent one. Signs are never stored in a monomial, products return them separately.
"""

from functools import lru_cache

Monomial = tuple[tuple[int, int], ...]
UNIT: Monomial = ()

# parity[i] is True when generator i has odd degree
Parity = tuple[bool, ...]


@lru_cache(maxsize=1 << 18)
def product(parity: Parity, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """
    Canonical product a*b as (sign, monomial); sign 0 when an odd generator appears twice.

    Merging b into a moves every odd factor of b to the left past the odd factors of a with a larger index, each
    transposition flips the sign.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    merged = []
    i = j = 0
    odd_left_in_a = sum(1 for index, _ in a if parity[index])
    flips = 0
    while i < len(a) and j < len(b):
        ia, ea = a[i]
        ib, eb = b[j]
        if ia < ib:
            merged.append(a[i])
            if parity[ia]:
                odd_left_in_a -= 1
            i += 1
        elif ib < ia:
            merged.append(b[j])
            if parity[ib]:
                flips += odd_left_in_a
            j += 1
        else:
            if parity[ia]:
                return 0, UNIT
            merged.append((ia, ea + eb))
            i += 1
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return (-1 if flips & 1 else 1), tuple(merged)


def degree(degrees: tuple[int, ...], monomial: Monomial) -> int:
    return sum(degrees[index] * exp for index, exp in monomial)


def is_odd(parity: Parity, monomial: Monomial) -> bool:
    return sum(1 for index, _ in monomial if parity[index]) % 2 == 1


def exponent_vector(size: int, monomial: Monomial) -> tuple[int, ...]:
    vector = [0] * size
    for index, exp in monomial:
        vector[index] = exp
    return tuple(vector)


def sort_key(degrees: tuple[int, ...], monomial: Monomial) -> tuple[int, tuple[int, ...]]:
    """Graded first, then lexicographic on exponent vectors, larger exponents of earlier generators first."""
    return degree(degrees, monomial), tuple(-exp for exp in exponent_vector(len(degrees), monomial))


def uses_only(monomial: Monomial, allowed: frozenset[int]) -> bool:
    return all(index in allowed for index, _ in monomial)


def format_monomial(names: tuple[str, ...], monomial: Monomial) -> str:
    if not monomial:
        return "1"
    return "*".join(names[index] if exp == 1 else f"{names[index]}^{exp}" for index, exp in monomial)
