"""
Binomial systems in nonzero unknowns.

Each equation c1*m1 + c2*m2 = 0 says m1/m2 = -c2/c1. When the exponent differences have full rank the absolute
values are fixed by the adjugate of a square subsystem, and the signs by a linear system over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from sympy import GF, QQ, ZZ, Matrix, integer_nthroot
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.matrices import DomainMatrix

from endograph.exception import ResourceLimit
from endograph.algebra.polynomial import Polynomial

GF2 = GF(2)
SIGN_BITS = 16


@dataclass(frozen=True)
class LatticeResult:
    variables: tuple[int, ...]
    invariant_factors: tuple[int, ...]
    determinant: int
    magnitudes: tuple[Any, ...] | None
    solutions: tuple[tuple[Any, ...], ...]

    def detail(self) -> dict[str, Any]:
        return {
            "variables": list(self.variables),
            "invariant_factors": list(self.invariant_factors),
            "determinant": self.determinant,
            "solutions": len(self.solutions),
        }


def is_binomial(poly: Polynomial) -> bool:
    return len(poly) == 2


def _power(base: Any, exponent: int) -> Any:
    return base**exponent if exponent >= 0 else QQ(1) / base ** (-exponent)


def rational_root(value: Any, k: int) -> Any | None:
    """The positive rational r with r^k = value, if there is one."""
    if k < 0:
        value, k = QQ(1) / value, -k
    num, exact_num = integer_nthroot(int(value.numerator), k)
    den, exact_den = integer_nthroot(int(value.denominator), k)
    if not (exact_num and exact_den):
        return None
    return QQ(num, den)


def sign_solutions(rows: Sequence[Sequence[int]], negative: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """All s in GF(2)^n with rows . s = negative; bit 1 marks a negative unknown."""
    matrix = DomainMatrix(
        [[GF2(e % 2) for e in row] + [GF2(b)] for row, b in zip(rows, negative)],
        (len(rows), n + 1),
        GF2,
    )
    reduced, pivots = matrix.rref()
    if n in pivots:
        return []
    table = [[int(entry) % 2 for entry in row] for row in reduced.to_list()]
    free = [c for c in range(n) if c not in pivots]
    if len(free) > SIGN_BITS:
        raise ResourceLimit(f"{len(free)} free sign bits in a binomial system")
    solutions = []
    for mask in range(2 ** len(free)):
        signs = [0] * n
        for k, column in enumerate(free):
            signs[column] = (mask >> k) & 1
        for r, column in enumerate(pivots):
            signs[column] = (table[r][n] + sum(table[r][f] * signs[f] for f in free)) % 2
        solutions.append(tuple(signs))
    return solutions


def solve_binomials(binomials: Sequence[Polynomial]) -> LatticeResult | None:
    """None when the exponent lattice is not of full rank; otherwise every rational solution."""
    variables = sorted(set().union(*(p.variables() for p in binomials)))
    n = len(variables)
    column = {v: i for i, v in enumerate(variables)}
    rows: list[list[int]] = []
    ratios: list[Any] = []
    for poly in binomials:
        (t1, c1), (t2, c2) = sorted(poly.terms.items())
        row = [0] * n
        for var, exp in t1:
            row[column[var]] += exp
        for var, exp in t2:
            row[column[var]] -= exp
        rows.append(row)
        ratios.append(-c2 / c1)

    chosen: list[int] = []
    for j in range(len(rows)):
        trial = [rows[k] for k in chosen] + [rows[j]]
        if DomainMatrix([[QQ(e) for e in r] for r in trial], (len(trial), n), QQ).rank() == len(trial):
            chosen.append(j)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        return None

    square = [rows[j] for j in chosen]
    adjugate, det = DomainMatrix([[ZZ(e) for e in r] for r in square], (n, n), ZZ).adj_det()
    adj = [[int(entry) for entry in row] for row in adjugate.to_list()]
    det = int(det)
    factors = tuple(int(f) for f in invariant_factors(Matrix(square), domain=ZZ))

    magnitudes: list[Any] = []
    for i in range(n):
        value = QQ(1)
        for k, j in enumerate(chosen):
            value *= _power(abs(ratios[j]), adj[i][k])
        root = rational_root(value, det)
        if root is None:
            return LatticeResult(tuple(variables), factors, det, None, ())
        magnitudes.append(root)

    solutions = []
    for signs in sign_solutions(rows, [1 if r < 0 else 0 for r in ratios], n):
        values = tuple(-m if bit else m for m, bit in zip(magnitudes, signs))
        assignment = dict(zip(variables, values))
        if all(not p.substitute(assignment) for p in binomials):
            solutions.append(values)
    return LatticeResult(tuple(variables), factors, det, tuple(magnitudes), tuple(solutions))
