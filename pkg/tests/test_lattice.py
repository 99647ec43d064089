from sympy import QQ

from endograph.algebra.polynomial import Polynomial
from endograph.solver.lattice import is_binomial, rational_root, sign_solutions, solve_binomials

a1, a2 = Polynomial.variable(0), Polynomial.variable(1)


def test_coprime_exponents_force_one() -> None:
    result = solve_binomials([a1**6 - a2**5, a1**9 - a2**7])
    assert result is not None
    assert result.variables == (0, 1)
    assert abs(result.determinant) == 3
    assert result.invariant_factors == (1, 3)
    assert result.solutions == ((QQ(1), QQ(1)),)


def test_both_square_roots() -> None:
    result = solve_binomials([a1**2 - 4])
    assert result is not None
    assert set(result.solutions) == {(QQ(2),), (QQ(-2),)}


def test_no_real_root() -> None:
    result = solve_binomials([a1**2 + 1])
    assert result is not None
    assert result.solutions == ()


def test_irrational_magnitude() -> None:
    result = solve_binomials([a1**2 - 2])
    assert result is not None
    assert result.magnitudes is None
    assert result.solutions == ()


def test_rank_deficient_system() -> None:
    assert solve_binomials([a1 * a2 - 1]) is None


def test_detail_is_plain_data() -> None:
    result = solve_binomials([a1**6 - a2**5, a1**9 - a2**7])
    assert result is not None
    assert result.detail() == {"variables": [0, 1], "invariant_factors": [1, 3], "determinant": 3, "solutions": 1}


def test_is_binomial() -> None:
    assert is_binomial(a1 * a2 - 1)
    assert not is_binomial(a1 + a2 + 1)
    assert not is_binomial(a1)


def test_rational_root() -> None:
    assert rational_root(QQ(8, 27), 3) == QQ(2, 3)
    assert rational_root(QQ(1, 4), -2) == QQ(2)
    assert rational_root(QQ(2), 2) is None
    assert rational_root(QQ(1), 5) == QQ(1)


def test_sign_solutions() -> None:
    assert set(sign_solutions([[1, 1]], [1], 2)) == {(1, 0), (0, 1)}
    assert sign_solutions([[2, 0]], [1], 2) == []
    assert set(sign_solutions([[3, 0], [0, 1]], [0, 1], 2)) == {(0, 1)}
