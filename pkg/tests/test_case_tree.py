from dataclasses import replace

import pytest
from sympy import QQ, Poly, Symbol

from endograph.exception import IncompleteCaseTree, VerificationFailure
from endograph.algebra.polynomial import Polynomial
from endograph.solver import case_tree
from endograph.solver.ansatz import GenericMorphism, Unknown
from endograph.solver.case_tree import Tactic, rational_roots, solve_cases, verify_tree
from endograph.solver.constraints import ConstraintSystem, Equation

t = [Polynomial.variable(i) for i in range(10)]


def system(*polys: Polynomial) -> ConstraintSystem:
    variables = sorted(set().union(*(p.variables() for p in polys)))
    size = max(variables) + 1
    unknowns = [Unknown(id=i, name=f"u{i}", generator="t", monomial=(), template_degree=1) for i in range(size)]
    generic = GenericMorphism(alg=None, unknowns=unknowns, templates={})  # type: ignore[arg-type]
    return ConstraintSystem(generic, [Equation(p, "t", str(k)) for k, p in enumerate(polys)])


def test_lattice_branch() -> None:
    tree = solve_cases(system(t[0] * t[1] - 1, t[0] ** 3 - 1))
    assert tree.root.tactic is Tactic.LATTICE
    assert tree.complete
    (leaf,) = tree.solutions()
    assert leaf.solution == {0: Polynomial.constant(1), 1: Polynomial.constant(1)}
    verify_tree(tree)


def test_univariate_roots() -> None:
    tree = solve_cases(system(t[0] ** 2 - 3 * t[0] + 2))
    assert tree.root.tactic is Tactic.ROOTS
    values = sorted(leaf.solution[0].constant_value for leaf in tree.solutions() if leaf.solution)
    assert values == [QQ(1), QQ(2)]
    verify_tree(tree)


def test_contradiction() -> None:
    tree = solve_cases(system(t[0] - 1, t[0] - 2))
    assert tree.root.tactic is Tactic.CONTRADICTION
    assert tree.root.refuted
    assert tree.complete
    assert tree.solutions() == []
    verify_tree(tree)


def test_vanishing_products_split() -> None:
    tree = solve_cases(system(t[0] * t[1], t[1] * t[2], t[0] * t[2], t[0] ** 2 - t[0]))
    assert tree.complete
    verify_tree(tree)
    for leaf in tree.solutions():
        assert leaf.solution is not None
        values = {var: leaf.solution.get(var, Polynomial()) for var in range(3)}
        nonzero = [var for var, value in values.items() if value]
        assert len(nonzero) <= 1


def test_free_unknowns_are_reported() -> None:
    tree = solve_cases(system(t[0] - 2 * t[1]))
    (leaf,) = tree.solutions()
    assert leaf.solution == {0: t[1].scale(2)}
    assert leaf.free == (1,)


def test_budget_exhaustion_leaves_partial_nodes() -> None:
    poly = t[0] * t[1] + t[2] * t[3] + t[4] * t[5] + t[6] * t[7] + t[8] * t[9]
    tree = solve_cases(system(poly), split_budget=0)
    assert not tree.complete
    assert tree.partial_leaves()
    with pytest.raises(IncompleteCaseTree):
        tree.require_complete()


def test_tampered_tree_is_rejected() -> None:
    tree = solve_cases(system(t[0] ** 2 - 3 * t[0] + 2))
    tree.root.children[0].fingerprint = "0" * 64
    with pytest.raises(VerificationFailure):
        verify_tree(tree)


def test_rational_roots() -> None:
    x = Symbol("x")
    assert rational_roots(Poly(2 * x**3 - x**2 - 2 * x + 1, x)) == [QQ(-1), QQ(1, 2), QQ(1)]
    assert rational_roots(Poly(x**2 - 2, x)) == []


def test_dropped_root_is_caught(monkeypatch: pytest.MonkeyPatch) -> None:
    roots = case_tree._Engine.roots

    def drop_last(self, st):  # type: ignore[no-untyped-def]
        found = roots(self, st)
        if found is None:
            return None
        tactic, detail, branches = found
        return tactic, detail, branches[:-1]

    monkeypatch.setattr(case_tree._Engine, "roots", drop_last)
    tree = solve_cases(system(t[0] ** 2 - 3 * t[0] + 2))
    assert len(tree.root.children) == 1
    with pytest.raises(VerificationFailure, match="rational roots"):
        verify_tree(tree)


def test_dropped_sign_pattern_is_caught(monkeypatch: pytest.MonkeyPatch) -> None:
    equations = (t[0] * t[1] - 1, t[0] ** 2 - t[1] ** 2)
    tree = solve_cases(system(*equations))
    assert tree.root.tactic is Tactic.LATTICE
    assert len(tree.solutions()) == 2
    verify_tree(tree)

    solve_binomials = case_tree.solve_binomials

    def drop_last(binomials):  # type: ignore[no-untyped-def]
        result = solve_binomials(binomials)
        return None if result is None else replace(result, solutions=result.solutions[:-1])

    monkeypatch.setattr(case_tree, "solve_binomials", drop_last)
    tree = solve_cases(system(*equations))
    assert len(tree.solutions()) == 1
    with pytest.raises(VerificationFailure, match="solutions of the binomials"):
        verify_tree(tree)


def test_one_sided_split_is_caught(monkeypatch: pytest.MonkeyPatch) -> None:
    split = case_tree._Engine.split

    def zero_only(self, st):  # type: ignore[no-untyped-def]
        found = split(self, st)
        if found is None or found[0] is not Tactic.SPLIT:
            return found
        tactic, detail, branches = found
        return tactic, detail, branches[:1]

    monkeypatch.setattr(case_tree._Engine, "split", zero_only)
    tree = solve_cases(system(t[0] * t[1] + t[2] * t[3]))
    assert tree.root.tactic is Tactic.SPLIT
    with pytest.raises(VerificationFailure, match="both cases"):
        verify_tree(tree)


def test_contradiction_needs_a_refuted_equation() -> None:
    tree = solve_cases(system(t[0] - 1, t[0] - 2))
    assert tree.root.detail["equation_id"] == 1
    tree.root.detail["equation_id"] = 0
    with pytest.raises(VerificationFailure, match="refuted equation"):
        verify_tree(tree)
