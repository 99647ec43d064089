"""
Case analysis of a constraint system.

A node first propagates: it drops vanished equations, cancels factors known to be nonzero, kills unknowns that
appear alone in a single-term equation, and substitutes unknowns that occur linearly with a constant coefficient.
Then it branches with the first tactic that applies:

    lattice     binomials in nonzero unknowns with a full rank exponent lattice, one child per rational solution
    roots       a univariate equation, one child per rational root
    exclusive   a clique of unknowns with pairwise vanishing products: all zero, or exactly one nonzero
    split       one unknown zero or nonzero (counts against the split budget, like exclusive)
    eliminate   a lex Groebner basis with a Rabinowitsch variable, refuting the node or producing an eliminant

A node without equations is a solution. Every node stores a fingerprint of its propagated system, so
`verify_tree` can replay the whole tree from the root. It also checks each node without the tactics: a refuted
equation for a contradiction, and for a branching node that its children cover every solution.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Any, Iterator

from sympy import QQ, Matrix, Mul, Poly, Rational, Symbol, groebner, roots

from endograph import settings, logging
from endograph.exception import IncompleteCaseTree, ResourceLimit, VerificationFailure
from endograph.algebra.polynomial import ONE, Polynomial
from endograph.solver.constraints import ConstraintSystem
from endograph.solver.lattice import SIGN_BITS, solve_binomials

ELIMINATION_VARIABLES = 8


class Tactic(str, Enum):
    SOLVED = "solved"
    CONTRADICTION = "contradiction"
    LATTICE = "lattice"
    ROOTS = "roots"
    EXCLUSIVE = "exclusive"
    SPLIT = "split"
    ELIMINATE = "eliminate"
    PARTIAL = "partial"


@dataclass(frozen=True)
class Branch:
    label: str
    zero: tuple[int, ...] = ()
    nonzero: tuple[int, ...] = ()
    values: tuple[tuple[int, Any], ...] = ()


@dataclass
class CaseNode:
    branch: Branch | None
    tactic: Tactic
    detail: dict[str, Any]
    steps: list[str]
    fingerprint: str
    children: list[CaseNode] = field(default_factory=list)
    solution: dict[int, Polynomial] | None = None
    free: tuple[int, ...] = ()
    nonzero: frozenset[int] = frozenset()

    @property
    def refuted(self) -> bool:
        return self.tactic is not Tactic.SOLVED and self.tactic is not Tactic.PARTIAL and not self.children

    def walk(self) -> Iterator[CaseNode]:
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self) -> Iterator[CaseNode]:
        return (node for node in self.walk() if not node.children)


@dataclass
class CaseTree:
    system: ConstraintSystem
    root: CaseNode
    split_budget: int

    @property
    def complete(self) -> bool:
        return all(node.tactic is not Tactic.PARTIAL for node in self.root.walk())

    @property
    def size(self) -> int:
        return sum(1 for _ in self.root.walk())

    def solutions(self) -> list[CaseNode]:
        return [node for node in self.root.leaves() if node.tactic is Tactic.SOLVED]

    def partial_leaves(self) -> list[CaseNode]:
        return [node for node in self.root.leaves() if node.tactic is Tactic.PARTIAL]

    def require_complete(self) -> None:
        partial = self.partial_leaves()
        if partial:
            raise IncompleteCaseTree(
                f"{len(partial)} open branches after {self.size} nodes (split budget {self.split_budget})"
            )


class _Refuted(Exception):
    def __init__(self, reason: str, eid: int | None = None) -> None:
        super().__init__(reason)
        self.eid = eid


class _State:
    def __init__(self) -> None:
        self.eqs: dict[int, Polynomial] = {}
        self.occurs: dict[int, set[int]] = {}
        self.nonzero: set[int] = set()
        self.order: list[tuple[int, Polynomial]] = []
        self.dirty: set[int] = set()
        self.steps: list[str] = []
        self.depth = 0

    def copy(self) -> _State:
        other = _State()
        other.eqs = dict(self.eqs)
        other.occurs = {var: set(ids) for var, ids in self.occurs.items()}
        other.nonzero = set(self.nonzero)
        other.order = list(self.order)
        other.depth = self.depth
        return other

    def set_eq(self, eid: int, poly: Polynomial) -> None:
        old = self.eqs[eid].variables()
        new = poly.variables()
        for var in old - new:
            ids = self.occurs.get(var)
            if ids is not None:
                ids.discard(eid)
                if not ids:
                    del self.occurs[var]
        for var in new - old:
            self.occurs.setdefault(var, set()).add(eid)
        self.eqs[eid] = poly

    def drop(self, eid: int) -> None:
        self.set_eq(eid, Polynomial())
        del self.eqs[eid]

    def live(self) -> set[int]:
        return set(self.occurs)


class _Engine:
    def __init__(self, system: ConstraintSystem, split_budget: int) -> None:
        self.system = system
        self.split_budget = split_budget
        self.degree = {u.id: u.template_degree for u in system.unknowns}

    def name(self, var: int) -> str:
        return self.system.name(var)

    def origin(self, eid: int) -> str:
        return self.system.equations[eid].provenance

    def initial_state(self) -> _State:
        st = _State()
        for eid, eq in enumerate(self.system.equations):
            st.eqs[eid] = Polynomial()
            st.set_eq(eid, eq.poly)
            st.dirty.add(eid)
        return st

    # propagation

    def assign(self, st: _State, var: int, value: Polynomial, reason: str) -> None:
        if var in st.nonzero:
            if not value:
                raise _Refuted(f"{self.name(var)} is nonzero but {reason}")
            st.nonzero.discard(var)
            if value.is_term:
                self.mark_nonzero(st, [v for v in value.variables() if v not in st.nonzero])
        st.order.append((var, value))
        st.steps.append(f"{self.name(var)} := {self.system.format(value)} ({reason})")
        for eid in sorted(st.occurs.pop(var, ())):
            st.set_eq(eid, st.eqs[eid].substitute({var: value}))
            st.dirty.add(eid)

    def mark_nonzero(self, st: _State, variables: list[int]) -> None:
        for var in sorted(variables):
            st.nonzero.add(var)
            st.steps.append(f"{self.name(var)} != 0")
            st.dirty.update(st.occurs.get(var, ()))

    def normalize(self, st: _State, eid: int) -> None:
        poly = st.eqs.get(eid)
        if poly is None:
            return
        if not poly:
            st.drop(eid)
            return
        if poly.is_constant:
            raise _Refuted(f"{self.origin(eid)} reduces to {poly.constant_value} = 0", eid)
        factor = poly.common_factor(st.nonzero)
        if factor:
            poly = poly.divide_term(factor)
            if poly.is_constant:
                raise _Refuted(f"{self.origin(eid)} reduces to a product of nonzero unknowns", eid)
        poly = poly.primitive()
        st.set_eq(eid, poly)
        if poly.is_term:
            (term,) = poly.terms
            if len(term) == 1:
                st.drop(eid)
                self.assign(st, term[0][0], Polynomial(), self.origin(eid))
            return
        if len(poly) == 2 and ONE in poly.terms:
            other = next(t for t in poly.terms if t)
            self.mark_nonzero(st, [v for v, _ in other if v not in st.nonzero])

    def substitute_linear(self, st: _State) -> bool:
        candidates = []
        for eid in sorted(st.eqs):
            for term in st.eqs[eid].terms:
                if len(term) == 1 and term[0][1] == 1:
                    candidates.append((term[0][0], eid))
        applied = False
        for var, eid in sorted(candidates):
            poly = st.eqs.get(eid)
            if poly is None or var not in st.occurs:
                continue
            key = ((var, 1),)
            if key not in poly.terms or sum(1 for t in poly.terms if any(v == var for v, _ in t)) != 1:
                continue
            coeff = poly.terms[key]
            value = Polynomial._raw({t: -c / coeff for t, c in poly.terms.items() if t != key})
            if var in st.nonzero:
                allowed = value.is_term
            else:
                allowed = len(value) <= 1 or all(st.eqs[e].degree_in(var) <= 1 for e in st.occurs[var])
            if not allowed:
                continue
            st.drop(eid)
            self.assign(st, var, value, f"linear in {self.origin(eid)}")
            applied = True
        return applied

    def propagate(self, st: _State) -> None:
        while True:
            while st.dirty:
                eid = min(st.dirty)
                st.dirty.discard(eid)
                self.normalize(st, eid)
            if not self.substitute_linear(st):
                return

    # branching

    def decide(self, st: _State) -> tuple[Tactic, dict[str, Any], list[Branch]]:
        if not st.eqs:
            return Tactic.SOLVED, {}, []
        found = self.lattice(st)
        if found is not None:
            return found
        found = self.roots(st)
        if found is not None:
            return found
        if st.depth < self.split_budget:
            found = self.split(st)
            if found is not None:
                return found
        return self.eliminate(st)

    def lattice(self, st: _State) -> tuple[Tactic, dict[str, Any], list[Branch]] | None:
        binomials = [eid for eid in sorted(st.eqs) if len(st.eqs[eid]) == 2 and st.eqs[eid].variables() <= st.nonzero]
        if not binomials:
            return None
        parent: dict[int, int] = {}

        def root(v: int) -> int:
            while parent.setdefault(v, v) != v:
                v = parent[v]
            return v

        for eid in binomials:
            first, *rest = sorted(st.eqs[eid].variables())
            for v in rest:
                parent[root(v)] = root(first)
        components: dict[int, list[int]] = {}
        for eid in binomials:
            components.setdefault(root(min(st.eqs[eid].variables())), []).append(eid)
        for key in sorted(components):
            eids = components[key]
            result = solve_binomials([st.eqs[eid] for eid in eids])
            if result is None:
                continue
            detail = result.detail()
            detail["variables"] = [self.name(v) for v in result.variables]
            detail["equations"] = [self.origin(eid) for eid in eids]
            branches = [
                Branch(
                    label=", ".join(f"{self.name(v)} = {value}" for v, value in zip(result.variables, values)),
                    values=tuple(zip(result.variables, values)),
                )
                for values in result.solutions
            ]
            return Tactic.LATTICE, detail, branches
        return None

    def roots(self, st: _State) -> tuple[Tactic, dict[str, Any], list[Branch]] | None:
        best = None
        for eid in sorted(st.eqs):
            variables = st.eqs[eid].variables()
            if len(variables) == 1:
                (var,) = variables
                if best is None or var < best[0]:
                    best = (var, eid)
        if best is None:
            return None
        var, eid = best
        symbol = Symbol("t")
        coefficients = {(term[0][1] if term else 0,): c for term, c in st.eqs[eid].terms.items()}
        poly = Poly.from_dict(coefficients, symbol, domain=QQ)
        values = [r for r in rational_roots(poly) if r or var not in st.nonzero]
        detail = {"variable": self.name(var), "equation": self.origin(eid), "roots": [str(r) for r in values]}
        return Tactic.ROOTS, detail, [Branch(label=f"{self.name(var)} = {r}", values=((var, r),)) for r in values]

    def split(self, st: _State) -> tuple[Tactic, dict[str, Any], list[Branch]] | None:
        live = [v for v in st.live() if v not in st.nonzero]
        if not live:
            return None
        level = min(self.degree[v] for v in live)
        pool = sorted(v for v in live if self.degree[v] == level)
        members = set(pool)
        adjacent: dict[int, set[int]] = {}
        for poly in st.eqs.values():
            if poly.is_term:
                (term,) = poly.terms
                if len(term) == 2 and term[0][0] in members and term[1][0] in members:
                    a, b = term[0][0], term[1][0]
                    adjacent.setdefault(a, set()).add(b)
                    adjacent.setdefault(b, set()).add(a)
        cliques = []
        for v in pool:
            clique = [v]
            for u in sorted(adjacent.get(v, ())):
                if all(u in adjacent.get(w, ()) for w in clique):
                    clique.append(u)
            if len(clique) >= 2:
                cliques.append(sorted(clique))
        if cliques:
            clique = min(cliques, key=lambda c: (len(c), c))
            names = [self.name(v) for v in clique]
            branches = [Branch(label="all zero", zero=tuple(clique))]
            for v in clique:
                branches.append(
                    Branch(
                        label=f"only {self.name(v)} != 0",
                        zero=tuple(u for u in clique if u != v),
                        nonzero=(v,),
                    )
                )
            return Tactic.EXCLUSIVE, {"clique": names}, branches
        var = pool[0]
        return (
            Tactic.SPLIT,
            {"variable": self.name(var)},
            [Branch(label=f"{self.name(var)} = 0", zero=(var,)), Branch(label=f"{self.name(var)} != 0", nonzero=(var,))],
        )

    def eliminate(self, st: _State) -> tuple[Tactic, dict[str, Any], list[Branch]]:
        variables = sorted(st.live())
        if len(variables) > ELIMINATION_VARIABLES:
            return Tactic.PARTIAL, {"reason": f"{len(variables)} unknowns left", "depth": st.depth}, []
        symbols = {v: Symbol(f"t{v}") for v in variables}
        inverse = Symbol("inverse")
        exprs = [
            sum(QQ.to_sympy(c) * Mul(*[symbols[v] ** e for v, e in term]) for term, c in poly.terms.items())
            for _, poly in sorted(st.eqs.items())
        ]
        guarded = sorted(st.nonzero & set(variables))
        if guarded:
            exprs.append(1 - inverse * Mul(*[symbols[v] for v in guarded]))
        basis = groebner(exprs, inverse, *[symbols[v] for v in variables], order="lex")
        polys = list(basis.exprs)
        if len(polys) == 1 and polys[0] == 1:
            return Tactic.ELIMINATE, {"basis": "1"}, []
        for g in reversed(polys):
            free = g.free_symbols
            if len(free) == 1 and inverse not in free:
                (symbol,) = free
                var = next(v for v, s in symbols.items() if s == symbol)
                values = [r for r in rational_roots(Poly(g, symbol, domain=QQ)) if r or var not in st.nonzero]
                detail = {"eliminant": str(g).replace(str(symbol), self.name(var)), "roots": [str(r) for r in values]}
                return (
                    Tactic.ELIMINATE,
                    detail,
                    [Branch(label=f"{self.name(var)} = {r}", values=((var, r),)) for r in values],
                )
        return Tactic.PARTIAL, {"reason": "no eliminant", "depth": st.depth}, []

    def apply_branch(self, st: _State, branch: Branch) -> None:
        for var in branch.zero:
            self.assign(st, var, Polynomial(), branch.label)
        self.mark_nonzero(st, list(branch.nonzero))
        for var, value in branch.values:
            self.assign(st, var, Polynomial.constant(value), branch.label)

    # tree

    def fingerprint(self, st: _State) -> str:
        lines = sorted(poly.format() for poly in st.eqs.values())
        lines.append("nonzero " + ",".join(str(v) for v in sorted(st.nonzero)))
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()

    def resolve(self, st: _State) -> dict[int, Polynomial]:
        final: dict[int, Polynomial] = {}
        for var, value in reversed(st.order):
            final[var] = value.substitute(final)
        return final

    def advance(self, st: _State, branch: Branch | None) -> _Refuted | None:
        """Apply the branch and propagate; the refutation if that fails."""
        try:
            if branch is not None:
                self.apply_branch(st, branch)
            self.propagate(st)
        except _Refuted as exc:
            return exc
        return None

    def child_state(self, st: _State, tactic: Tactic) -> _State:
        child = st.copy()
        if tactic in (Tactic.SPLIT, Tactic.EXCLUSIVE):
            child.depth += 1
        return child

    def build(self, st: _State, branch: Branch | None) -> CaseNode:
        refuted = self.advance(st, branch)
        fingerprint = self.fingerprint(st)
        if refuted is not None:
            detail: dict[str, Any] = {"reason": str(refuted), "equation_id": refuted.eid}
            return CaseNode(branch, Tactic.CONTRADICTION, detail, st.steps, fingerprint)
        tactic, detail, branches = self.decide(st)
        node = CaseNode(branch, tactic, detail, st.steps, fingerprint)
        if tactic is Tactic.SOLVED:
            node.solution = self.resolve(st)
            node.free = tuple(u.id for u in self.system.unknowns if u.id not in node.solution)
            node.nonzero = frozenset(st.nonzero)
        for child_branch in branches:
            node.children.append(self.build(self.child_state(st, tactic), child_branch))
        return node


def rational_roots(poly: Poly) -> list[Any]:
    roots = set()
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            roots.add(QQ.from_sympy(-b / a))
    return sorted(roots)


def solve_cases(system: ConstraintSystem, split_budget: int | None = None) -> CaseTree:
    budget = settings.SPLIT_BUDGET if split_budget is None else split_budget
    engine = _Engine(system, budget)
    root = engine.build(engine.initial_state(), None)
    tree = CaseTree(system=system, root=root, split_budget=budget)
    logging.info(
        f"case tree with {tree.size} nodes, {len(tree.solutions())} solution families, complete {tree.complete}"
    )
    return tree


def _branch_shape(branch: Branch | None) -> tuple[frozenset[int], frozenset[int], frozenset[tuple[int, Any]]]:
    if branch is None:
        return frozenset(), frozenset(), frozenset()
    return frozenset(branch.zero), frozenset(branch.nonzero), frozenset(branch.values)


def _refutation_holds(engine: _Engine, node: CaseNode, st: _State) -> bool:
    """The refuting equation, with every assignment of the path substituted, is a nonzero term in nonzero unknowns."""
    eid = node.detail.get("equation_id")
    if eid is None:
        zero, _, values = _branch_shape(node.branch)
        return bool((zero | {var for var, value in values if not value}) & st.nonzero)
    residue = engine.system.equations[eid].poly.substitute(engine.resolve(st))
    return residue.is_term and residue.variables() <= st.nonzero


def _univariate_rational_roots(poly: Polynomial) -> set[Any]:
    symbol = Symbol("t")
    univariate = Poly.from_dict({(term[0][1] if term else 0,): c for term, c in poly.terms.items()}, symbol, domain=QQ)
    found = roots(univariate, filter="Q", cubics=False, quartics=False, quintics=False)
    return {QQ.from_sympy(r) for r in found}


def _binomial_solutions(binomials: list[Polynomial], variables: list[int]) -> set[tuple[Any, ...]] | None:
    """
    Every rational solution in nonzero unknowns, None when the exponent lattice is not of full rank. Absolute values
    come from the adjugate of a full rank subsystem, signs from trying every pattern of -1 and 1.
    """
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
        ratios.append(QQ.to_sympy(abs(c2 / c1)))
    chosen: list[int] = []
    for j in range(len(rows)):
        if Matrix([rows[k] for k in chosen + [j]]).rank() == len(chosen) + 1:
            chosen.append(j)
    if len(chosen) < n:
        return None
    square = Matrix([rows[j] for j in chosen])
    det, adjugate = int(square.det()), square.adjugate()
    magnitudes: list[Any] = []
    for i in range(n):
        power = Rational(1)
        for k, j in enumerate(chosen):
            power *= ratios[j] ** int(adjugate[i, k])
        magnitude = power ** Rational(1, det)
        if not magnitude.is_Rational:
            return set()
        magnitudes.append(QQ.from_sympy(magnitude))
    if n > SIGN_BITS:
        raise ResourceLimit(f"{n} sign bits to check in a binomial system")
    found: set[tuple[Any, ...]] = set()
    for signs in product((1, -1), repeat=n):
        values = tuple(m * s for m, s in zip(magnitudes, signs))
        assignment = dict(zip(variables, values))
        if all(not p.substitute(assignment) for p in binomials):
            found.add(values)
    return found


def _local_failure(system: ConstraintSystem, node: CaseNode, st: _State) -> str | None:
    """Checks that the children of a branching node cover every solution of its propagated system."""
    ids = {u.name: u.id for u in system.unknowns}
    shapes = [_branch_shape(child.branch) for child in node.children]
    empty: frozenset[Any] = frozenset()

    if node.tactic is Tactic.SPLIT:
        var = ids[node.detail["variable"]]
        expected = [(frozenset([var]), empty, empty), (empty, frozenset([var]), empty)]
        return None if len(shapes) == 2 and set(shapes) == set(expected) else "split does not cover both cases"

    if node.tactic is Tactic.EXCLUSIVE:
        clique = [ids[name] for name in node.detail["clique"]]
        products = {frozenset(p.variables()) for p in st.eqs.values() if p.is_term and len(p.variables()) == 2}
        for i, u in enumerate(clique):
            for w in clique[i + 1 :]:
                if frozenset([u, w]) not in products:
                    return f"no equation forces {system.name(u)}*{system.name(w)} = 0"
        expected = [(frozenset(clique), empty, empty)]
        expected += [(frozenset(clique) - {v}, frozenset([v]), empty) for v in clique]
        covered = len(shapes) == len(expected) and set(shapes) == set(expected)
        return None if covered else "cases miss a nonzero unknown"

    if node.tactic is Tactic.ROOTS:
        var = ids[node.detail["variable"]]
        values: set[Any] = set()
        for zero, nonzero, assigned in shapes:
            if zero or nonzero or len(assigned) != 1:
                return "a root branch does more than fix one value"
            ((assigned_var, value),) = assigned
            if assigned_var != var:
                return "a root branch fixes another unknown"
            values.add(value)
        for poly in st.eqs.values():
            if poly.variables() == {var}:
                wanted = _univariate_rational_roots(poly)
                if var in st.nonzero:
                    wanted.discard(QQ(0))
                if wanted == values and len(values) == len(shapes):
                    return None
        return f"branches {sorted(values)} are not the rational roots of an equation in {system.name(var)}"

    if node.tactic is Tactic.LATTICE:
        variables = sorted(ids[name] for name in node.detail["variables"])
        if not set(variables) <= st.nonzero:
            return "lattice over unknowns not known to be nonzero"
        binomials = [p for p in st.eqs.values() if len(p) == 2 and p.variables() <= set(variables)]
        solutions = _binomial_solutions(binomials, variables)
        if solutions is None:
            return "the exponent lattice is not of full rank"
        found: set[tuple[Any, ...]] = set()
        for zero, nonzero, assigned in shapes:
            values = dict(assigned)
            if zero or nonzero or set(values) != set(variables):
                return "a lattice branch does more than fix the lattice unknowns"
            found.add(tuple(values[v] for v in variables))
        if found != solutions or len(found) != len(shapes):
            return f"branches {len(found)} do not match the {len(solutions)} solutions of the binomials"
    return None


def verify_tree(tree: CaseTree) -> None:
    """
    Replay the tree from the original equations and check every node on its own: a contradiction must come with a
    refuted equation, the children of a branching node must cover every solution, a solution must satisfy every
    equation. Raises VerificationFailure on the first disagreement.
    """
    engine = _Engine(tree.system, tree.split_budget)

    def check(node: CaseNode, st: _State, path: str) -> None:
        refuted = engine.advance(st, node.branch)
        if engine.fingerprint(st) != node.fingerprint:
            raise VerificationFailure(f"{path}: the propagated system differs")
        if refuted is not None:
            if node.tactic is not Tactic.CONTRADICTION:
                raise VerificationFailure(f"{path}: replay refuted the node ({refuted})")
            if not _refutation_holds(engine, node, st):
                raise VerificationFailure(f"{path}: the contradiction has no refuted equation")
            return
        tactic, _, branches = engine.decide(st)
        if tactic is not node.tactic or branches != [child.branch for child in node.children]:
            raise VerificationFailure(f"{path}: replay chose {tactic.value} instead of {node.tactic.value}")
        failure = _local_failure(tree.system, node, st)
        if failure is not None:
            raise VerificationFailure(f"{path}: {failure}")
        if tactic is Tactic.SOLVED:
            solution = engine.resolve(st)
            if solution != node.solution:
                raise VerificationFailure(f"{path}: the solution differs")
            for eq in tree.system.equations:
                if eq.poly.substitute(solution):
                    raise VerificationFailure(f"{path}: the solution violates {eq.provenance}")
        for child in node.children:
            label = child.branch.label if child.branch is not None else "?"
            check(child, engine.child_state(st, tactic), f"{path} / {label}")

    check(tree.root, engine.initial_state(), "root")
    logging.debug(f"replayed and checked {tree.size} case nodes")
