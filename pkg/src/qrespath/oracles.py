"""Desk-scale brute-force reference implementations.

Everything here exists to cross-check the linear-time path: the recursive
min/max evaluator, a second evaluator built on quantifier expansion, the
semantic minimal-matrix scheme, product-state PEC reachability, exhaustive
resolution-path search straight off the definition, and the
dependency-scheme property checkers.  None of it touches the 3CNF transform
or the colored-graph machinery used by the fast path (the PEC oracle only
reads the graph's adjacency).
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .engine import BLUE
from .formula import (
    FORALL,
    EXISTS,
    FormulaError,
    QcnfFormula,
    closure,
    ensure_normalized,
    shift_down,
    transpose_adjacent,
)
from .pecgraph import ColoredGraph
from .respath import ResolutionPath, validate_path


class BudgetExceededError(RuntimeError):
    """An oracle refused an input larger than its budget."""

    def __init__(self, budget_name: str, needed: int, allowed: int):
        super().__init__(
            f"{budget_name} budget exceeded: needs {needed}, allowed {allowed}"
        )
        self.budget_name = budget_name
        self.needed = needed
        self.allowed = allowed


@dataclass(frozen=True)
class EvalBudget:
    max_variables: int = 20
    max_reorderings: int = 10000


DEFAULT_BUDGET = EvalBudget()


def _check_var_budget(formula: QcnfFormula, budget: EvalBudget) -> None:
    n = len(formula.prefix)
    if n > budget.max_variables:
        raise BudgetExceededError("max_variables", n, budget.max_variables)
    free = formula.occurring_vars - set(formula.variables)
    if free:
        raise FormulaError(f"matrix variables {sorted(free)} are not quantified")


def evaluate(formula: QcnfFormula, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """The recursive semantic value: existential = max, universal = min,
    empty matrix = 1, empty clause = 0.  Branches on 0 before 1 and
    short-circuits; no other pruning."""
    _check_var_budget(formula, budget)
    return _nu(formula)


def _nu(formula: QcnfFormula) -> int:
    for c in formula.clauses:
        if not c:
            return 0
    if not formula.clauses:
        return 1
    v, q = formula.prefix[0]
    low = _nu(formula.restrict({v: 0}))
    if q == EXISTS and low == 1:
        return 1
    if q == FORALL and low == 0:
        return 0
    return _nu(formula.restrict({v: 1}))


def evaluate_by_expansion(formula: QcnfFormula, budget: EvalBudget = DEFAULT_BUDGET) -> int:
    """Independent evaluator: expand away the universals into a propositional
    formula over Skolem-renamed existentials, then decide it with a small
    DPLL.  An existential is renamed per assignment to the universals left of
    it in the prefix."""
    _check_var_budget(formula, budget)
    universals = [v for v, q in formula.prefix if q == FORALL]
    depth = {v: i for i, (v, _) in enumerate(formula.prefix)}
    quant = dict(formula.prefix)

    expansion: set[frozenset[tuple[object, bool]]] = set()
    for values in itertools.product((0, 1), repeat=len(universals)):
        sigma = dict(zip(universals, values))
        for clause in formula.clauses:
            satisfied = False
            lits: set[tuple[object, bool]] = set()
            for l in clause:
                v = abs(l)
                if quant[v] == FORALL:
                    value = sigma[v] if l > 0 else 1 - sigma[v]
                    if value == 1:
                        satisfied = True
                        break
                else:
                    scope = tuple(
                        (u, sigma[u]) for u in universals if depth[u] < depth[v]
                    )
                    lits.add(((v, scope), l > 0))
            if not satisfied:
                expansion.add(frozenset(lits))
    return 1 if _dpll(list(expansion)) else 0


def _dpll(clauses: list[frozenset[tuple[object, bool]]]) -> bool:
    work = [set(c) for c in clauses]
    while True:
        if not work:
            return True
        if any(not c for c in work):
            return False
        unit = next((c for c in work if len(c) == 1), None)
        if unit is not None:
            (lit,) = unit
            work = _assign(work, lit)
            continue
        key, sign = next(iter(min(work, key=len)))
        return _dpll(_assign(work, (key, sign))) or _dpll(_assign(work, (key, not sign)))


def _assign(clauses: list[set], lit: tuple[object, bool]) -> list[set]:
    negated = (lit[0], not lit[1])
    out = []
    for c in clauses:
        if lit in c:
            continue
        out.append(c - {negated} if negated in c else c)
    return out


# -- minimal matrix scheme ----------------------------------------------------


def _block_key(prefix: tuple[tuple[int, str], ...]) -> tuple:
    # nu is invariant under permutations inside a quantifier block, so
    # orderings are memoized by their block sequence
    blocks: list[tuple[str, frozenset[int]]] = []
    run_q: str | None = None
    run: set[int] = set()
    for v, q in prefix:
        if q != run_q and run:
            blocks.append((run_q, frozenset(run)))
            run = set()
        run_q = q
        run.add(v)
    if run:
        blocks.append((run_q, frozenset(run)))
    return tuple(blocks)


def count_dmat_reorderings(formula: QcnfFormula, x: int, y: int) -> int:
    """Number of constrained orderings dmat_contains would enumerate."""
    n = len(formula.prefix)
    r = len(formula.right_of(x) - {y})
    return sum(
        math.comb(r, k) * math.factorial(k) * math.factorial(n - 2 - k)
        for k in range(r + 1)
    )


def dmat_contains(
    formula: QcnfFormula,
    x: int,
    y: int,
    budget: EvalBudget = DEFAULT_BUDGET,
) -> bool:
    """Semantic membership test: does some reordering that keeps x's tail
    inside its original tail and places x immediately before y flip the
    value when x and y are transposed?"""
    formula = ensure_normalized(formula)
    _check_var_budget(formula, budget)
    if x == y:
        raise FormulaError("x and y must be distinct prefix variables")
    if formula.depth(x) >= formula.depth(y):
        raise FormulaError(f"({x},{y}) must satisfy depth({x}) < depth({y})")

    total = count_dmat_reorderings(formula, x, y)
    if total > budget.max_reorderings:
        raise BudgetExceededError("max_reorderings", total, budget.max_reorderings)

    quant = dict(formula.prefix)
    tail_pool = sorted(formula.right_of(x) - {y})
    everyone = [v for v, _ in formula.prefix]
    nu_memo: dict[tuple, int] = {}

    def nu_of(prefix: tuple[tuple[int, str], ...]) -> int:
        key = _block_key(prefix)
        if key not in nu_memo:
            nu_memo[key] = _nu(formula.with_prefix(prefix))
        return nu_memo[key]

    seen_orderings: set[tuple] = set()
    for k in range(len(tail_pool) + 1):
        for tail_set in itertools.combinations(tail_pool, k):
            rest = [v for v in everyone if v not in tail_set and v not in (x, y)]
            for left in itertools.permutations(rest):
                for tail in itertools.permutations(tail_set):
                    order = left + (x, y) + tail
                    prefix = tuple((v, quant[v]) for v in order)
                    key = _block_key(prefix)
                    if key in seen_orderings:
                        continue
                    seen_orderings.add(key)
                    swapped = left + (y, x) + tail
                    swapped_prefix = tuple((v, quant[v]) for v in swapped)
                    if nu_of(prefix) != nu_of(swapped_prefix):
                        return True
    return False


# -- product-state PEC reachability -------------------------------------------


def pec_reachable_oracle(graph: ColoredGraph, source: int) -> dict[int, set[int]]:
    """Explicit reachability over (vertex, last-edge-color) product states,
    seeded by the source's blue edges; at most 2|V| states exist."""
    reached: set[tuple[int, int]] = set()
    queue: deque[tuple[int, int]] = deque()
    for w, c in graph.neighbors_of(source):
        if c == BLUE and (w, BLUE) not in reached:
            reached.add((w, BLUE))
            queue.append((w, BLUE))
    while queue:
        v, c = queue.popleft()
        for w, c2 in graph.neighbors_of(v):
            if c2 != c and (w, c2) not in reached:
                reached.add((w, c2))
                queue.append((w, c2))
    result: dict[int, set[int]] = {v: set() for v in range(graph.vertex_count)}
    for v, c in reached:
        result[v].add(c)
    return result


# -- resolution paths straight off the definition ------------------------------


def _occurrence_map(formula: QcnfFormula) -> dict[int, list[int]]:
    occ: dict[int, list[int]] = {}
    for i, clause in enumerate(formula.clauses):
        for l in clause:
            occ.setdefault(l, []).append(i)
    return occ


def _validate_connecting(formula: QcnfFormula, connecting: Iterable[int]) -> frozenset[int]:
    cs = frozenset(connecting)
    bad = cs - formula.existential_vars
    if bad:
        raise FormulaError(
            f"connecting set must be existential prefix variables; got {sorted(bad)}"
        )
    return cs


def resolution_connected_bruteforce(
    formula: QcnfFormula, connecting: Iterable[int], lit: int, lit2: int
) -> bool:
    """Existence of a resolution path, by saturation over the literals the
    path can extend from (condition 3 only allows continuing through a
    connecting-variable literal and its complement)."""
    formula = ensure_normalized(formula)
    cs = _validate_connecting(formula, connecting)
    if lit == lit2:
        raise FormulaError("connectedness of a literal to itself is undefined")
    linkable = {s * v for v in cs for s in (1, -1)}
    occ = _occurrence_map(formula)
    seen_entries = {lit}
    ends: set[int] = set()
    todo = [lit]
    while todo:
        a = todo.pop()
        for ci in occ.get(a, ()):
            for b in formula.clauses[ci]:
                if abs(b) == abs(a):
                    continue
                ends.add(b)
                if b in linkable and -b not in seen_entries:
                    seen_entries.add(-b)
                    todo.append(-b)
    return lit2 in ends


def enumerate_resolution_paths(
    formula: QcnfFormula,
    connecting: Iterable[int],
    lit: int,
    lit2: int,
    max_len: int,
    max_paths: int | None = None,
) -> list[ResolutionPath]:
    """All resolution paths from ``lit`` to ``lit2`` with at most ``max_len``
    clause occurrences, found by depth-first search over the definition.

    Branches that cannot reach the target within the remaining length are
    pruned using a breadth-first distance computed over the same linking
    relation, so a nonemptiness probe (``max_paths=1``) stays cheap.  With
    ``max_len >= 2 * len(formula.literals)`` nonemptiness is equivalent to
    connectedness.  Full enumerations can be exponentially large; cap with
    ``max_paths`` when the listing itself is not needed.
    """
    formula = ensure_normalized(formula)
    cs = _validate_connecting(formula, connecting)
    if lit == lit2:
        raise FormulaError("connectedness of a literal to itself is undefined")
    linkable = {s * v for v in cs for s in (1, -1)}
    occ = _occurrence_map(formula)

    # min clause steps to finish at lit2 from each possible entering literal
    dist: dict[int, int] = {}
    frontier = []
    for entry in set(occ):
        for ci in occ[entry]:
            clause = formula.clauses[ci]
            if lit2 in clause and abs(lit2) != abs(entry):
                dist[entry] = 1
                frontier.append(entry)
                break
    rev: dict[int, list[int]] = {}
    for ci, clause in enumerate(formula.clauses):
        for a in clause:
            for b in clause:
                if abs(a) == abs(b) or b not in linkable:
                    continue
                rev.setdefault(-b, []).append(a)
    while frontier:
        nxt = []
        for e in frontier:
            for a in rev.get(e, ()):
                if a not in dist:
                    dist[a] = dist[e] + 1
                    nxt.append(a)
        frontier = nxt

    found: list[ResolutionPath] = []
    steps: list[tuple[int, int, int]] = []

    def search(entry: int) -> bool:
        used = len(steps)
        if used + dist.get(entry, max_len + 1) > max_len:
            return False
        for ci in occ.get(entry, ()):
            clause = formula.clauses[ci]
            for b in clause:
                if abs(b) == abs(entry):
                    continue
                steps.append((entry, ci, b))
                if b == lit2:
                    found.append(validate_path(formula, cs, ResolutionPath(tuple(steps))))
                    if max_paths is not None and len(found) >= max_paths:
                        steps.pop()
                        return True
                if b in linkable and used + 1 < max_len:
                    if search(-b):
                        steps.pop()
                        return True
                steps.pop()
        return False

    search(lit)
    return found


# -- dependency-scheme property checks ----------------------------------------


def check_transposition_soundness(
    formula: QcnfFormula,
    relation: Iterable[tuple[int, int]],
    budget: EvalBudget = DEFAULT_BUDGET,
) -> tuple[bool, tuple[int, int] | None]:
    """Every adjacent prefix pair outside the relation must leave the value
    unchanged when transposed; returns the first counterexample in prefix
    order."""
    _check_var_budget(formula, budget)
    pairs = set(relation)
    base = _nu(formula)
    for r in range(len(formula.prefix) - 1):
        a = formula.prefix[r][0]
        b = formula.prefix[r + 1][0]
        if (a, b) in pairs:
            continue
        if _nu(transpose_adjacent(formula, r)) != base:
            return False, (a, b)
    return True, None


def check_cumulative_shift(
    formula: QcnfFormula,
    relation: Iterable[tuple[int, int]],
    seeds: Iterable[int],
    budget: EvalBudget = DEFAULT_BUDGET,
) -> bool:
    """Down-shifting the relation's closure of ``seeds`` must preserve the
    value."""
    _check_var_budget(formula, budget)
    shifted = shift_down(formula, closure(relation, seeds))
    return _nu(formula) == _nu(shifted)
