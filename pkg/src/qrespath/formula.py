"""QCNF data model: quantifier prefix, clause matrix, and prefix algebra.

Variables are positive integers (QDIMACS numbering), literals are signed
integers (``-v`` is the negation of ``v``), clauses are tuples of literals in
input order, and the prefix is a tuple of ``(variable, quantifier)`` pairs.
Formulas are immutable; every read operation is safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

import numpy as np

FORALL = "a"
EXISTS = "e"

Clause = tuple[int, ...]
PrefixEntry = tuple[int, str]


class FormulaError(ValueError):
    """Raised when an operation is applied to variables or literals the
    formula does not know about, or when a structural precondition fails."""


def complement(lit: int) -> int:
    return -lit


def var_of(lit: int) -> int:
    return abs(lit)


@dataclass(frozen=True)
class QcnfFormula:
    """A prenex QCNF formula: quantifier prefix plus clause matrix.

    ``normalized`` marks formulas that went through :func:`normalize`
    (no duplicate literals, no tautological clauses, no free variables).
    It is excluded from equality.
    """

    prefix: tuple[PrefixEntry, ...]
    clauses: tuple[Clause, ...]
    normalized: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        seen = set()
        for v, q in self.prefix:
            if not isinstance(v, int) or v < 1:
                raise FormulaError(f"variable ids must be positive integers, got {v!r}")
            if q not in (FORALL, EXISTS):
                raise FormulaError(f"unknown quantifier {q!r} for variable {v}")
            if v in seen:
                raise FormulaError(f"variable {v} quantified twice")
            seen.add(v)

    # -- prefix bookkeeping -------------------------------------------------

    @cached_property
    def _depth(self) -> dict[int, int]:
        return {v: i + 1 for i, (v, _) in enumerate(self.prefix)}

    @cached_property
    def _quant(self) -> dict[int, str]:
        return {v: q for v, q in self.prefix}

    @property
    def variables(self) -> tuple[int, ...]:
        """Prefix variables in prefix order."""
        return tuple(v for v, _ in self.prefix)

    def depth(self, x: int) -> int:
        """1-based position of ``x`` in the prefix."""
        try:
            return self._depth[x]
        except KeyError:
            raise FormulaError(f"variable {x} is not quantified in the prefix") from None

    def quantifier(self, x: int) -> str:
        try:
            return self._quant[x]
        except KeyError:
            raise FormulaError(f"variable {x} is not quantified in the prefix") from None

    def right_of(self, x: int) -> set[int]:
        """Variables strictly deeper than ``x`` in the prefix."""
        d = self.depth(x)
        return {v for v, _ in self.prefix[d:]}

    def quantifier_blocks(self) -> list[tuple[str, set[int]]]:
        """Maximal runs of equal quantifier, in prefix order."""
        blocks: list[tuple[str, set[int]]] = []
        for v, q in self.prefix:
            if blocks and blocks[-1][0] == q:
                blocks[-1][1].add(v)
            else:
                blocks.append((q, {v}))
        return blocks

    @cached_property
    def _block_index(self) -> dict[int, int]:
        idx = {}
        for i, (_, members) in enumerate(self.quantifier_blocks()):
            for v in members:
                idx[v] = i
        return idx

    def block_of(self, x: int) -> int:
        try:
            return self._block_index[x]
        except KeyError:
            raise FormulaError(f"variable {x} is not quantified in the prefix") from None

    @cached_property
    def existential_vars(self) -> frozenset[int]:
        return frozenset(v for v, q in self.prefix if q == EXISTS)

    @cached_property
    def universal_vars(self) -> frozenset[int]:
        return frozenset(v for v, q in self.prefix if q == FORALL)

    # -- matrix bookkeeping -------------------------------------------------

    @cached_property
    def occurring_vars(self) -> frozenset[int]:
        """Variables with at least one matrix occurrence (var(F) in the
        matrix sense); prefix variables without occurrences are excluded."""
        return frozenset(abs(l) for c in self.clauses for l in c)

    @cached_property
    def literals(self) -> frozenset[int]:
        """lit(F): both polarities of every occurring variable."""
        occ = self.occurring_vars
        return frozenset(l for v in occ for l in (v, -v))

    @property
    def size(self) -> int:
        """Sum of clause cardinalities."""
        return sum(len(c) for c in self.clauses)

    @cached_property
    def max_var(self) -> int:
        m = 0
        for v, _ in self.prefix:
            m = max(m, v)
        for c in self.clauses:
            for l in c:
                m = max(m, abs(l))
        return m

    @cached_property
    def max_clause_width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    @cached_property
    def clause_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR view of the matrix: (clause_ptr, flat literals), int32.

        Built once per formula; the graph builders index into this.
        """
        ptr = np.zeros(len(self.clauses) + 1, dtype=np.int32)
        for i, c in enumerate(self.clauses):
            ptr[i + 1] = ptr[i] + len(c)
        flat = np.fromiter(
            (l for c in self.clauses for l in c), dtype=np.int32, count=int(ptr[-1])
        )
        return ptr, flat

    # -- core operations ------------------------------------------------------

    def restrict(self, assignment: Mapping[int, int]) -> "QcnfFormula":
        """F[tau]: drop satisfied clauses, falsified literals, and the
        assigned variables' quantifications."""
        for v in assignment:
            if v not in self._quant and v not in self.occurring_vars:
                raise FormulaError(f"assignment names unknown variable {v}")
        new_clauses = []
        for c in self.clauses:
            keep: list[int] = []
            satisfied = False
            for l in c:
                v = abs(l)
                if v in assignment:
                    value = assignment[v] if l > 0 else 1 - assignment[v]
                    if value == 1:
                        satisfied = True
                        break
                else:
                    keep.append(l)
            if not satisfied:
                new_clauses.append(tuple(keep))
        new_prefix = tuple((v, q) for v, q in self.prefix if v not in assignment)
        return QcnfFormula(new_prefix, tuple(new_clauses), normalized=self.normalized)

    def with_prefix(self, prefix: Iterable[PrefixEntry]) -> "QcnfFormula":
        """Same matrix under a reordered prefix (quantifier reordering)."""
        new = tuple(prefix)
        if sorted(v for v, _ in new) != sorted(v for v, _ in self.prefix):
            raise FormulaError("prefix reordering must keep the same variable set")
        return QcnfFormula(new, self.clauses, normalized=self.normalized)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)


def qcnf(prefix: Iterable[PrefixEntry], clauses: Iterable[Iterable[int]]) -> QcnfFormula:
    """Convenience constructor from plain iterables (raw, unnormalized)."""
    return QcnfFormula(tuple(prefix), tuple(tuple(c) for c in clauses))


@dataclass(frozen=True)
class NormalizeDiagnostics:
    tautological_clauses: int = 0
    duplicate_literals: int = 0
    free_variables: tuple[int, ...] = ()
    unused_prefix_variables: tuple[int, ...] = ()

    @property
    def clean(self) -> bool:
        return (
            self.tautological_clauses == 0
            and self.duplicate_literals == 0
            and not self.free_variables
        )


def normalize(formula: QcnfFormula) -> tuple[QcnfFormula, NormalizeDiagnostics]:
    """Normalize a raw formula; total, never raises.

    Duplicate literals inside a clause are dropped (first occurrence kept),
    tautological clauses are removed, free matrix variables are bound
    existentially in a fresh outermost block, and prefix variables with no
    matrix occurrence are kept but reported.
    """
    taut = 0
    dups = 0
    new_clauses: list[Clause] = []
    for c in formula.clauses:
        seen: list[int] = []
        tautological = False
        for l in c:
            if l in seen:
                dups += 1
                continue
            if -l in seen:
                tautological = True
                break
            seen.append(l)
        if tautological:
            taut += 1
        else:
            new_clauses.append(tuple(seen))

    quantified = {v for v, _ in formula.prefix}
    occurring = {abs(l) for c in new_clauses for l in c}
    free = sorted(occurring - quantified)
    unused = tuple(v for v, _ in formula.prefix if v not in occurring)

    prefix = tuple((v, EXISTS) for v in free) + formula.prefix
    result = QcnfFormula(prefix, tuple(new_clauses), normalized=True)
    diag = NormalizeDiagnostics(
        tautological_clauses=taut,
        duplicate_literals=dups,
        free_variables=tuple(free),
        unused_prefix_variables=unused,
    )
    return result, diag


def ensure_normalized(formula: QcnfFormula) -> QcnfFormula:
    """Return the formula itself if already normalized, else normalize it."""
    if formula.normalized:
        return formula
    return normalize(formula)[0]


def shift_down(formula: QcnfFormula, group: Iterable[int]) -> QcnfFormula:
    """Down-shift: move ``group`` to the rightmost prefix positions, keeping
    the internal order of both the group and the remaining variables."""
    members = set(group)
    known = {v for v, _ in formula.prefix}
    unknown = members - known
    if unknown:
        raise FormulaError(f"cannot shift unknown variables {sorted(unknown)}")
    outside = tuple(e for e in formula.prefix if e[0] not in members)
    inside = tuple(e for e in formula.prefix if e[0] in members)
    return formula.with_prefix(outside + inside)


def transpose_adjacent(formula: QcnfFormula, position: int) -> QcnfFormula:
    """Swap the prefix entries at ``position`` and ``position + 1`` (0-based)."""
    if not 0 <= position < len(formula.prefix) - 1:
        raise FormulaError(f"no adjacent pair at prefix position {position}")
    p = list(formula.prefix)
    p[position], p[position + 1] = p[position + 1], p[position]
    return formula.with_prefix(p)


def closure(pairs: Iterable[tuple[int, int]], seeds: Iterable[int]) -> set[int]:
    """Reflexive-transitive closure: ``seeds`` plus everything reachable from
    them through the relation's edges."""
    succ: dict[int, list[int]] = {}
    for a, b in pairs:
        succ.setdefault(a, []).append(b)
    reached = set(seeds)
    todo = list(reached)
    while todo:
        a = todo.pop()
        for b in succ.get(a, ()):
            if b not in reached:
                reached.add(b)
                todo.append(b)
    return reached


@dataclass(frozen=True)
class DependencyRelation:
    """An ordered-pair relation produced by a dependency scheme."""

    scheme: str
    pairs: frozenset[tuple[int, int]]

    def of(self, x: int) -> set[int]:
        return {b for a, b in self.pairs if a == x}

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    def sorted_pairs(self, formula: QcnfFormula) -> list[tuple[int, int]]:
        """Pairs ordered by ascending (depth(x), depth(y))."""
        return sorted(self.pairs, key=lambda p: (formula.depth(p[0]), formula.depth(p[1])))
