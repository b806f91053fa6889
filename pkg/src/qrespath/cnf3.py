"""Linear-time conversion to ternary clauses, preserving resolution
connectedness.

Every clause wider than three literals is split left to right:
``(l1 v l2 v ... v ln)`` becomes ``(l1 v l2 v z)`` and
``(-z v l3 v ... v ln)`` with a fresh existential ``z`` prepended to the
prefix and added to the connecting set, repeating until ternary.  Provenance
maps each produced clause back to its source so witness paths can be
translated into the original formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import EXISTS, FormulaError, QcnfFormula, ensure_normalized
from .respath import ResolutionPath


@dataclass(frozen=True)
class TernaryForm:
    """A ternary formula plus the bookkeeping to map results back."""

    formula: QcnfFormula
    connecting: frozenset[int]  # input connecting set plus the fresh variables
    clause_origin: tuple[int, ...]  # produced clause index -> input clause index
    fresh_variables: frozenset[int]

    @property
    def is_identity(self) -> bool:
        return not self.fresh_variables


def to_q3cnf(formula: QcnfFormula, connecting: frozenset[int] | set[int]) -> TernaryForm:
    """Split wide clauses; identity on already-ternary formulas."""
    formula = ensure_normalized(formula)
    connecting = frozenset(connecting)
    bad = connecting - formula.existential_vars
    if bad:
        raise FormulaError(
            f"connecting set must be existential prefix variables; got {sorted(bad)}"
        )
    if formula.max_clause_width <= 3:
        return TernaryForm(
            formula=formula,
            connecting=connecting,
            clause_origin=tuple(range(len(formula.clauses))),
            fresh_variables=frozenset(),
        )

    next_fresh = formula.max_var + 1
    fresh: list[int] = []
    out_clauses: list[tuple[int, ...]] = []
    origin: list[int] = []
    for index, clause in enumerate(formula.clauses):
        work = list(clause)
        while len(work) > 3:
            z = next_fresh
            next_fresh += 1
            fresh.append(z)
            out_clauses.append((work[0], work[1], z))
            origin.append(index)
            work = [-z] + work[2:]
        out_clauses.append(tuple(work))
        origin.append(index)

    # each split prepends its fresh variable outermost, so the last fresh
    # variable ends up first
    prefix = tuple((z, EXISTS) for z in reversed(fresh)) + formula.prefix
    ternary = QcnfFormula(prefix, tuple(out_clauses), normalized=True)
    return TernaryForm(
        formula=ternary,
        connecting=connecting | frozenset(fresh),
        clause_origin=tuple(origin),
        fresh_variables=frozenset(fresh),
    )


def map_path_back(form: TernaryForm, path: ResolutionPath) -> ResolutionPath:
    """Translate a path in the ternary formula into the original formula by
    collapsing fresh-variable link pairs.

    Runs of steps chained through fresh literals always stay inside one
    source clause and never reverse inside the chain, so each run collapses
    to a single occurrence of the source clause.
    """
    fresh = form.fresh_variables
    steps = path.steps
    if not steps:
        raise FormulaError("empty path")
    if abs(steps[0][0]) in fresh or abs(steps[-1][2]) in fresh:
        raise FormulaError("path endpoints must be literals of the original formula")

    merged: list[tuple[int, int, int]] = []
    i = 0
    while i < len(steps):
        lit_in, ci, lit_out = steps[i]
        source = form.clause_origin[ci]
        while abs(lit_out) in fresh:
            i += 1
            if i >= len(steps):
                raise FormulaError("path ends on a fresh literal link")
            nxt_in, nxt_ci, nxt_out = steps[i]
            if nxt_in != -lit_out:
                raise FormulaError("fresh link does not connect complementary literals")
            if form.clause_origin[nxt_ci] != source:
                raise FormulaError("fresh link crosses distinct source clauses")
            lit_out = nxt_out
        merged.append((lit_in, source, lit_out))
        i += 1
    return ResolutionPath(tuple(merged))


def serialize_with_provenance(form: TernaryForm) -> str:
    """QDIMACS text of the ternary formula with a comment block recording
    produced-to-source clause ordinal pairs (both 1-based)."""
    from .qdimacs import serialize_qdimacs

    lines = [
        f"c origin {i + 1} {j + 1}" for i, j in enumerate(form.clause_origin)
    ]
    return "\n".join(lines) + ("\n" if lines else "") + serialize_qdimacs(form.formula)
