"""Resolution paths as explicit literal/clause sequences, plus an
independent validity checker used to revalidate every witness."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import QcnfFormula, FormulaError


@dataclass(frozen=True)
class ResolutionPath:
    """An alternating sequence l_1, C_1, l'_1, ..., l_n, C_n, l'_n.

    ``steps`` holds one (entering literal, clause index, exiting literal)
    triple per clause occurrence; clause indices are 0-based positions in the
    owning formula's matrix.
    """

    steps: tuple[tuple[int, int, int], ...]

    @property
    def start(self) -> int:
        return self.steps[0][0]

    @property
    def end(self) -> int:
        return self.steps[-1][2]

    @property
    def clause_indices(self) -> tuple[int, ...]:
        return tuple(c for _, c, _ in self.steps)

    def render(self) -> str:
        """Compact text form: ``1 C1 5 -5 C4 4`` (clause ordinals 1-based)."""
        parts: list[str] = []
        for lit_in, ci, lit_out in self.steps:
            parts.append(str(lit_in))
            parts.append(f"C{ci + 1}")
            parts.append(str(lit_out))
        return " ".join(parts)


def path_violations(
    formula: QcnfFormula, connecting: frozenset[int] | set[int], path: ResolutionPath
) -> list[str]:
    """All ways ``path`` fails the four resolution-path conditions; empty
    means the path is valid for the given connecting set."""
    problems: list[str] = []
    steps = path.steps
    if not steps:
        return ["path has no clause occurrences"]
    linkable = {l for v in connecting for l in (v, -v)}
    for i, (lit_in, ci, lit_out) in enumerate(steps):
        if not 0 <= ci < len(formula.clauses):
            problems.append(f"step {i}: clause index {ci} out of range")
            continue
        clause = formula.clauses[ci]
        if lit_in not in clause:
            problems.append(f"step {i}: literal {lit_in} not in clause {ci + 1}")
        if lit_out not in clause:
            problems.append(f"step {i}: literal {lit_out} not in clause {ci + 1}")
        if abs(lit_in) == abs(lit_out):
            problems.append(f"step {i}: entering and exiting literals share a variable")
        if i + 1 < len(steps):
            nxt = steps[i + 1][0]
            if nxt != -lit_out:
                problems.append(f"step {i}: next literal {nxt} is not the complement of {lit_out}")
            if lit_out not in linkable:
                problems.append(f"step {i}: linking literal {lit_out} outside the connecting set")
    if steps[0][0] == steps[-1][2]:
        problems.append("endpoints coincide")
    return problems


def validate_path(
    formula: QcnfFormula, connecting: frozenset[int] | set[int], path: ResolutionPath
) -> ResolutionPath:
    problems = path_violations(formula, connecting, path)
    if problems:
        raise FormulaError("invalid resolution path: " + "; ".join(problems))
    return path
