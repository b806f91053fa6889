"""Dependency-scheme queries over the linear-time pipeline.

A connectedness query splits wide clauses, builds the 2-colored literal
graph, runs the walk labeling from the source literal, and reads the blue
label at the target; witnesses come from predecessor records, are translated
back through clause provenance, and are revalidated against the
resolution-path conditions before being returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

from .cnf3 import TernaryForm, map_path_back, to_q3cnf
from .engine import BLUE
from .formula import (
    EXISTS,
    FORALL,
    DependencyRelation,
    FormulaError,
    QcnfFormula,
    ensure_normalized,
)
from .pecgraph import (
    ColorLabeling,
    ColoredGraph,
    build_connection_graph,
    extract_walk,
    lit_to_vertex,
    pec_walk,
    vertex_to_lit,
)
from .respath import ResolutionPath, validate_path


@dataclass
class QueryStats:
    """Counters and phase timings accumulated across pipeline calls.

    ``vertices``/``edges`` describe the largest graph built; pushes and
    timings accumulate over all walk runs."""

    vertices: int = 0
    edges: int = 0
    queue_pushes: int = 0
    walks: int = 0
    transform_s: float = 0.0
    graph_s: float = 0.0
    walk_s: float = 0.0

    def record_graph(self, graph: ColoredGraph) -> None:
        self.vertices = max(self.vertices, graph.vertex_count)
        self.edges = max(self.edges, graph.edge_count)

    def record_walk(self, labeling: ColorLabeling) -> None:
        self.queue_pushes += labeling.pushes
        self.walks += 1

    def merge(self, other: "QueryStats") -> None:
        self.vertices = max(self.vertices, other.vertices)
        self.edges = max(self.edges, other.edges)
        self.queue_pushes += other.queue_pushes
        self.walks += other.walks
        self.transform_s += other.transform_s
        self.graph_s += other.graph_s
        self.walk_s += other.walk_s


@dataclass(frozen=True)
class DependencyQueryResult:
    dependent: bool
    witness: tuple[ResolutionPath, ResolutionPath] | None = None
    crossed_polarity: bool | None = None


def _pipeline(
    formula: QcnfFormula,
    connecting: Iterable[int],
    stats: QueryStats | None,
) -> tuple[TernaryForm, ColoredGraph]:
    t0 = time.perf_counter()
    form = to_q3cnf(formula, frozenset(connecting))
    t1 = time.perf_counter()
    graph = build_connection_graph(form.formula, form.connecting)
    t2 = time.perf_counter()
    if stats is not None:
        stats.transform_s += t1 - t0
        stats.graph_s += t2 - t1
        stats.record_graph(graph)
    return form, graph


def _walk(
    graph: ColoredGraph,
    source_lit: int,
    engine: str | None,
    stats: QueryStats | None,
) -> ColorLabeling:
    t0 = time.perf_counter()
    labeling = pec_walk(graph, lit_to_vertex(source_lit), engine=engine)
    if stats is not None:
        stats.walk_s += time.perf_counter() - t0
        stats.record_walk(labeling)
    return labeling


def _witness_path(
    formula: QcnfFormula,
    connecting: frozenset[int],
    form: TernaryForm,
    labeling: ColorLabeling,
    target_lit: int,
) -> ResolutionPath:
    walk = extract_walk(labeling, lit_to_vertex(target_lit), BLUE)
    path = _walk_to_path(form.formula, walk)
    mapped = map_path_back(form, path)
    return validate_path(formula, connecting, mapped)


def _walk_to_path(ternary: QcnfFormula, walk: list[int]) -> ResolutionPath:
    """Blue steps of the walk become clause occurrences; each blue edge is
    attributed to the lowest-index clause containing both endpoints."""
    pair_clause: dict[tuple[int, int], int] = {}
    for ci, clause in enumerate(ternary.clauses):
        for i in range(len(clause)):
            for j in range(i + 1, len(clause)):
                a, b = clause[i], clause[j]
                key = (a, b) if a < b else (b, a)
                pair_clause.setdefault(key, ci)
    steps = []
    for i in range(0, len(walk) - 1, 2):
        a = vertex_to_lit(walk[i])
        b = vertex_to_lit(walk[i + 1])
        key = (a, b) if a < b else (b, a)
        if key not in pair_clause:
            raise AssertionError(f"blue edge {a},{b} has no clause")
        steps.append((a, pair_clause[key], b))
    return ResolutionPath(tuple(steps))


def resolution_connected(
    formula: QcnfFormula,
    connecting: Iterable[int],
    lit: int,
    lit2: int,
    want_witness: bool = False,
    engine: str | None = None,
    stats: QueryStats | None = None,
) -> tuple[bool, ResolutionPath | None]:
    """Are the two literals joined by a resolution path through the
    connecting set?  Linear time in the formula size."""
    formula = ensure_normalized(formula)
    if lit == lit2:
        raise FormulaError("connectedness of a literal to itself is undefined")
    if lit not in formula.literals or lit2 not in formula.literals:
        raise FormulaError("both literals must belong to occurring variables")
    cs = frozenset(connecting)
    form, graph = _pipeline(formula, cs, stats)
    labeling = _walk(graph, lit, engine, stats)
    connected = labeling.has(lit_to_vertex(lit2), BLUE)
    witness = None
    if connected and want_witness:
        witness = _witness_path(formula, cs, form, labeling, lit2)
    return connected, witness


def is_dependency_pair(
    formula: QcnfFormula,
    connecting: Iterable[int],
    x: int,
    y: int,
    want_witness: bool = False,
    engine: str | None = None,
    stats: QueryStats | None = None,
) -> DependencyQueryResult:
    """Both polarity configurations checked with two walk runs on one graph:
    sources x and -x, targets read from the labels."""
    formula = ensure_normalized(formula)
    if x == y:
        raise FormulaError("a dependency pair needs two distinct variables")
    if x not in formula.occurring_vars or y not in formula.occurring_vars:
        return DependencyQueryResult(dependent=False)
    cs = frozenset(connecting)
    form, graph = _pipeline(formula, cs, stats)
    from_pos = _walk(graph, x, engine, stats)
    from_neg = _walk(graph, -x, engine, stats)
    pos_y = from_pos.has(lit_to_vertex(y), BLUE)
    neg_ny = from_neg.has(lit_to_vertex(-y), BLUE)
    pos_ny = from_pos.has(lit_to_vertex(-y), BLUE)
    neg_y = from_neg.has(lit_to_vertex(y), BLUE)
    if pos_y and neg_ny:
        crossed = False
    elif pos_ny and neg_y:
        crossed = True
    else:
        return DependencyQueryResult(dependent=False)
    witness = None
    if want_witness:
        if crossed:
            witness = (
                _witness_path(formula, cs, form, from_pos, -y),
                _witness_path(formula, cs, form, from_neg, y),
            )
        else:
            witness = (
                _witness_path(formula, cs, form, from_pos, y),
                _witness_path(formula, cs, form, from_neg, -y),
            )
    return DependencyQueryResult(dependent=True, witness=witness, crossed_polarity=crossed)


def dres_connecting_set(formula: QcnfFormula, x: int, y: int) -> frozenset[int]:
    """The connecting set the scheme mandates for the ordered pair (x, y)."""
    return frozenset(formula.right_of(x) - formula.universal_vars - {x, y})


def dres_contains(
    formula: QcnfFormula,
    x: int,
    y: int,
    want_witness: bool = False,
    engine: str | None = None,
    stats: QueryStats | None = None,
) -> DependencyQueryResult:
    """Membership of (x, y) in the resolution-path dependency relation."""
    formula = ensure_normalized(formula)
    if x == y:
        raise FormulaError("a dependency query needs two distinct variables")
    formula.depth(x)
    formula.depth(y)
    if formula.depth(x) >= formula.depth(y):
        return DependencyQueryResult(dependent=False)
    if formula.quantifier(x) == formula.quantifier(y):
        return DependencyQueryResult(dependent=False)
    return is_dependency_pair(
        formula,
        dres_connecting_set(formula, x, y),
        x,
        y,
        want_witness=want_witness,
        engine=engine,
        stats=stats,
    )


def dres_of_existential(
    formula: QcnfFormula,
    y: int,
    engine: str | None = None,
    stats: QueryStats | None = None,
) -> set[int]:
    """All universal variables deeper than the existential ``y`` that (y, x)
    pairs into the relation, from exactly two walk runs.

    The pair's connecting set never contains universals, so one graph built
    with everything existential to the right of ``y`` serves every target."""
    formula = ensure_normalized(formula)
    if formula.quantifier(y) != EXISTS:
        raise FormulaError(f"variable {y} is not existential")
    if y not in formula.occurring_vars:
        return set()
    right = formula.right_of(y)
    candidates = sorted(
        v for v in right & formula.universal_vars if v in formula.occurring_vars
    )
    if not candidates:
        return set()
    cs = frozenset(right - formula.universal_vars)
    _, graph = _pipeline(formula, cs, stats)
    from_pos = _walk(graph, y, engine, stats)
    from_neg = _walk(graph, -y, engine, stats)
    dependent = set()
    for x in candidates:
        pos_x = from_pos.has(lit_to_vertex(x), BLUE)
        neg_nx = from_neg.has(lit_to_vertex(-x), BLUE)
        pos_nx = from_pos.has(lit_to_vertex(-x), BLUE)
        neg_x = from_neg.has(lit_to_vertex(x), BLUE)
        if (pos_x and neg_nx) or (pos_nx and neg_x):
            dependent.add(x)
    return dependent


def dres_full(
    formula: QcnfFormula,
    engine: str | None = None,
    jobs: int = 1,
    stats: QueryStats | None = None,
) -> DependencyRelation:
    """The complete relation: one two-walk pass per existential source, one
    pairwise query per universal-existential pair (each such pair excludes a
    different variable from its connecting set)."""
    formula = ensure_normalized(formula)
    existentials = [
        v for v, q in formula.prefix if q == EXISTS and v in formula.occurring_vars
    ]
    universal_pairs = [
        (x, y)
        for x, q in formula.prefix
        if q == FORALL and x in formula.occurring_vars
        for y in formula.right_of(x)
        if formula.quantifier(y) == EXISTS and y in formula.occurring_vars
    ]

    def existential_task(y: int) -> tuple[set[tuple[int, int]], QueryStats]:
        local = QueryStats()
        found = {(y, x) for x in dres_of_existential(formula, y, engine=engine, stats=local)}
        return found, local

    def universal_task(pair: tuple[int, int]) -> tuple[set[tuple[int, int]], QueryStats]:
        local = QueryStats()
        x, y = pair
        hit = dres_contains(formula, x, y, engine=engine, stats=local).dependent
        return ({(x, y)} if hit else set()), local

    pairs: set[tuple[int, int]] = set()
    results: list[tuple[set[tuple[int, int]], QueryStats]] = []
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results += list(pool.map(existential_task, existentials))
            results += list(pool.map(universal_task, universal_pairs))
    else:
        results += [existential_task(y) for y in existentials]
        results += [universal_task(pair) for pair in universal_pairs]
    for chunk, local in results:
        pairs |= chunk
        if stats is not None:
            stats.merge(local)
    return DependencyRelation(scheme="res", pairs=frozenset(pairs))


def dtriv_full(formula: QcnfFormula) -> DependencyRelation:
    """The trivial baseline: every prefix-ordered pair that crosses a
    quantifier-block boundary."""
    formula = ensure_normalized(formula)
    ordered = formula.variables
    pairs = {
        (a, b)
        for i, a in enumerate(ordered)
        for b in ordered[i + 1 :]
        if formula.block_of(a) != formula.block_of(b)
    }
    return DependencyRelation(scheme="triv", pairs=frozenset(pairs))


def relation_to_text(formula: QcnfFormula, relation: DependencyRelation) -> str:
    lines = [f"{x} {y}" for x, y in relation.sorted_pairs(formula)]
    return "\n".join(lines) + ("\n" if lines else "")


def relation_to_json_dict(
    formula: QcnfFormula,
    relation: DependencyRelation,
    diagnostics: dict | None = None,
) -> dict:
    from .qdimacs import formula_digest

    return {
        "scheme": relation.scheme,
        "formula_hash": formula_digest(formula),
        "pairs": [[x, y] for x, y in relation.sorted_pairs(formula)],
        "diagnostics": diagnostics or {},
    }
