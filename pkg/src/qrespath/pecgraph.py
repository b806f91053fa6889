"""2-edge-colored literal graphs and the PEC-walk labeling.

Vertices of a connection graph are the dense literal codes
``2*v`` (positive) and ``2*v + 1`` (negative) for every variable slot up to
the formula's maximum id; red edges join the two polarities of each
connecting variable, blue edges join distinct literals sharing a clause.
The labeling records, per vertex, which colors can end a properly
edge-colored walk from the source whose first edge is blue, plus predecessor
records for witness reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .engine import BLUE, COLOR_NAMES, RED, SEED_MARK, resolve_engine
from .formula import FormulaError, QcnfFormula, ensure_normalized
from ._walk_numpy import pec_walk_numpy

try:
    from ._walk_numba import pec_walk_numba
except ImportError:  # pragma: no cover - numba is an install-time dependency
    pec_walk_numba = None


def lit_to_vertex(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


def vertex_to_lit(vertex: int) -> int:
    return vertex // 2 if vertex % 2 == 0 else -(vertex // 2)


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected simple graph in CSR form with one color per edge."""

    indptr: np.ndarray  # int32, length vertex_count + 1
    neighbors: np.ndarray  # int32, directed adjacency (each edge twice)
    colors: np.ndarray  # uint8

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.neighbors) // 2

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors_of(self, v: int) -> list[tuple[int, int]]:
        lo, hi = int(self.indptr[v]), int(self.indptr[v + 1])
        return [(int(self.neighbors[i]), int(self.colors[i])) for i in range(lo, hi)]

    def color_of(self, u: int, v: int) -> int | None:
        for w, c in self.neighbors_of(u):
            if w == v:
                return c
        return None

    def undirected_edges(self) -> list[tuple[int, int, int]]:
        """(u, v, color) with u < v, sorted; canonical export order."""
        out = []
        for u in range(self.vertex_count):
            for v, c in self.neighbors_of(u):
                if u < v:
                    out.append((u, v, c))
        out.sort()
        return out

    def export_text(self) -> str:
        """Line-oriented debug dump: ``v <n>`` then ``e <u> <v> <r|b>``."""
        lines = [f"v {self.vertex_count}"]
        for u, v, c in self.undirected_edges():
            lines.append(f"e {u} {v} {COLOR_NAMES[c][0]}")
        return "\n".join(lines) + "\n"


def graph_from_edges(
    vertex_count: int, edges: Iterable[tuple[int, int, int]]
) -> ColoredGraph:
    """Build a graph from (u, v, color) triples, enforcing simplicity."""
    seen: dict[tuple[int, int], int] = {}
    for u, v, c in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ValueError(f"edge ({u},{v}) outside 0..{vertex_count - 1}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if c not in (RED, BLUE):
            raise ValueError(f"unknown color {c}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge for vertex pair {key}")
        seen[key] = c
    return _assemble_csr(vertex_count, seen)


def _assemble_csr(vertex_count: int, edge_map: dict[tuple[int, int], int]) -> ColoredGraph:
    if edge_map:
        us = np.fromiter((u for u, _ in edge_map), dtype=np.int32, count=len(edge_map))
        vs = np.fromiter((v for _, v in edge_map), dtype=np.int32, count=len(edge_map))
        cs = np.fromiter(edge_map.values(), dtype=np.uint8, count=len(edge_map))
        src = np.concatenate([us, vs])
        dst = np.concatenate([vs, us])
        col = np.concatenate([cs, cs])
    else:
        src = np.empty(0, dtype=np.int32)
        dst = np.empty(0, dtype=np.int32)
        col = np.empty(0, dtype=np.uint8)
    return _csr_sort(vertex_count, src, dst, col)


def _csr_sort(
    vertex_count: int, src: np.ndarray, dst: np.ndarray, col: np.ndarray
) -> ColoredGraph:
    order = np.argsort(src, kind="stable")
    dst = dst[order].astype(np.int32, copy=False)
    col = col[order].astype(np.uint8, copy=False)
    counts = np.bincount(src, minlength=vertex_count)
    indptr = np.zeros(vertex_count + 1, dtype=np.int32)
    indptr[1:] = np.cumsum(counts)
    return ColoredGraph(indptr=indptr, neighbors=dst, colors=col)


def build_connection_graph(
    formula: QcnfFormula, connecting: Iterable[int]
) -> ColoredGraph:
    """The 2-colored literal graph of a ternary formula.

    Red edges link the polarities of every occurring connecting variable;
    blue edges link every pair of distinct literals sharing a clause, with
    duplicates from multiple shared clauses removed.
    """
    formula = ensure_normalized(formula)
    if formula.max_clause_width > 3:
        raise FormulaError(
            "connection graph needs a ternary formula; split wide clauses first"
        )
    connecting = set(connecting)
    bad = connecting - formula.existential_vars
    if bad:
        raise FormulaError(f"connecting set must be existential prefix variables; got {sorted(bad)}")

    nslots = 2 * (formula.max_var + 1)
    ptr, flat = formula.clause_arrays
    widths = np.diff(ptr)
    starts = ptr[:-1]

    lefts: list[np.ndarray] = []
    rights: list[np.ndarray] = []
    s2 = starts[widths == 2]
    if s2.size:
        lefts += [flat[s2]]
        rights += [flat[s2 + 1]]
    s3 = starts[widths == 3]
    if s3.size:
        lefts += [flat[s3], flat[s3], flat[s3 + 1]]
        rights += [flat[s3 + 1], flat[s3 + 2], flat[s3 + 2]]

    if lefts:
        la = np.concatenate(lefts)
        rb = np.concatenate(rights)
        ua = (2 * np.abs(la) + (la < 0)).astype(np.int64)
        ub = (2 * np.abs(rb) + (rb < 0)).astype(np.int64)
        blue_keys = np.unique(np.minimum(ua, ub) * nslots + np.maximum(ua, ub))
    else:
        blue_keys = np.empty(0, dtype=np.int64)

    occurring_connecting = sorted(connecting & formula.occurring_vars)
    if occurring_connecting:
        z = np.asarray(occurring_connecting, dtype=np.int64)
        red_keys = (2 * z) * nslots + (2 * z + 1)
    else:
        red_keys = np.empty(0, dtype=np.int64)

    if np.intersect1d(blue_keys, red_keys).size:
        raise FormulaError("tautological clause produced a red/blue edge clash")

    keys = np.concatenate([blue_keys, red_keys])
    colors = np.concatenate(
        [
            np.full(blue_keys.size, BLUE, dtype=np.uint8),
            np.full(red_keys.size, RED, dtype=np.uint8),
        ]
    )
    us = (keys // nslots).astype(np.int32)
    vs = (keys % nslots).astype(np.int32)
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    col = np.concatenate([colors, colors])
    return _csr_sort(nslots, src, dst, col)


IncidenceVertex = tuple[str, int]


def build_incidence_graph(
    formula: QcnfFormula, connecting: Iterable[int]
) -> dict[IncidenceVertex, set[IncidenceVertex]]:
    """Uncolored clause/literal incidence graph used for cross-checks.

    Vertices are ("clause", index) and ("lit", literal); edges join each
    clause to its literals and the two polarities of connecting variables.
    """
    formula = ensure_normalized(formula)
    connecting = set(connecting)
    bad = connecting - formula.existential_vars
    if bad:
        raise FormulaError(f"connecting set must be existential prefix variables; got {sorted(bad)}")
    adj: dict[IncidenceVertex, set[IncidenceVertex]] = {}
    for l in formula.literals:
        adj[("lit", l)] = set()
    for i, clause in enumerate(formula.clauses):
        cv: IncidenceVertex = ("clause", i)
        adj[cv] = set()
        for l in clause:
            adj[cv].add(("lit", l))
            adj[("lit", l)].add(cv)
    for z in connecting & formula.occurring_vars:
        adj[("lit", z)].add(("lit", -z))
        adj[("lit", -z)].add(("lit", z))
    return adj


@dataclass(frozen=True)
class ColorLabeling:
    """Result of one PEC-walk run from a fixed source."""

    graph: ColoredGraph
    source: int
    labels: np.ndarray  # bool, (vertex_count, 2)
    pred_vertex: np.ndarray
    pred_color: np.ndarray
    pushes: int
    engine: str

    def has(self, t: int, c: int) -> bool:
        if t == self.source:
            raise ValueError("labeling is defined for targets other than the source")
        return bool(self.labels[t, c])

    def colors_at(self, t: int) -> set[int]:
        return {c for c in (RED, BLUE) if self.labels[t, c]}


def pec_walk(graph: ColoredGraph, source: int, engine: str | None = None) -> ColorLabeling:
    """Label every vertex with the colors that can end a PEC walk from
    ``source`` starting on a blue edge."""
    if not 0 <= source < graph.vertex_count:
        raise ValueError(f"unknown vertex {source}")
    chosen = resolve_engine(engine, pec_walk_numba is not None)
    kernel = pec_walk_numba if chosen == "numba" else pec_walk_numpy
    labels, pred_v, pred_c, pushes = kernel(
        graph.indptr, graph.neighbors, graph.colors, source
    )
    pushes = int(pushes)
    if pushes > 2 * graph.edge_count or pushes > 2 * graph.vertex_count:
        raise AssertionError("push count exceeded the linear work bound")
    return ColorLabeling(
        graph=graph,
        source=source,
        labels=labels,
        pred_vertex=pred_v,
        pred_color=pred_c,
        pushes=pushes,
        engine=chosen,
    )


def reachable_with_last_color(labeling: ColorLabeling, t: int, c: int) -> bool:
    return labeling.has(t, c)


def extract_walk(labeling: ColorLabeling, t: int, c: int) -> list[int]:
    """A witness PEC walk source..t whose first edge is blue and whose last
    edge has color ``c``, rebuilt from predecessor records and revalidated."""
    if not labeling.has(t, c):
        raise ValueError(f"no walk recorded for vertex {t} with color {COLOR_NAMES[c]}")
    limit = 2 * labeling.graph.vertex_count + 1
    vertices = [t]
    colors = [c]
    v, col = t, c
    while True:
        pv = int(labeling.pred_vertex[v, col])
        pc = int(labeling.pred_color[v, col])
        if pc == SEED_MARK:
            vertices.append(int(labeling.source))
            break
        vertices.append(pv)
        colors.append(pc)
        v, col = pv, pc
        if len(vertices) > limit:
            raise AssertionError("predecessor chain exceeded the walk length bound")
    vertices.reverse()
    colors.reverse()
    problems = walk_violations(labeling.graph, vertices, first_color=BLUE, last_color=c)
    if problems:
        raise AssertionError("reconstructed walk is invalid: " + "; ".join(problems))
    return vertices


def walk_violations(
    graph: ColoredGraph,
    walk: list[int],
    first_color: int | None = None,
    last_color: int | None = None,
) -> list[str]:
    """Independent PEC-walk checker: edge existence, color alternation, and
    optional constraints on the first/last edge colors."""
    problems = []
    if len(walk) < 2:
        return ["walk needs at least one edge"]
    edge_colors = []
    for a, b in zip(walk, walk[1:]):
        c = graph.color_of(a, b)
        if c is None:
            problems.append(f"missing edge {a}-{b}")
            return problems
        edge_colors.append(c)
    for i in range(len(edge_colors) - 1):
        if edge_colors[i] == edge_colors[i + 1]:
            problems.append(f"consecutive edges {i} and {i + 1} share a color")
    if first_color is not None and edge_colors[0] != first_color:
        problems.append(f"first edge is {COLOR_NAMES[edge_colors[0]]}")
    if last_color is not None and edge_colors[-1] != last_color:
        problems.append(f"last edge is {COLOR_NAMES[edge_colors[-1]]}")
    return problems
