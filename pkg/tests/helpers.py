"""Shared generators and reference implementations for the test suite."""

from __future__ import annotations

import random
from collections import deque

from qrespath import (
    BLUE,
    EXISTS,
    FORALL,
    ColoredGraph,
    QcnfFormula,
    graph_from_edges,
    normalize,
    qcnf,
)


def random_qcnf(
    rng: random.Random,
    max_vars: int = 6,
    max_clauses: int = 6,
    max_width: int = 5,
    forall_bias: float = 0.4,
) -> QcnfFormula:
    """A normalized random formula; clauses draw distinct variables, so no
    duplicate literals or tautologies arise."""
    n = rng.randint(1, max_vars)
    prefix = [
        (v, FORALL if rng.random() < forall_bias else EXISTS) for v in range(1, n + 1)
    ]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        width = min(rng.randint(1, max_width), n)
        chosen = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return normalize(qcnf(prefix, clauses))[0]


def random_colored_graph(
    rng: random.Random, max_vertices: int = 12, density: tuple[float, float] = (0.1, 0.9)
) -> ColoredGraph:
    n = rng.randint(2, max_vertices)
    p = rng.uniform(*density)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, rng.randint(0, 1)))
    return graph_from_edges(n, edges)


def reference_pec_walk(
    graph: ColoredGraph, source: int, lifo: bool = False
) -> dict[int, set[int]]:
    """Plain-python transliteration of the labeling loop, with a queue
    discipline knob to show the result does not depend on pop order."""
    labels: dict[int, set[int]] = {v: set() for v in range(graph.vertex_count)}
    queue: deque[tuple[int, int]] = deque()
    for w, c in graph.neighbors_of(source):
        if c == BLUE and BLUE not in labels[w]:
            labels[w].add(BLUE)
            queue.append((w, BLUE))
    while queue:
        v, c_in = queue.pop() if lifo else queue.popleft()
        for w, c in graph.neighbors_of(v):
            if c != c_in and c not in labels[w]:
                labels[w].add(c)
                queue.append((w, c))
    return labels


def all_pec_simple_paths(
    graph: ColoredGraph, source: int, target: int
) -> list[list[int]]:
    """Exhaustive properly-colored simple paths (no repeated vertex)."""
    paths: list[list[int]] = []
    walk = [source]

    def go(last_color: int | None) -> None:
        v = walk[-1]
        if v == target and len(walk) > 1:
            paths.append(list(walk))
            return
        for w, c in graph.neighbors_of(v):
            if w in walk:
                continue
            if last_color is not None and c == last_color:
                continue
            walk.append(w)
            go(c)
            walk.pop()

    go(None)
    return paths


EX1_TEXT = """p cnf 5 4
e 1 2 0
a 3 0
e 4 0
a 5 0
3 5 2 1 0
-3 -2 -1 0
-1 -4 0
-1 4 0
"""
# variables: y1=1 y2=2 x1=3 y3=4 x2=5

EX2_TEXT = """p cnf 6 5
a 1 0
e 2 3 0
a 4 0
e 5 6 0
1 5 0
-5 -4 3 0
-3 4 6 0
-6 2 0
-1 -2 0
"""
# variables: u=1 e=2 v=3 x=4 y=5 z=6

INTRO_TEXT = """p cnf 2 2
a 1 0
e 2 0
1 -2 0
-1 2 0
"""
# the opening two-variable formula: forall x exists y

STRICT_TEXT = """p cnf 3 3
a 1 2 0
e 3 0
1 0
-2 3 0
2 -3 0
"""
# variables: x1=1 x2=2 y=3; separates the semantic scheme from the path scheme

CUMUL_TEXT = """p cnf 3 4
a 1 0
e 2 3 0
-3 1 2 0
-3 -1 -2 0
3 -1 2 0
3 1 -2 0
"""
# z <-> (x xor y) with x=1 y=2 z=3; down-shifting {x} alone flips the value
# while every single transposition of an adjacent pair preserves it
