"""Synthetic formula families for benchmarking.

The chain family forces the walk labeling to traverse long alternating
red/blue chains, so timings measure the reachability engine rather than
parsing: the positive polarity of a front existential reaches the final
universal through one chain of binary clauses, the negative polarity through
a second chain, making the pair a genuine dependency.
"""

from __future__ import annotations

from .formula import EXISTS, FORALL, QcnfFormula


def chain_formula(size: int) -> QcnfFormula:
    """A chain instance with total literal count close to ``size``.

    Shape: ``E y E w1..wm E v1..vm A x`` with clauses
    ``(y v w1), (-w1 v w2), ..., (-wm v x)`` and
    ``(-y v v1), (-v1 v v2), ..., (-vm v -x)``.
    The only dependency is (y, x); querying y walks both chains end to end.
    """
    if size < 8:
        raise ValueError("chain family needs size >= 8")
    m = max(1, (size - 4) // 4)
    y = 1
    w = [2 + i for i in range(m)]
    v = [2 + m + i for i in range(m)]
    x = 2 + 2 * m
    prefix = [(y, EXISTS)]
    prefix += [(u, EXISTS) for u in w]
    prefix += [(u, EXISTS) for u in v]
    prefix.append((x, FORALL))
    clauses = [(y, w[0])]
    clauses += [(-w[i], w[i + 1]) for i in range(m - 1)]
    clauses.append((-w[m - 1], x))
    clauses.append((-y, v[0]))
    clauses += [(-v[i], v[i + 1]) for i in range(m - 1)]
    clauses.append((-v[m - 1], -x))
    return QcnfFormula(tuple(prefix), tuple(clauses), normalized=True)
