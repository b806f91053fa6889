"""Jitted PEC-walk labeling over a CSR adjacency.

State = (vertex, color of the last traversed edge).  The queue holds states;
popping (v, c_in) and expanding neighbors w with an edge color different from
c_in reproduces the pair-queue formulation exactly, since expansion depends
only on the popped pair's head vertex and edge color.
"""

import numpy as np
from numba import njit

RED = 0
BLUE = 1
SEED_MARK = 2


@njit(cache=True, nogil=True)
def pec_walk_numba(indptr, nbr, col, source):
    nv = indptr.shape[0] - 1
    label = np.zeros((nv, 2), dtype=np.bool_)
    pred_v = np.full((nv, 2), -1, dtype=np.int32)
    pred_c = np.full((nv, 2), -1, dtype=np.int8)
    # every push labels a fresh (vertex, color) state, so 2*nv bounds the queue
    qv = np.empty(2 * nv + 2, dtype=np.int32)
    qc = np.empty(2 * nv + 2, dtype=np.uint8)
    head = 0
    tail = 0
    for i in range(indptr[source], indptr[source + 1]):
        w = nbr[i]
        if col[i] == BLUE and not label[w, BLUE]:
            label[w, BLUE] = True
            pred_v[w, BLUE] = source
            pred_c[w, BLUE] = SEED_MARK
            qv[tail] = w
            qc[tail] = BLUE
            tail += 1
    while head < tail:
        v = qv[head]
        c_in = qc[head]
        head += 1
        for i in range(indptr[v], indptr[v + 1]):
            w = nbr[i]
            c = col[i]
            if c != c_in and not label[w, c]:
                label[w, c] = True
                pred_v[w, c] = v
                pred_c[w, c] = c_in
                qv[tail] = w
                qc[tail] = c
                tail += 1
    return label, pred_v, pred_c, tail
