"""Pure-numpy PEC-walk labeling: level-synchronous frontier propagation.

Each round gathers every CSR edge leaving the frontier states, keeps the
color-alternating ones, and labels the states not seen before.  Total edge
work matches the queue kernel; rounds equal the BFS depth of the state
graph, so very deep graphs favor the numba kernel.
"""

import numpy as np

RED = 0
BLUE = 1
SEED_MARK = 2


def pec_walk_numpy(indptr, nbr, col, source):
    nv = indptr.shape[0] - 1
    label = np.zeros((nv, 2), dtype=np.bool_)
    pred_v = np.full((nv, 2), -1, dtype=np.int32)
    pred_c = np.full((nv, 2), -1, dtype=np.int8)

    lo, hi = int(indptr[source]), int(indptr[source + 1])
    seed_mask = col[lo:hi] == BLUE
    front_v = nbr[lo:hi][seed_mask].astype(np.int64)
    label[front_v, BLUE] = True
    pred_v[front_v, BLUE] = source
    pred_c[front_v, BLUE] = SEED_MARK
    front_c = np.full(front_v.size, BLUE, dtype=np.uint8)
    pushes = int(front_v.size)

    while front_v.size:
        starts = indptr[front_v].astype(np.int64)
        counts = (indptr[front_v + 1] - indptr[front_v]).astype(np.int64)
        total = int(counts.sum())
        if total == 0:
            break
        rep = np.repeat(np.arange(front_v.size), counts)
        offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
        pos = np.arange(total) - np.repeat(offsets, counts) + np.repeat(starts, counts)
        tgt = nbr[pos].astype(np.int64)
        tc = col[pos]
        ok = tc != front_c[rep]
        tgt, tc, rep = tgt[ok], tc[ok], rep[ok]
        fresh = ~label[tgt, tc]
        tgt, tc, rep = tgt[fresh], tc[fresh], rep[fresh]
        if tgt.size == 0:
            break
        # first occurrence per state decides the predecessor record
        keys = tgt * 2 + tc
        _, first = np.unique(keys, return_index=True)
        tgt, tc, rep = tgt[first], tc[first], rep[first]
        label[tgt, tc] = True
        pred_v[tgt, tc] = front_v[rep]
        pred_c[tgt, tc] = front_c[rep]
        pushes += int(tgt.size)
        front_v = tgt
        front_c = tc

    return label, pred_v, pred_c, pushes
