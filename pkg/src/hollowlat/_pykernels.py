"""Numpy implementations of the table-scan kernels.

Each function mirrors one in ``_ckernels.pyx`` and must return identical
results, including which witness is reported first (lexicographic order
of the index tuple).
"""
import numpy as np


def _first(mask):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def first_assoc_violation(mul):
    # (a*b)*c vs a*(b*c), indexed [a, b, c]
    left = mul[mul, :]
    right = mul[:, mul]
    return _first(left != right)


def first_distrib_violation(mul, join):
    # a*(b v c) vs (a*b) v (a*c), indexed [a, b, c]
    left = mul[:, join]
    right = join[mul[:, :, None], mul[:, None, :]]
    return _first(left != right)


def strongly_hollow_mask(leq, join):
    # bad[j, k, a]: a <= j v k while a <= j and a <= k both fail
    below_join = leq[:, join].transpose(1, 2, 0)
    not_j = ~leq.T[:, None, :]
    not_k = ~leq.T[None, :, :]
    bad = below_join & not_j & not_k
    return ~bad.any(axis=(0, 1))


def residual_table(leq, mul, join, bottom):
    n = leq.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    # ok[x, b, a]: x*b <= a
    ok = leq[mul]
    for a in range(n):
        for b in range(n):
            acc = bottom
            for x in np.flatnonzero(ok[:, b, a]):
                acc = join[acc, x]
            out[a, b] = acc
    return out


def principal_masks(leq, join, meet, mul, res, bottom, top):
    """Return (meet_principal, join_principal, weak_meet, weak_join) masks."""
    n = leq.shape[0]
    mp = np.zeros(n, dtype=bool)
    jp = np.zeros(n, dtype=bool)
    wm = np.zeros(n, dtype=bool)
    wj = np.zeros(n, dtype=bool)
    idx = np.arange(n)
    for e in range(n):
        col_e = res[:, e]              # (x:e) for every x
        # a ^ (b e) == ((a:e) ^ b) e  over [a, b]
        lhs = meet[:, mul[:, e]]
        rhs = mul[meet[col_e[:, None], idx[None, :]], e]
        mp[e] = bool((lhs == rhs).all())
        # a v (b:e) == ((a e v b) : e)  over [a, b]
        lhs = join[:, col_e]
        rhs = res[join[mul[:, e][:, None], idx[None, :]], e]
        jp[e] = bool((lhs == rhs).all())
        # e ^ a == (a:e) e
        wm[e] = bool((meet[e, :] == mul[col_e, e]).all())
        # a v (0:e) == (a e : e)
        wj[e] = bool((join[:, res[bottom, e]] == res[mul[:, e], e]).all())
    return mp, jp, wm, wj
