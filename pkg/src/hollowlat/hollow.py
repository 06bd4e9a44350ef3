"""Strongly hollow and completely strongly hollow elements.

For an element ``a``: ``T(a)`` is the set of elements not above ``a``,
``kappa(a)`` its join, and ``L_a = (kappa(a) : a)``.

Families in the "completely" variant are non-empty, so ``bottom`` counts as
completely strongly hollow (it lies below every member of any family).
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .core import InvariantError, MultLattice, join

SUBSET_ORACLE_MAX_N = 12
REPRESENTATION_CAP = 20

_sh_cache: "weakref.WeakKeyDictionary[MultLattice, np.ndarray]" = weakref.WeakKeyDictionary()
_subset_cache: "weakref.WeakKeyDictionary[MultLattice, np.ndarray]" = weakref.WeakKeyDictionary()


def strongly_hollow_mask(L: MultLattice) -> np.ndarray:
    """Definitional pair scan: a <= j v k forces a <= j or a <= k."""
    mask = _sh_cache.get(L)
    if mask is None:
        mask = np.asarray(kernels.strongly_hollow_mask(L.leq, L.join_table), dtype=bool)
        mask.setflags(write=False)
        _sh_cache[L] = mask
    return mask


def is_strongly_hollow(L: MultLattice, a) -> bool:
    return bool(strongly_hollow_mask(L)[L.check_id(a)])


def t_set(L: MultLattice, a) -> frozenset:
    a = L.check_id(a)
    return frozenset(int(k) for k in np.flatnonzero(~L.leq[a]))


def kappa(L: MultLattice, a) -> int:
    return join(L, np.flatnonzero(~L.leq[L.check_id(a)]))


def l_a(L: MultLattice, a) -> int:
    return int(L.residual_table[kappa(L, a), a])


def is_completely_strongly_hollow(L: MultLattice, a) -> bool:
    """kappa criterion for non-zero ``a``; bottom is hollow by convention."""
    a = L.check_id(a)
    if a == L.bottom:
        return True
    return not L.leq[a, kappa(L, a)]


def csh_mask(L: MultLattice) -> np.ndarray:
    return np.array([is_completely_strongly_hollow(L, a) for a in L.elements], dtype=bool)


def subset_joins(L: MultLattice, items) -> np.ndarray:
    """Join of every subset of ``items``, indexed by bitmask."""
    items = list(items)
    out = np.full(1 << len(items), L.bottom, dtype=np.int64)
    for bit, x in enumerate(items):
        lo = 1 << bit
        out[lo:2 * lo] = L.join_table[out[:lo], x]
    return out


def csh_subset_oracle(L: MultLattice) -> np.ndarray:
    """Completely strongly hollow by brute force over every non-empty subset.

    Only defined for ``n <= SUBSET_ORACLE_MAX_N``.
    """
    cached = _subset_cache.get(L)
    if cached is not None:
        return cached
    if L.n > SUBSET_ORACLE_MAX_N:
        raise ValueError(f"subset oracle limited to n <= {SUBSET_ORACLE_MAX_N}, got {L.n}")
    n = L.n
    joins = subset_joins(L, range(n))
    masks = np.arange(1 << n)
    out = np.ones(n, dtype=bool)
    for a in range(n):
        # some member above a, per subset
        hit = np.zeros(1 << n, dtype=bool)
        for bit in range(n):
            if L.leq[a, bit]:
                hit |= ((masks >> bit) & 1) == 1
        covered = L.leq[a, joins]
        covered[0] = False          # empty family excluded
        out[a] = not (covered & ~hit).any()
    out.setflags(write=False)
    _subset_cache[L] = out
    return out


def csh_by_definition(L: MultLattice) -> np.ndarray:
    """CSH without the kappa shortcut.

    Uses the subset oracle when it applies. For larger lattices every
    non-empty family is finite, and a finite join reduces to iterated binary
    joins, so the pair scan decides the question.
    """
    if L.n <= SUBSET_ORACLE_MAX_N:
        return csh_subset_oracle(L)
    return strongly_hollow_mask(L)


def hollow_elements(L: MultLattice) -> frozenset:
    return frozenset(int(a) for a in np.flatnonzero(strongly_hollow_mask(L)))


@dataclass(frozen=True)
class HollowProfile:
    element: int
    strongly_hollow: bool
    completely_strongly_hollow: bool
    kappa: int
    T_set: frozenset
    L_a: int


def hollow_profile(L: MultLattice, a) -> HollowProfile:
    a = L.check_id(a)
    sh = is_strongly_hollow(L, a)
    csh = is_completely_strongly_hollow(L, a)
    T = t_set(L, a)
    k = join(L, T)
    if sh != csh:
        raise InvariantError(f"{L.name}: {L.names[a]} strongly hollow={sh} but completely={csh}")
    if sh and a != L.bottom:
        # kappa(a) must be the greatest element not above a
        if L.leq[a, k] or not all(L.leq[t, k] for t in T):
            raise InvariantError(f"{L.name}: kappa({L.names[a]}) is not the greatest element of T(a)")
    return HollowProfile(a, sh, csh, k, T, int(L.residual_table[k, a]))


def maximal_hollow_below(L: MultLattice, x) -> frozenset:
    x = L.check_id(x)
    sh = strongly_hollow_mask(L)
    cand = [k for k in np.flatnonzero(sh & L.leq[:, x])]
    out = frozenset(int(k) for k in cand if not any(j != k and L.leq[k, j] for j in cand))
    if not out:
        raise InvariantError(f"{L.name}: no strongly hollow element below {L.names[x]}")
    return out


# ------------------------------------------------------------- representations

@dataclass(frozen=True)
class Representation:
    target: int
    parts: frozenset
    minimal: bool


def is_minimal_representation(L: MultLattice, parts) -> bool:
    parts = list(parts)
    return all(not L.leq[p, join(L, parts[:i] + parts[i + 1:])] for i, p in enumerate(parts))


def _candidates(L, x):
    csh = csh_mask(L)
    return [int(c) for c in np.flatnonzero(csh & L.leq[:, x]) if c != L.bottom]


def representations(L: MultLattice, x, minimal_only=True) -> list:
    """Sets of non-zero completely strongly hollow elements joining to ``x``.

    Exhaustive over subsets while at most ``REPRESENTATION_CAP`` candidates lie
    below ``x``. Past the cap only minimal representations are produced, from
    the maximal candidates.
    """
    x = L.check_id(x)
    cand = _candidates(L, x)
    if len(cand) > REPRESENTATION_CAP:
        if not minimal_only:
            raise ValueError(f"{len(cand)} hollow candidates exceed the cap of {REPRESENTATION_CAP}")
        rep = _minimal_from_maximal(L, x, cand)
        return [rep] if rep is not None else []
    joins = subset_joins(L, cand)
    out = []
    for mask in np.flatnonzero(joins == x):
        parts = [cand[i] for i in range(len(cand)) if (int(mask) >> i) & 1]
        minimal = is_minimal_representation(L, parts)
        if minimal or not minimal_only:
            out.append(Representation(x, frozenset(parts), minimal))
    out.sort(key=lambda r: (len(r.parts), sorted(r.parts)))
    if minimal_only and len({r.parts for r in out}) > 1:
        raise InvariantError(f"{L.name}: element {L.names[x]} has distinct minimal representations")
    return out


def _minimal_from_maximal(L, x, cand):
    top_parts = [c for c in cand if not any(d != c and L.leq[c, d] for d in cand)]
    if join(L, top_parts) != x:
        return None
    return Representation(x, frozenset(top_parts), is_minimal_representation(L, top_parts))


def is_representable(L: MultLattice, x) -> bool:
    x = L.check_id(x)
    return join(L, _candidates(L, x)) == x


def minimal_representations_bruteforce(L: MultLattice, x) -> list:
    """All minimal representations by plain subset enumeration (test oracle)."""
    cand = _candidates(L, x)
    out = []
    for r in range(len(cand) + 1):
        for parts in combinations(cand, r):
            if join(L, parts) == x and is_minimal_representation(L, parts):
                out.append(frozenset(parts))
    return out


def format_hollow_report(L: MultLattice) -> str:
    """Per element: SH flag, kappa and L_a; then the minimal representation table."""
    lines = []
    for a in L.elements:
        hp = hollow_profile(L, a)
        lines.append(
            f"element {L.names[a]} strongly_hollow {str(hp.strongly_hollow).lower()} "
            f"kappa {L.names[hp.kappa]} L_a {L.names[hp.L_a]}")
    lines.append("hollow_set {" + ",".join(L.names[a] for a in sorted(hollow_elements(L))) + "}")
    for x in L.elements:
        reps = representations(L, x, minimal_only=True)
        if reps:
            parts = ",".join(L.names[p] for p in sorted(reps[0].parts))
            lines.append(f"representation {L.names[x]} {{{parts}}}")
        else:
            lines.append(f"representation {L.names[x]} none")
    return "\n".join(lines) + "\n"
