"""Canonical forms, small-model enumeration and implication mining.

Canonical form is computed by colour refinement plus individualization: the
search tree branches on every element of the first non-singleton cell, so the
minimum leaf encoding is exact (not a heuristic invariant). Brute-force
isomorphism over permutations is kept as the oracle for small n.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product as cartesian
from pathlib import Path

import numpy as np

from .core import Lattice, LatticeError, MultLattice, NotALatticeError, lattice_tables, validate
from .results import HOLDS, VIOLATED, CheckResult

MAX_ENUM_N = 7
MAX_MINE_N = 6
MIN_MINE_N = 2      # the one-element lattice has no maximal element; skipped


class SearchError(LatticeError, ValueError):
    pass


# ------------------------------------------------------------ canonical form

def _refine(colors, leq, mul):
    """Refine a colouring until stable; colours are renumbered 0..k-1 canonically."""
    n = len(colors)
    while True:
        sigs = []
        for x in range(n):
            rows = [(int(colors[y]), bool(leq[x, y]), bool(leq[y, x]),
                     -1 if mul is None else int(colors[mul[x, y]])) for y in range(n)]
            rows.sort()
            sigs.append((int(colors[x]), tuple(rows)))
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        new = np.array([rank[s] for s in sigs], dtype=np.int64)
        if len(order) == len(set(colors.tolist())):
            return new
        colors = new


def _encode(perm, leq, mul):
    """Bytes of (n, leq, mul) with element perm[i] moved to position i."""
    n = len(perm)
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    parts = [np.array([n], dtype=np.uint8).tobytes(),
             np.packbits(leq[np.ix_(perm, perm)]).tobytes()]
    if mul is not None:
        parts.append(inv[mul[np.ix_(perm, perm)]].astype(np.uint8).tobytes())
    return b"".join(parts)


def _canonical_search(leq, mul):
    n = leq.shape[0]
    start = _refine(np.zeros(n, dtype=np.int64), leq, mul)
    best = [None, None]

    def visit(colors):
        counts = np.bincount(colors, minlength=n)
        cells = np.flatnonzero(counts > 1)
        if len(cells) == 0:
            perm = np.argsort(colors, kind="stable")
            code = _encode(perm, leq, mul)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            return
        target = cells[0]
        for v in np.flatnonzero(colors == target):
            c = colors * 2
            c[v] -= 1          # v now strictly precedes the rest of its cell
            visit(_refine(c, leq, mul))

    visit(start)
    return best[0], best[1]


def canonical_form(L) -> bytes:
    """Isomorphism-invariant encoding of (n, leq, mul); order only for plain lattices."""
    leq = np.asarray(L.leq, dtype=bool)
    mul = np.asarray(L.mul_table) if isinstance(L, MultLattice) else None
    return _canonical_search(leq, mul)[0]


def canonical_permutation(L) -> np.ndarray:
    leq = np.asarray(L.leq, dtype=bool)
    mul = np.asarray(L.mul_table) if isinstance(L, MultLattice) else None
    return _canonical_search(leq, mul)[1]


def canonical_relabel(L: MultLattice, name=None) -> MultLattice:
    """Copy of L with elements in canonical order."""
    return L.relabel(canonical_permutation(L), name=name)


def _plain_names(n, bottom, top):
    letters = iter("abcdefghijklmnopqrstuvwxyz")
    return tuple("0" if i == bottom else "1" if i == top else next(letters) for i in range(n))


def isomorphic_bruteforce(A, B) -> bool:
    """Try every bijection fixing bottom and top (oracle; n <= 8)."""
    if A.n != B.n:
        return False
    if A.n > 8:
        raise SearchError("brute-force isomorphism is limited to n <= 8")
    mulA = getattr(A, "mul_table", None)
    mulB = getattr(B, "mul_table", None)
    if (mulA is None) != (mulB is None):
        return False
    inner_a = [x for x in A.elements if x not in (A.bottom, A.top)]
    inner_b = [x for x in B.elements if x not in (B.bottom, B.top)]
    for img in permutations(inner_b):
        f = np.empty(A.n, dtype=np.int64)
        f[A.bottom], f[A.top] = B.bottom, B.top
        f[inner_a] = img
        if not (B.leq[np.ix_(f, f)] == A.leq).all():
            continue
        if mulA is None or (f[mulA] == mulB[np.ix_(f, f)]).all():
            return True
    return False


# ------------------------------------------------------- lattice enumeration

@lru_cache(maxsize=None)
def _enumerate_lattices(n):
    if n == 1:
        return (Lattice.from_leq(np.ones((1, 1), dtype=bool), ("0",), "enum(n=1)"),)
    inner = n - 2
    pairs = [(i, j) for i in range(inner) for j in range(i + 1, inner)]
    seen = {}
    for mask in range(1 << len(pairs)):
        rel = np.eye(inner, dtype=bool)
        for b, (i, j) in enumerate(pairs):
            if (mask >> b) & 1:
                rel[i, j] = True
        # transitive? (rel is upper triangular, so antisymmetry is automatic)
        if inner and ((rel.astype(np.int64) @ rel.astype(np.int64) > 0) & ~rel).any():
            continue
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] = rel
        try:
            lattice_tables(leq)
        except NotALatticeError:
            continue
        L = Lattice.from_leq(leq)
        code = canonical_form(L)
        seen.setdefault(code, leq)
    out = []
    for k, code in enumerate(sorted(seen)):
        L = Lattice.from_leq(seen[code])
        perm = canonical_permutation(L)
        leq = L.leq[np.ix_(perm, perm)]
        skel = Lattice.from_leq(leq)
        out.append(Lattice.from_leq(leq, _plain_names(n, skel.bottom, skel.top),
                                    f"enum(n={n},order={k})"))
    return tuple(out)


def enumerate_lattices(n: int) -> list:
    """All lattices on n elements up to isomorphism, in canonical-form order."""
    if not 1 <= n <= MAX_ENUM_N:
        raise SearchError(f"enumerate_lattices needs 1 <= n <= {MAX_ENUM_N}, got {n}")
    return list(_enumerate_lattices(n))


def enumerate_lattices_naive(n: int) -> list:
    """Oracle: every orientation of every pair, filtered, deduplicated by brute force."""
    if not 1 <= n <= 5:
        raise SearchError("naive lattice oracle is limited to n <= 5")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = []
    for states in cartesian((0, 1, 2), repeat=len(pairs)):
        leq = np.eye(n, dtype=bool)
        for (i, j), s in zip(pairs, states):
            if s == 1:
                leq[i, j] = True
            elif s == 2:
                leq[j, i] = True
        if ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            continue
        try:
            L = Lattice.from_leq(leq)
        except NotALatticeError:
            continue
        if not any(isomorphic_bruteforce(L, M) for M in found):
            found.append(L)
    return found


# ----------------------------------------------------- multiplication search

def _partial_ok(M, leq, J):
    """Check the axioms on the assigned part of a partial table (-1 = unknown)."""
    n = M.shape[0]
    known = M >= 0
    Mc = np.where(known, M, 0)
    # monotone in the first argument: a <= a' implies ab <= a'b
    both = known[:, None, :] & known[None, :, :] & leq[:, :, None]
    if (both & ~leq[Mc[:, None, :], Mc[None, :, :]]).any():
        return False
    # a(b v c) = ab v ac
    Jbc = J
    lhs_known = known[:, Jbc]                          # [a, b, c]
    ok = known[:, :, None] & known[:, None, :] & lhs_known
    lhs = Mc[np.arange(n)[:, None, None], Jbc[None, :, :]]
    rhs = J[Mc[:, :, None], Mc[:, None, :]]
    if (ok & (lhs != rhs)).any():
        return False
    # (ab)c = a(bc)
    ab = Mc[:, :, None]                                # [a, b, -]
    bc = Mc[None, :, :]                                # [-, b, c]
    k1 = known[:, :, None] & known[None, :, :]
    left = Mc[ab, np.arange(n)[None, None, :]]
    lk = known[ab, np.arange(n)[None, None, :]]
    right = Mc[np.arange(n)[:, None, None], bc]
    rk = known[np.arange(n)[:, None, None], bc]
    if (k1 & lk & rk & (left != right)).any():
        return False
    return True


def _structures(leq, J, Mt, bottom, top):
    n = leq.shape[0]
    M = np.full((n, n), -1, dtype=np.int64)
    M[top, :] = np.arange(n)
    M[:, top] = np.arange(n)
    M[bottom, :] = bottom
    M[:, bottom] = bottom
    cells = [(i, j) for i in range(n) for j in range(i, n)
             if M[i, j] < 0]
    out = []

    def go(k):
        if k == len(cells):
            out.append(M.copy())
            return
        i, j = cells[k]
        for v in np.flatnonzero(leq[:, Mt[i, j]]):         # a*b <= a ^ b
            M[i, j] = M[j, i] = v
            if _partial_ok(M, leq, J):
                go(k + 1)
        M[i, j] = M[j, i] = -1

    go(0)
    return out


def enumerate_mult_structures(skeleton: Lattice, name_prefix=None) -> list:
    """Every multiplication on ``skeleton`` satisfying the axioms, up to isomorphism."""
    leq = np.asarray(skeleton.leq, dtype=bool)
    J, Mt = skeleton.join_table, skeleton.meet_table
    seen = {}
    for table in _structures(leq, J, Mt, skeleton.bottom, skeleton.top):
        L = MultLattice(leq, J, Mt, skeleton.bottom, skeleton.top, skeleton.names,
                        skeleton.name, table)
        if not validate(L).valid:
            raise SearchError("backtracking produced a table that fails validation")
        seen.setdefault(canonical_form(L), L)
    prefix = name_prefix or skeleton.name
    out = []
    for k, code in enumerate(sorted(seen)):
        out.append(canonical_relabel(seen[code], name=f"{prefix}[mul={k}]"))
    return out


def enumerate_mult_structures_naive(skeleton: Lattice) -> list:
    """Oracle: try every commutative table with top as identity (n <= 4)."""
    n = skeleton.n
    if n > 4:
        raise SearchError("naive multiplication oracle is limited to n <= 4")
    top = skeleton.top
    cells = [(i, j) for i in range(n) for j in range(i, n) if top not in (i, j)]
    found = []
    for values in cartesian(range(n), repeat=len(cells)):
        M = np.empty((n, n), dtype=np.int64)
        M[top, :] = np.arange(n)
        M[:, top] = np.arange(n)
        for (i, j), v in zip(cells, values):
            M[i, j] = M[j, i] = v
        L = MultLattice(skeleton.leq, skeleton.join_table, skeleton.meet_table,
                        skeleton.bottom, top, skeleton.names, skeleton.name, M)
        if validate(L).valid and not any(isomorphic_bruteforce(L, F) for F in found):
            found.append(L)
    return found


@lru_cache(maxsize=None)
def _mult_lattices(n):
    out = []
    for skel in enumerate_lattices(n):
        out.extend(enumerate_mult_structures(skel))
    return tuple(out)


def enumerate_mult_lattices(n: int) -> list:
    """All multiplicative lattices of size n, grouped by order skeleton."""
    if not 1 <= n <= MAX_ENUM_N:
        raise SearchError(f"n must be in 1..{MAX_ENUM_N}")
    return list(_mult_lattices(n))


def export(max_n: int, directory) -> list:
    """Write every enumerated multiplicative lattice up to max_n, one file each."""
    from .fileformat import dump
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for n in range(1, max_n + 1):
        for k, L in enumerate(enumerate_mult_lattices(n)):
            p = directory / f"n{n}_{k:04d}.lat"
            dump(L, p)
            paths.append(p)
    return paths


# ------------------------------------------------------------------- mining

ELEMENT_EXTRAS = ("strongly_hollow", "completely_strongly_hollow", "is_top", "is_bottom",
                  "nonzero")
LATTICE_EXTRAS = ("le2_maximals",)


@dataclass(frozen=True)
class Query:
    scope: str
    hypothesis: tuple
    conclusion: str
    text: str = ""

    def __str__(self):
        return self.text or f"scope:{self.scope} hyp={','.join(self.hypothesis)} concl={self.conclusion}"


def _split_pred(name):
    neg = name.startswith("!")
    base = name[1:] if neg else name
    return neg, base


def _check_pred(name, scope):
    from .elements import ELEMENT_PREDICATES, LATTICE_PREDICATES
    _, base = _split_pred(name)
    if base.startswith("lattice."):
        if base[8:] not in LATTICE_PREDICATES + LATTICE_EXTRAS:
            raise SearchError(f"unknown lattice predicate {base!r}")
        return
    if base not in ELEMENT_PREDICATES + ELEMENT_EXTRAS:
        raise SearchError(f"unknown predicate {base!r}")
    if scope != "element":
        raise SearchError(f"element predicate {base!r} needs scope:element")


def parse_query(text: str) -> Query:
    """``scope:element hyp=strongly_hollow,cancellation concl=lattice.le2_maximals``"""
    scope, hyp, concl = "element", (), None
    for tok in text.split():
        if tok.startswith("scope:"):
            scope = tok[6:]
        elif tok.startswith("hyp="):
            hyp = tuple(p for p in tok[4:].split(",") if p)
        elif tok.startswith("concl="):
            concl = tok[6:]
        else:
            raise SearchError(f"unexpected query token {tok!r}")
    if scope not in ("element", "lattice"):
        raise SearchError(f"scope must be element or lattice, got {scope!r}")
    if not concl:
        raise SearchError("query needs concl=<predicate>")
    for p in hyp + (concl,):
        _check_pred(p, scope)
    return Query(scope, hyp, concl, text.strip())


def _lattice_value(L, base):
    from .elements import lattice_profile
    prof = lattice_profile(L)
    if base == "le2_maximals":
        return prof.maximal_count < 2
    return bool(prof.flags[base])


def _element_values(L, base):
    from .elements import element_masks
    from .hollow import csh_mask, strongly_hollow_mask
    ids = np.arange(L.n)
    if base == "strongly_hollow":
        return strongly_hollow_mask(L)
    if base == "completely_strongly_hollow":
        return csh_mask(L)
    if base == "is_top":
        return ids == L.top
    if base == "is_bottom":
        return ids == L.bottom
    if base == "nonzero":
        return ids != L.bottom
    return element_masks(L)[base]


def evaluate(query: Query, L: MultLattice):
    """First counterexample element (or -1 for the lattice) in L, else None."""
    def value(pred, x):
        neg, base = _split_pred(pred)
        if base.startswith("lattice."):
            v = _lattice_value(L, base[8:])
        else:
            v = bool(_element_values(L, base)[x])
        return v != neg

    points = L.elements if query.scope == "element" else [-1]
    for x in points:
        if all(value(h, x) for h in query.hypothesis) and not value(query.conclusion, x):
            return x
    return None


def _mine_chunk(args):
    text, n, start, stop = args
    q = parse_query(text)
    lats = enumerate_mult_lattices(n)
    for k in range(start, stop):
        x = evaluate(q, lats[k])
        if x is not None:
            return (n, k, x)
    return None


def worker_count(default=1) -> int:
    raw = os.environ.get("HOLLOWLAT_WORKERS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise SearchError(f"HOLLOWLAT_WORKERS must be an integer, got {raw!r}") from None
    return default


def mine(query, max_n: int, workers=None) -> CheckResult:
    """Search enumerated models up to max_n for a counterexample to ``query``.

    The reported witness is the first in (n, enumeration index, element)
    order, whatever the number of workers.
    """
    if isinstance(query, str):
        query = parse_query(query)
    if not MIN_MINE_N <= max_n <= MAX_MINE_N:
        raise SearchError(f"max_n must be in {MIN_MINE_N}..{MAX_MINE_N}")
    workers = worker_count() if workers is None else max(1, int(workers))
    jobs = []
    for n in range(MIN_MINE_N, max_n + 1):
        count = len(enumerate_mult_lattices(n))
        step = max(1, -(-count // (4 * workers)))
        jobs.extend((str(query), n, s, min(count, s + step)) for s in range(0, count, step))
    if workers == 1:
        hits = []
        for job in jobs:
            hit = _mine_chunk(job)
            if hit is not None:
                hits.append(hit)
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = [h for h in pool.map(_mine_chunk, jobs) if h is not None]
    if not hits:
        return CheckResult(str(query), f"enumerated(n<={max_n})", HOLDS,
                           detail=f"holds up to n={max_n}")
    n, k, x = min(hits)
    L = enumerate_mult_lattices(n)[k]
    witness = (("n", n), ("index", k)) + ((("element", int(x)),) if x >= 0 else ())
    detail = f"counterexample in {L.name}" + (f" at element {L.names[x]}" if x >= 0 else "")
    return CheckResult(str(query), L.name, VIOLATED, witness, detail)
