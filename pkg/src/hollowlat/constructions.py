"""Quotients, localizations and direct products, plus adjunction transfer."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from .core import LatticeError, MultLattice, validate
from .hollow import strongly_hollow_mask
from .results import HOLDS, UNMET, VIOLATED, CheckResult


class ConstructionError(LatticeError):
    """A construction's preconditions failed; ``witness`` shows where."""

    def __init__(self, msg, witness=()):
        super().__init__(msg)
        self.witness = tuple(witness)


class AdjunctionError(LatticeError):
    """The pair of maps handed to the transfer check is not an adjunction."""


@dataclass(frozen=True, eq=False)
class ElementMap:
    source: MultLattice
    target: MultLattice
    forward: tuple
    join_preserving: bool = False

    def __call__(self, a) -> int:
        return self.forward[self.source.check_id(a)]

    def is_monotone(self) -> bool:
        f = np.asarray(self.forward)
        S, T = self.source, self.target
        return bool((~S.leq | T.leq[np.ix_(f, f)]).all())

    def preserves_binary_joins(self) -> bool:
        f = np.asarray(self.forward)
        return bool((f[self.source.join_table] == self.target.join_table[np.ix_(f, f)]).all())


def _require_valid(L, what):
    rep = validate(L)
    if not rep.valid:
        raise ConstructionError(f"{what} failed validation: {rep.violations[0]}",
                                rep.violations[0].witness)
    return L


def quotient(L: MultLattice, i, name=None):
    """Q/i: the interval [i, top] with a o b = (a*b) v i.

    Returns ``(lattice, projection)`` where the projection sends a to a v i.
    """
    i = L.check_id(i)
    keep = np.flatnonzero(L.leq[i])                # ids >= i, ascending
    new_id = np.full(L.n, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    ix = np.ix_(keep, keep)
    mul = L.join_table[L.mul_table[ix], i]
    Q = MultLattice(
        L.leq[ix], new_id[L.join_table[ix]], new_id[L.meet_table[ix]],
        int(new_id[i]), int(new_id[L.top]),
        tuple(L.names[k] for k in keep),
        name or f"quotient(base={L.name},element={L.names[i]})",
        new_id[mul],
    )
    _require_valid(Q, "quotient")
    proj = tuple(int(new_id[L.join_table[a, i]]) for a in L.elements)
    return Q, ElementMap(L, Q, proj, join_preserving=True)


def inclusion(sub: MultLattice, L: MultLattice, ids) -> ElementMap:
    """Map of a sub-carrier back into ``L``; ``ids[k]`` is the L-id of element k."""
    return ElementMap(sub, L, tuple(int(x) for x in ids))


def quotient_with_inclusion(L: MultLattice, i):
    Q, proj = quotient(L, i)
    keep = np.flatnonzero(L.leq[L.check_id(i)])
    return Q, proj, inclusion(Q, L, keep)


def saturation(L: MultLattice, S) -> np.ndarray:
    """a_S = join{x | x*s <= a for some s in S}, for every a."""
    S = sorted({L.check_id(s) for s in S})
    mul, leq = L.mul_table, L.leq
    # ok[x, a]: x*s <= a for some s in S
    ok = np.zeros((L.n, L.n), dtype=bool)
    for s in S:
        ok |= leq[mul[:, s]]
    out = np.empty(L.n, dtype=np.int64)
    for a in L.elements:
        acc = L.bottom
        for x in np.flatnonzero(ok[:, a]):
            acc = L.join_table[acc, x]
        out[a] = acc
    return out


def is_multiplicatively_closed(L: MultLattice, S) -> bool:
    S = set(S)
    return L.top in S and all(int(L.mul_table[s, t]) in S for s in S for t in S)


def localize(L: MultLattice, S, name=None):
    """Q_S on the saturated elements, with a_S * b_S = (a*b)_S.

    Returns ``(lattice, saturation_map)``. The saturation map is checked to be
    extensive, monotone and idempotent, and the carrier meet-closed.
    """
    S = sorted({L.check_id(s) for s in S})
    if L.top not in S:
        raise ConstructionError("multiplicative set must contain top")
    for s in S:
        for t in S:
            if int(L.mul_table[s, t]) not in S:
                raise ConstructionError("set is not multiplicatively closed", (s, t))
    sat = saturation(L, S)
    leq = L.leq
    for a in L.elements:
        if not leq[a, sat[a]]:
            raise ConstructionError("saturation is not extensive", (a,))
        if sat[sat[a]] != sat[a]:
            raise ConstructionError("saturation is not idempotent", (a,))
    bad = np.argwhere(leq & ~leq[np.ix_(sat, sat)])
    if len(bad):
        raise ConstructionError("saturation is not monotone", tuple(int(v) for v in bad[0]))
    keep = np.flatnonzero(sat == np.arange(L.n))
    new_id = np.full(L.n, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    ix = np.ix_(keep, keep)
    meets = L.meet_table[ix]
    if (new_id[meets] < 0).any():
        a, b = np.argwhere(new_id[meets] < 0)[0]
        raise ConstructionError("saturated elements are not meet-closed",
                                (int(keep[a]), int(keep[b])))
    joins = sat[L.join_table[ix]]
    mul = sat[L.mul_table[ix]]
    label = name or f"localization(base={L.name},set={{{','.join(L.names[s] for s in S)}}})"
    Q = MultLattice(
        L.leq[ix], new_id[joins], new_id[meets],
        int(new_id[sat[L.bottom]]), int(new_id[L.top]),
        tuple(L.names[k] for k in keep), label, new_id[mul],
    )
    # joins must agree with the lub computed from the order alone
    from .core import lattice_tables
    jt, mt, _, _ = lattice_tables(Q.leq)
    if not (jt == Q.join_table).all() or not (mt == Q.meet_table).all():
        raise ConstructionError("inherited joins/meets disagree with the induced order")
    _require_valid(Q, "localization")
    return Q, ElementMap(L, Q, tuple(int(new_id[sat[a]]) for a in L.elements))


def localize_at_prime(L: MultLattice, q, name=None):
    """Localization at S = {s | s not <= q}; ``q`` must be prime."""
    from .core import primes
    q = L.check_id(q)
    if q not in primes(L):
        raise ConstructionError(f"{L.names[q]} is not prime", (q,))
    S = [s for s in L.elements if not L.leq[s, q]]
    return localize(L, S, name or f"localization(base={L.name},prime={L.names[q]})")


def product(*factors: MultLattice, name=None) -> MultLattice:
    """Direct product with componentwise order and operations.

    Element ids enumerate coordinate tuples in lexicographic order.
    """
    if not factors:
        raise ConstructionError("product needs at least one factor")
    shape = [f.n for f in factors]
    coords = list(cartesian(*[range(k) for k in shape]))
    N = len(coords)
    C = np.array(coords, dtype=np.int64).reshape(N, len(factors))
    leq = np.ones((N, N), dtype=bool)
    tables = {t: np.zeros((N, N, len(factors)), dtype=np.int64) for t in ("join", "meet", "mul")}
    for k, f in enumerate(factors):
        a, b = C[:, k][:, None], C[:, k][None, :]
        leq &= f.leq[a, b]
        tables["join"][:, :, k] = f.join_table[a, b]
        tables["meet"][:, :, k] = f.meet_table[a, b]
        tables["mul"][:, :, k] = f.mul_table[a, b]

    def flat(t):
        return np.ravel_multi_index(tuple(t[:, :, k] for k in range(len(factors))), shape)

    names = tuple("(" + ",".join(f.names[c] for f, c in zip(factors, cc)) + ")" for cc in coords)
    bottom = int(np.ravel_multi_index(tuple(f.bottom for f in factors), shape))
    top = int(np.ravel_multi_index(tuple(f.top for f in factors), shape))
    label = name or "product(factors=[" + ",".join(f.name for f in factors) + "])"
    P = MultLattice(leq, flat(tables["join"]), flat(tables["meet"]), bottom, top,
                    names, label, flat(tables["mul"]), tuple(factors))
    _require_valid(P, "product")
    return P


def check_adjunction_transfer(f: ElementMap, u: ElementMap, check="adjunction-transfer") -> CheckResult:
    """For an adjunction f -| u with u preserving binary joins, f keeps hollowness.

    Raises :class:`AdjunctionError` when (f, u) is not an adjunction. When u
    does not preserve binary joins the result is ``hypothesis-unmet``.
    """
    X, Y = f.source, f.target
    if u.source is not Y or u.target is not X:
        raise AdjunctionError("u must map the target of f back to its source")
    if not f.is_monotone() or not u.is_monotone():
        raise AdjunctionError("both maps must be order preserving")
    fx = np.asarray(f.forward)
    uy = np.asarray(u.forward)
    lhs = Y.leq[fx[:, None], np.arange(Y.n)[None, :]]    # f(x) <= y
    rhs = X.leq[np.arange(X.n)[:, None], uy[None, :]]    # x <= u(y)
    if not (lhs == rhs).all():
        x, y = np.argwhere(lhs != rhs)[0]
        raise AdjunctionError(f"adjunction law fails at x={int(x)}, y={int(y)}")
    name = f"{X.name}->{Y.name}"
    if not u.preserves_binary_joins():
        return CheckResult(check, name, UNMET, (), "u does not preserve binary joins")
    sh_x = strongly_hollow_mask(X)
    sh_y = strongly_hollow_mask(Y)
    for x in X.elements:
        if sh_x[x] and not sh_y[fx[x]]:
            return CheckResult(check, name, VIOLATED, (("x", int(x)), ("fx", int(fx[x]))))
    return CheckResult(check, name, HOLDS)
