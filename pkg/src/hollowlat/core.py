"""Finite multiplicative lattices: representation, axioms and basic operations.

A lattice is stored as dense tables indexed by element id: the order matrix
``leq``, the binary ``join_table`` / ``meet_table`` and, for multiplicative
lattices, the ``mul_table``. Every operation addresses elements by integer id.

Every element of a finite lattice is compact, so compactness hypotheses are
vacuous here (see :func:`is_compact`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class LatticeError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(LatticeError, ValueError):
    """Tables have the wrong shape or contain out-of-range ids."""


class NotALatticeError(StructureError):
    """The order has a pair of elements without a lub or glb."""


class InvariantError(LatticeError, AssertionError):
    """A property that must hold for every valid lattice was found to fail."""


def _frozen(arr, dtype):
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Lattice:
    """A finite bounded lattice given by its order and binary operation tables."""

    leq: np.ndarray
    join_table: np.ndarray
    meet_table: np.ndarray
    bottom: int
    top: int
    names: tuple = ()
    name: str = "lattice"

    def __post_init__(self):
        leq = np.asarray(self.leq)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] < 1:
            raise StructureError(f"leq must be a non-empty square matrix, got shape {leq.shape}")
        n = leq.shape[0]
        object.__setattr__(self, "leq", _frozen(leq, bool))
        for attr in ("join_table", "meet_table"):
            object.__setattr__(self, attr, _check_table(getattr(self, attr), n, attr))
        for attr in ("bottom", "top"):
            v = getattr(self, attr)
            if not (0 <= int(v) < n):
                raise StructureError(f"{attr} id {v} out of range [0, {n})")
            object.__setattr__(self, attr, int(v))
        names = tuple(str(s) for s in self.names) if self.names else tuple(str(i) for i in range(n))
        if len(names) != n:
            raise StructureError(f"expected {n} names, got {len(names)}")
        if len(set(names)) != n:
            raise StructureError("element names must be distinct")
        if any(not s or any(ch.isspace() for ch in s) for s in names):
            raise StructureError("element names must be non-empty and contain no whitespace")
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    @property
    def elements(self) -> range:
        return range(self.n)

    def check_id(self, a) -> int:
        if isinstance(a, str):
            return self.resolve(a)
        if isinstance(a, (bool, np.bool_)) or not isinstance(a, (int, np.integer)):
            raise StructureError(f"element id must be an integer, got {a!r}")
        if not (0 <= a < self.n):
            raise StructureError(f"element id {a} out of range [0, {self.n})")
        return int(a)

    def resolve(self, token) -> int:
        """Map a name or an integer id (as int or string) to an element id.

        Names take precedence over numeric ids when a token is both.
        """
        if isinstance(token, str):
            if token in self.names:
                return self.names.index(token)
            try:
                token = int(token)
            except ValueError:
                raise StructureError(f"unknown element {token!r}") from None
        return self.check_id(token)

    def le(self, a, b) -> bool:
        return bool(self.leq[a, b])

    def lt(self, a, b) -> bool:
        return a != b and bool(self.leq[a, b])

    def join(self, *ids) -> int:
        return join(self, ids)

    def meet(self, *ids) -> int:
        return meet(self, ids)

    @cached_property
    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    @cached_property
    def covers(self) -> list:
        """Sorted list of (i, j) with j covering i."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        # j covers i iff i < j and no k with i < k < j
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        cov = strict & ~between
        return [(int(i), int(j)) for i, j in np.argwhere(cov)]

    @classmethod
    def from_leq(cls, leq, names=(), name="lattice"):
        leq = np.asarray(leq, dtype=bool)
        join_t, meet_t, bottom, top = lattice_tables(leq)
        return cls(leq, join_t, meet_t, bottom, top, tuple(names), name)


def _check_table(table, n, label):
    t = np.asarray(table)
    if t.shape != (n, n):
        raise StructureError(f"{label} must have shape ({n}, {n}), got {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        if t.size and not np.all(np.equal(np.mod(t, 1), 0)):
            raise StructureError(f"{label} must contain integer ids")
    t = t.astype(np.int64)
    if t.size and (t.min() < 0 or t.max() >= n):
        raise StructureError(f"{label} contains ids outside [0, {n})")
    return _frozen(t, np.int64)


def lattice_tables(leq):
    """Compute (join, meet, bottom, top) from a partial order matrix.

    Raises :class:`NotALatticeError` when some pair has no lub or glb, and
    :class:`StructureError` when ``leq`` is not a partial order.
    """
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    if leq.shape != (n, n) or n < 1:
        raise StructureError("leq must be a non-empty square matrix")
    if not leq.diagonal().all():
        raise StructureError("order is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise StructureError("order is not antisymmetric")
    li = leq.astype(np.int64)
    if ((li @ li > 0) & ~leq).any():
        raise StructureError("order is not transitive")
    join_t = np.empty((n, n), dtype=np.int64)
    meet_t = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            ub = np.flatnonzero(leq[a] & leq[b])
            least = ub[leq[np.ix_(ub, ub)].all(axis=1)]
            if len(least) != 1:
                raise NotALatticeError(f"elements {a} and {b} have no least upper bound")
            lb = np.flatnonzero(leq[:, a] & leq[:, b])
            greatest = lb[leq[np.ix_(lb, lb)].all(axis=0)]
            if len(greatest) != 1:
                raise NotALatticeError(f"elements {a} and {b} have no greatest lower bound")
            join_t[a, b] = join_t[b, a] = least[0]
            meet_t[a, b] = meet_t[b, a] = greatest[0]
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    return join_t, meet_t, int(bottoms[0]), int(tops[0])


@dataclass(frozen=True, eq=False)
class MultLattice(Lattice):
    """A finite lattice with a commutative, associative multiplication.

    ``factors`` is set by :func:`hollowlat.constructions.product` and holds the
    factor lattices; element ids are then the row-major (lexicographic) index
    of the coordinate tuple.
    """

    mul_table: np.ndarray = None
    factors: tuple = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        if self.mul_table is None:
            raise StructureError("mul_table is required")
        object.__setattr__(self, "mul_table", _check_table(self.mul_table, self.n, "mul_table"))

    def mul(self, a, b) -> int:
        return int(self.mul_table[a, b])

    def power(self, a, k) -> int:
        acc = self.top
        for _ in range(k):
            acc = int(self.mul_table[acc, a])
        return acc

    def product_of(self, ids) -> int:
        return reduce(lambda x, y: int(self.mul_table[x, y]), ids, self.top)

    @cached_property
    def residual_table(self) -> np.ndarray:
        """``residual_table[a, b] == (a:b)``."""
        t = kernels.residual_table(self.leq, self.mul_table, self.join_table, self.bottom)
        t = np.asarray(t, dtype=np.int64)
        t.setflags(write=False)
        return t

    def residual(self, a, b) -> int:
        return residual(self, a, b)

    def coords(self, a) -> tuple:
        """Coordinates of element ``a`` in a product lattice."""
        if self.factors is None:
            raise LatticeError(f"{self.name} is not a product lattice")
        return tuple(int(v) for v in np.unravel_index(a, [f.n for f in self.factors]))

    def from_coords(self, coords) -> int:
        return int(np.ravel_multi_index(tuple(coords), [f.n for f in self.factors]))

    @classmethod
    def from_leq(cls, leq, mul, names=(), name="lattice", factors=None):
        leq = np.asarray(leq, dtype=bool)
        join_t, meet_t, bottom, top = lattice_tables(leq)
        return cls(leq, join_t, meet_t, bottom, top, tuple(names), name, mul, factors)

    def relabel(self, perm, name=None) -> "MultLattice":
        """Return the isomorphic copy in which old element ``perm[i]`` gets id ``i``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        ix = np.ix_(perm, perm)
        return MultLattice(
            self.leq[ix], inv[self.join_table[ix]], inv[self.meet_table[ix]],
            int(inv[self.bottom]), int(inv[self.top]),
            tuple(self.names[p] for p in perm), name or self.name,
            inv[self.mul_table[ix]],
        )


# ---------------------------------------------------------------- operations

def join(L: Lattice, ids: Iterable[int]) -> int:
    """Least upper bound of a set of elements; the empty join is bottom."""
    acc = L.bottom
    for x in ids:
        acc = int(L.join_table[acc, L.check_id(x)])
    return acc


def meet(L: Lattice, ids: Iterable[int]) -> int:
    """Greatest lower bound of a set of elements; the empty meet is top."""
    acc = L.top
    for x in ids:
        acc = int(L.meet_table[acc, L.check_id(x)])
    return acc


def residual(L: MultLattice, a, b) -> int:
    """(a:b), the join of every x with x*b <= a."""
    a, b = L.check_id(a), L.check_id(b)
    return join(L, np.flatnonzero(L.leq[L.mul_table[:, b], a]))


def is_compact(L: Lattice, a) -> bool:
    """Always true: a finite lattice has only finitely many elements to join."""
    L.check_id(a)
    return True


def nilpotents(L: MultLattice) -> frozenset:
    """Elements x with x^k = bottom for some 1 <= k <= n."""
    out = set()
    for x in L.elements:
        p = x
        for _ in range(L.n):
            if p == L.bottom:
                out.add(x)
                break
            p = int(L.mul_table[p, x])
    return frozenset(out)


def primes(L: MultLattice) -> frozenset:
    """Prime elements: p < top and x*y <= p implies x <= p or y <= p."""
    leq = L.leq
    below_prod = leq[L.mul_table]  # [x, y, p]
    escape = ~(leq[:, None, :] | leq[None, :, :])
    bad = (below_prod & escape).any(axis=(0, 1))
    return frozenset(int(p) for p in L.elements if p != L.top and not bad[p])


def nilradical(L: MultLattice) -> int:
    """Join of the nilpotent elements, cross-checked against the meet of primes."""
    rad = join(L, nilpotents(L))
    by_primes = meet(L, primes(L))
    if rad != by_primes:
        raise InvariantError(
            f"{L.name}: join of nilpotents {L.names[rad]} != meet of primes {L.names[by_primes]}")
    return rad


# ------------------------------------------------------------------- axioms

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    violations: tuple

    def names(self) -> list:
        return [v.axiom for v in self.violations]

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join(f"{v.axiom} {' '.join(map(str, v.witness))}" for v in self.violations)


AXIOMS = (
    "leq_reflexive",
    "leq_antisymmetric",
    "leq_transitive",
    "bottom_least",
    "top_greatest",
    "join_lub",
    "meet_glb",
    "mul_commutative",
    "mul_associative",
    "mul_identity",
    "mul_distributive",
    "mul_zero",
    "mul_exceeds_meet",
)


def axiom_holds_at(L: MultLattice, axiom: str, w: Sequence[int]) -> bool:
    """Evaluate a single axiom instance; used to replay witnesses."""
    leq, J, M, mul = L.leq, L.join_table, L.meet_table, L.mul_table
    if axiom == "leq_reflexive":
        return bool(leq[w[0], w[0]])
    if axiom == "leq_antisymmetric":
        a, b = w
        return a == b or not (leq[a, b] and leq[b, a])
    if axiom == "leq_transitive":
        a, b, c = w
        return not (leq[a, b] and leq[b, c]) or bool(leq[a, c])
    if axiom == "bottom_least":
        return bool(leq[L.bottom, w[0]])
    if axiom == "top_greatest":
        return bool(leq[w[0], L.top])
    if axiom == "join_lub":
        a, b = w
        j = J[a, b]
        ub = leq[a] & leq[b]
        return bool(ub[j] and leq[j, ub].all())
    if axiom == "meet_glb":
        a, b = w
        m = M[a, b]
        lb = leq[:, a] & leq[:, b]
        return bool(lb[m] and leq[lb, m].all())
    if axiom == "mul_commutative":
        a, b = w
        return mul[a, b] == mul[b, a]
    if axiom == "mul_associative":
        a, b, c = w
        return mul[mul[a, b], c] == mul[a, mul[b, c]]
    if axiom == "mul_identity":
        return mul[w[0], L.top] == w[0]
    if axiom == "mul_distributive":
        a, b, c = w
        return mul[a, J[b, c]] == J[mul[a, b], mul[a, c]]
    if axiom == "mul_zero":
        return mul[w[0], L.bottom] == L.bottom
    if axiom == "mul_exceeds_meet":
        a, b = w
        return bool(leq[mul[a, b], M[a, b]])
    raise KeyError(f"unknown axiom {axiom!r}")


def _first(mask):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def validate(L: MultLattice) -> AxiomReport:
    """Check every multiplicative-lattice axiom, returning one witness per failure.

    Distribution over arbitrary joins is checked as binary distributivity plus
    ``a*bottom == bottom`` (the empty join). ``mul <= meet`` is derived from the
    other axioms and checked as well.
    """
    n = L.n
    leq, J, M, mul = L.leq, L.join_table, L.meet_table, L.mul_table
    found = []

    def note(axiom, w):
        if w is not None:
            found.append(Violation(axiom, tuple(int(v) for v in w)))

    idx = np.arange(n)
    note("leq_reflexive", _first(~leq.diagonal()))
    note("leq_antisymmetric", _first(leq & leq.T & (idx[:, None] != idx[None, :])))
    note("leq_transitive", _first(leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :]))
    note("bottom_least", _first(~leq[L.bottom]))
    note("top_greatest", _first(~leq[:, L.top]))
    for axiom in ("join_lub", "meet_glb"):
        w = next(((a, b) for a in range(n) for b in range(n)
                  if not axiom_holds_at(L, axiom, (a, b))), None)
        note(axiom, w)
    note("mul_commutative", _first(mul != mul.T))
    note("mul_associative", kernels.first_assoc_violation(mul))
    note("mul_identity", _first(mul[:, L.top] != idx))
    note("mul_distributive", kernels.first_distrib_violation(mul, J))
    note("mul_zero", _first(mul[:, L.bottom] != L.bottom))
    note("mul_exceeds_meet", _first(~leq[mul, M]))
    return AxiomReport(not found, tuple(found))


def make_mult_lattice(leq, mul, names=(), name="lattice", factors=None) -> MultLattice:
    return MultLattice.from_leq(leq, mul, names, name, factors)
