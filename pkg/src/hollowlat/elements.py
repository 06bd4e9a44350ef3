"""Element-level and lattice-level predicates.

Every flag is evaluated directly from its defining quantifier over the
finite tables. Results for a lattice are computed once and cached.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import InvariantError, MultLattice, join, meet, nilpotents, primes

ELEMENT_PREDICATES = (
    "prime",
    "maximal",
    "minimal",
    "nilpotent",
    "idempotent",
    "complemented",
    "neutral",
    "uniform",
    "meet_principal",
    "join_principal",
    "principal",
    "weak_meet_principal",
    "weak_join_principal",
    "weak_principal",
    "cancellation",
    "strongly_irreducible",
    "completely_strongly_irreducible",
    "primitive_idempotent",
)

LATTICE_PREDICATES = (
    "quasi_local",
    "semi_local",
    "semi_simple",
    "reduced",
    "domain",
    "gelfand",
    "prufer",
    "principal_element_lattice",
    "principally_generated",
    "weak_meet_principally_generated",
    "weak_r_lattice",
    "chain",
    "noether",
    "zpi",
    "pi_lattice",
    "ufd",
    "special_pel",
    "i0",
    "boolean",
    "b4",
)

_masks_cache: "weakref.WeakKeyDictionary[MultLattice, dict]" = weakref.WeakKeyDictionary()
_profile_cache: "weakref.WeakKeyDictionary[MultLattice, LatticeProfile]" = weakref.WeakKeyDictionary()


def element_masks(L: MultLattice) -> dict:
    """Boolean arrays, one entry per element, for every element predicate."""
    cached = _masks_cache.get(L)
    if cached is not None:
        return cached
    n, bot, top = L.n, L.bottom, L.top
    leq, J, M, mul = L.leq, L.join_table, L.meet_table, L.mul_table
    ids = np.arange(n)
    strict = leq & ~np.eye(n, dtype=bool)
    m = {}

    prime_set = primes(L)
    m["prime"] = np.isin(ids, sorted(prime_set))
    # maximal: a < top with nothing strictly between
    between_top = strict & strict[:, top][None, :]
    m["maximal"] = (ids != top) & ~between_top.any(axis=1)
    between_bot = strict[bot][None, :] & strict.T
    m["minimal"] = (ids != bot) & ~between_bot.any(axis=1)
    m["nilpotent"] = np.isin(ids, sorted(nilpotents(L)))
    m["idempotent"] = mul[ids, ids] == ids
    comp = (J == top) & (M == bot)
    m["complemented"] = comp.any(axis=1)

    # (a^x) v (x^y) v (y^a) == (a v x) ^ (x v y) ^ (y v a), indexed [a, x, y]
    lhs = J[J[M[:, :, None], M[None, :, :]], M.T[:, None, :]]
    rhs = M[M[J[:, :, None], J[None, :, :]], J.T[:, None, :]]
    m["neutral"] = (lhs == rhs).all(axis=(1, 2))

    nz = ids != bot
    uni = np.ones(n, dtype=bool)
    for a in ids:
        below = np.flatnonzero(leq[:, a] & nz)
        uni[a] = bool((M[np.ix_(below, below)] != bot).all())
    m["uniform"] = uni

    mp, jp, wm, wj = kernels.principal_masks(leq, J, M, mul, L.residual_table, bot, top)
    m["meet_principal"] = np.asarray(mp, dtype=bool)
    m["join_principal"] = np.asarray(jp, dtype=bool)
    m["principal"] = m["meet_principal"] & m["join_principal"]
    m["weak_meet_principal"] = np.asarray(wm, dtype=bool)
    m["weak_join_principal"] = np.asarray(wj, dtype=bool)
    m["weak_principal"] = m["weak_meet_principal"] & m["weak_join_principal"]
    m["cancellation"] = np.array([len(set(mul[a].tolist())) == n for a in ids], dtype=bool)

    # x ^ y <= i  implies  x <= i or y <= i, indexed [x, y, i]
    below_meet = leq[M]
    escape = ~(leq[:, None, :] | leq[None, :, :])
    m["strongly_irreducible"] = ~(below_meet & escape).any(axis=(0, 1))
    csi = np.ones(n, dtype=bool)
    for i in ids:
        outside = np.flatnonzero(~leq[:, i])
        if len(outside):
            csi[i] = not leq[meet(L, outside), i]
    m["completely_strongly_irreducible"] = csi

    idem = np.flatnonzero(m["idempotent"] & nz)
    prim = np.zeros(n, dtype=bool)
    for e in idem:
        split = any(J[x, y] == e and mul[x, y] == bot for x in idem for y in idem)
        prim[e] = not split
    m["primitive_idempotent"] = prim

    for arr in m.values():
        arr.setflags(write=False)
    m["_complements"] = comp
    _masks_cache[L] = m
    return m


@dataclass(frozen=True)
class ElementProfile:
    element: int
    flags: dict
    complements: frozenset = field(default_factory=frozenset)

    def __getitem__(self, key):
        return self.flags[key]


def element_profile(L: MultLattice, a) -> ElementProfile:
    a = L.check_id(a)
    m = element_masks(L)
    flags = {k: bool(m[k][a]) for k in ELEMENT_PREDICATES}
    if flags["principal"] and not flags["weak_principal"]:
        raise InvariantError(f"{L.name}: element {L.names[a]} principal but not weak principal")
    if flags["maximal"] and not flags["prime"]:
        raise InvariantError(f"{L.name}: maximal element {L.names[a]} is not prime")
    comps = frozenset(int(c) for c in np.flatnonzero(m["_complements"][a]))
    return ElementProfile(a, flags, comps)


# ---------------------------------------------------------------- lattice level

@dataclass(frozen=True)
class LatticeProfile:
    flags: dict
    jacobson: int
    nilradical: int
    socle: int
    spec: frozenset
    max_set: frozenset
    minimal_primes: frozenset
    atoms: frozenset
    maximal_count: int

    def __getitem__(self, key):
        return self.flags[key]


def generated_by(L: MultLattice, gens) -> bool:
    """True when every element is the join of the generators below it."""
    gens = np.asarray(sorted(gens), dtype=np.int64)
    for x in L.elements:
        below = gens[L.leq[gens, x]] if len(gens) else gens
        if join(L, below) != x:
            return False
    return True


def prime_products(L: MultLattice, prime_ids) -> frozenset:
    """All products of elements of ``prime_ids``, the empty product (top) included."""
    reach = {L.top}
    frontier = [L.top]
    while frontier:
        nxt = []
        for x in frontier:
            for p in prime_ids:
                y = int(L.mul_table[x, p])
                if y not in reach:
                    reach.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(reach)


def is_b4(L: MultLattice) -> bool:
    """Four-element Boolean algebra {0, m, n, 1} with multiplication equal to meet."""
    return (L.n == 4 and not L.is_chain
            and bool((L.mul_table == L.meet_table).all()))


def _is_distributive(L) -> bool:
    J, M = L.join_table, L.meet_table
    lhs = M[:, J]                                     # a ^ (b v c)
    rhs = J[M[:, :, None], M[:, None, :]]             # (a^b) v (a^c)
    return bool((lhs == rhs).all())


def lattice_profile(L: MultLattice) -> LatticeProfile:
    cached = _profile_cache.get(L)
    if cached is not None:
        return cached
    m = element_masks(L)
    ids = np.arange(L.n)
    leq = L.leq
    spec = frozenset(int(x) for x in ids[m["prime"]])
    max_set = frozenset(int(x) for x in ids[m["maximal"]])
    atoms = frozenset(int(x) for x in ids[m["minimal"]])
    minimal_primes = frozenset(p for p in spec if not any(q != p and leq[q, p] for q in spec))
    jac = meet(L, max_set)
    nil = join(L, nilpotents(L))
    if nil != meet(L, spec):
        raise InvariantError(f"{L.name}: nilradical differs from meet of primes")
    socle = join(L, atoms)

    f = {}
    f["quasi_local"] = len(max_set) == 1
    f["semi_local"] = True
    f["semi_simple"] = jac == L.bottom
    f["reduced"] = nil == L.bottom
    f["domain"] = L.bottom in spec
    f["gelfand"] = all(sum(1 for mx in max_set if leq[p, mx]) == 1 for p in spec)
    # every compact element principal; every element is compact here
    f["prufer"] = bool(m["principal"].all())
    f["principal_element_lattice"] = bool(m["principal"].all())
    f["principally_generated"] = generated_by(L, ids[m["principal"]])
    f["weak_meet_principally_generated"] = generated_by(L, ids[m["weak_meet_principal"]])
    f["weak_r_lattice"] = f["principally_generated"]
    f["chain"] = L.is_chain
    f["noether"] = True
    prods = prime_products(L, sorted(spec))
    f["zpi"] = len(prods) == L.n
    f["pi_lattice"] = generated_by(L, prods)
    principal_ids = set(int(x) for x in ids[m["principal"]])
    principal_primes = sorted(spec & principal_ids)
    pp = prime_products(L, principal_primes)
    f["ufd"] = f["principally_generated"] and f["domain"] and principal_ids <= pp
    if f["principal_element_lattice"] and f["quasi_local"]:
        (mx,) = max_set
        powers = prime_products(L, [mx])
        f["special_pel"] = generated_by(L, powers)
    else:
        f["special_pel"] = False
    comp_nonzero = ids[m["complemented"] & (ids != L.bottom)]
    f["i0"] = all(
        leq[x, jac] or any(leq[c, x] for c in comp_nonzero) for x in L.elements)
    f["boolean"] = _is_distributive(L) and bool(m["complemented"].all())
    f["b4"] = is_b4(L)

    prof = LatticeProfile(f, jac, nil, socle, spec, max_set, minimal_primes, atoms, len(max_set))
    _check_profile(L, prof)
    _profile_cache[L] = prof
    return prof


def _check_profile(L, prof):
    f = prof.flags
    problems = []
    if f["quasi_local"] and not f["semi_local"]:
        problems.append("quasi_local without semi_local")
    if f["chain"] and not f["gelfand"]:
        problems.append("chain but not gelfand")
    if f["prufer"] != f["principal_element_lattice"]:
        problems.append("prufer differs from principal_element_lattice")
    if f["domain"] != (L.bottom in prof.spec):
        problems.append("domain flag mismatch")
    if not all(p in prof.spec for p in prof.max_set):
        problems.append("a maximal element is not prime")
    if problems:
        raise InvariantError(f"{L.name}: " + "; ".join(problems))


def format_element_profile(L: MultLattice, prof: ElementProfile) -> str:
    lines = [f"element {L.names[prof.element]}"]
    for k in sorted(prof.flags):
        lines.append(f"  {k} {str(prof.flags[k]).lower()}")
    comps = " ".join(sorted(L.names[c] for c in prof.complements))
    lines.append(f"  complements {{{comps}}}")
    return "\n".join(lines) + "\n"


def _fmt_set(L, ids):
    return "{" + ",".join(L.names[i] for i in sorted(ids)) + "}"


def format_lattice_profile(L: MultLattice, prof: LatticeProfile) -> str:
    """Deterministic key-sorted text, one predicate per line."""
    rows = {k: str(v).lower() for k, v in prof.flags.items()}
    rows.update({
        "jacobson": L.names[prof.jacobson],
        "nilradical": L.names[prof.nilradical],
        "socle": L.names[prof.socle],
        "spec": _fmt_set(L, prof.spec),
        "max_set": _fmt_set(L, prof.max_set),
        "maximal_count": str(prof.maximal_count),
        "minimal_primes": _fmt_set(L, prof.minimal_primes),
        "atoms": _fmt_set(L, prof.atoms),
    })
    return "".join(f"{k} {rows[k]}\n" for k in sorted(rows))
