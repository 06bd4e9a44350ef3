"""The registry of executable theorem checks.

A check has a lattice-level hypothesis, a domain of element tuples, a
per-tuple hypothesis (``applies``) and an assertion written as ``fails``:
it returns something truthy (a string is used as the detail) exactly when
the tuple is a counterexample. Biconditionals are split into one check per
direction, with ``(=>)`` meaning left-to-right as the statement is written.

Checks marked ``note`` test a literal reading that is known to differ from
what the accompanying argument derives; their failures are reported with the
``noted`` status instead of ``violated``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable

import numpy as np

from ..constructions import (AdjunctionError, ConstructionError,
                             check_adjunction_transfer, inclusion, saturation)
from ..core import join
from ..elements import lattice_profile
from ..hollow import csh_by_definition, strongly_hollow_mask, subset_joins
from .context import Context

REPRESENTATION_LIMIT = 20


@dataclass(frozen=True)
class Check:
    id: str
    statement: str
    keys: tuple
    hyp: Callable
    domain: Callable
    applies: Callable
    fails: Callable
    note: bool = False

    @property
    def family(self) -> str:
        return self.id.split("(", 1)[0]


REGISTRY: dict = {}


def _always(*_):
    return True


def _grid(keys):
    def domain(c):
        return cartesian(range(c.n), repeat=len(keys))
    return domain


def check(cid, statement, keys=(), hyp=None, domain=None, applies=None, note=False):
    def deco(fn):
        if cid in REGISTRY:
            raise ValueError(f"duplicate check id {cid}")
        REGISTRY[cid] = Check(cid, statement, tuple(keys), hyp or _always,
                              domain or _grid(keys), applies or _always, fn, note)
        return fn
    return deco


def resolve_checks(spec) -> list:
    """Map ``all``, exact ids or family names (``T5.5``) to registry entries."""
    if spec is None or spec == "all" or spec == ["all"]:
        return list(REGISTRY.values())
    if isinstance(spec, str):
        spec = [s for s in spec.split(",") if s]
    wanted = []
    for token in spec:
        token = token.strip()
        if token == "all":
            return list(REGISTRY.values())
        hits = [c for c in REGISTRY.values() if c.id == token or c.family == token]
        if not hits:
            raise KeyError(f"unknown check id {token!r}")
        wanted.extend(h for h in hits if h not in wanted)
    order = list(REGISTRY)
    return sorted(wanted, key=lambda c: order.index(c.id))


# ----------------------------------------------------------------- helpers

def _nz_sh(c, a):
    return c.nonzero(a) and c.sh[a]


def _nz_csh(c, a):
    return c.nonzero(a) and c.csh[a]


def _maximals_domain(c):
    return [(m,) for m in c.maximals]


def _q_sh(Q):
    return strongly_hollow_mask(Q)


def _count_maximal_below(c, a):
    return len(c.maximal_of(c.below_strict(a)))


def _missing_maximals(c, a):
    return [m for m in c.maximals if not c.leq[a, m]]


def _unique_missing(c, a):
    return len(_missing_maximals(c, a)) == 1


def _products_of(c, gens):
    """Products of one or more elements of ``gens``."""
    gens = [int(g) for g in gens]
    reach = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(c.mul[x, g])
                if y not in reach:
                    reach.add(y)
                    nxt.append(y)
        frontier = nxt
    return reach


def _csh_products(c):
    if not hasattr(c, "_csh_products"):
        c._csh_products = _products_of(c, np.flatnonzero(c.csh))
    return c._csh_products


def _representable(L, csh):
    cand = np.flatnonzero(csh & (np.arange(L.n) != L.bottom))
    return np.array([join(L, cand[L.leq[cand, x]]) == x for x in L.elements], dtype=bool)


def _loc_at(c, q):
    return c.localization(c.complement_set(q))


# ========================================================= hollowness basics

@check("T2.3(=>)", "SH(i), SH(j), SH(i v j)  =>  i, j comparable", ("i", "j"),
       applies=lambda c, i, j: c.sh[i] and c.sh[j] and c.sh[c.J[i, j]])
def _t23a(c, i, j):
    return not (c.leq[i, j] or c.leq[j, i])


@check("T2.3(<=)", "SH(i), SH(j), i, j comparable  =>  SH(i v j)", ("i", "j"),
       applies=lambda c, i, j: c.sh[i] and c.sh[j] and (c.leq[i, j] or c.leq[j, i]))
def _t23b(c, i, j):
    return not c.sh[c.J[i, j]]


@check("unique-max-below", "CSH(a), a != 0  =>  {j : j < a} has one maximal element", ("a",),
       applies=_nz_csh)
def _umb(c, a):
    k = _count_maximal_below(c, a)
    return k != 1 and f"{k} maximal elements strictly below"


@check("s-plus(1)", "SH(a), a != 0, a = r v s  =>  r, s comparable", ("a", "r", "s"),
       applies=lambda c, a, r, s: _nz_sh(c, a) and c.J[r, s] == a)
def _splus1(c, a, r, s):
    return not (c.leq[r, s] or c.leq[s, r])


@check("s-plus(2)", "SH(a), a != 0  =>  a <= r or a <= meet{s : a <= s v r}", ("a", "r"),
       applies=lambda c, a, r: _nz_sh(c, a))
def _splus2(c, a, r):
    if c.leq[a, r]:
        return False
    splus = c.meet_of([s for s in range(c.n) if c.leq[a, c.J[s, r]]])
    return not c.leq[a, splus]


@check("T2.8", "SH(a), a != 0  =>  a <= J or exactly one maximal m has a !<= m", ("a",),
       applies=_nz_sh)
def _t28(c, a):
    if c.leq[a, c.jac]:
        return False
    k = len(_missing_maximals(c, a))
    return k != 1 and f"{k} maximal elements not above a"


@check("P2.9", "SH(a), a cancellation  =>  at most one maximal element", ("a",),
       applies=lambda c, a: c.sh[a] and c.flag("cancellation", a))
def _p29(c, a):
    return c.prof.maximal_count > 1 and f"{c.prof.maximal_count} maximal elements"


@check("P2.7", "quasi-local, m weak principal  =>  SH(m)", ("m",),
       hyp=lambda c: c.flags["quasi_local"], domain=_maximals_domain,
       applies=lambda c, m: c.flag("weak_principal", m))
def _p27(c, m):
    return not c.sh[m]


@check("P2.11(=>)", "1 compact, CSH(1)  =>  quasi-local",
       hyp=lambda c: c.nontrivial and c.csh[c.top])
def _p211a(c):
    return not c.flags["quasi_local"]


@check("P2.11(<=)", "1 compact, quasi-local  =>  CSH(1)",
       hyp=lambda c: c.nontrivial and c.flags["quasi_local"])
def _p211b(c):
    return not c.csh[c.top]


def _greatest_not_above(c, a):
    return c.greatest([k for k in range(c.n) if not c.leq[a, k]])


@check("T2.7(=>)", "a != 0, SH(a)  =>  T(a) has a greatest element", ("a",), applies=_nz_sh)
def _t27a(c, a):
    return _greatest_not_above(c, a) is None


@check("T2.7(<=)", "a != 0, T(a) has a greatest element  =>  SH(a)", ("a",),
       applies=lambda c, a: c.nonzero(a) and _greatest_not_above(c, a) is not None)
def _t27b(c, a):
    return not c.sh[a]


@check("T2.7(kappa)", "a != 0, CSH(a)  =>  greatest element of T(a) is kappa(a)", ("a",),
       applies=_nz_csh)
def _t27c(c, a):
    return _greatest_not_above(c, a) != c.kappa[a]


@check("kappa-criterion(=>)", "a != 0, CSH(a)  =>  a !<= kappa(a)", ("a",), applies=_nz_csh)
def _kc_a(c, a):
    return c.leq[a, c.kappa[a]]


@check("kappa-criterion(<=)", "a != 0, a !<= kappa(a)  =>  CSH(a)", ("a",),
       applies=lambda c, a: c.nonzero(a) and not c.leq[a, c.kappa[a]])
def _kc_b(c, a):
    return not c.csh[a]


@check("fg-coincidence(=>)", "CSH(a)  =>  SH(a)", ("a",), applies=lambda c, a: c.csh[a])
def _fg_a(c, a):
    return not c.sh[a]


@check("fg-coincidence(<=)", "SH(a)  =>  CSH(a)", ("a",), applies=lambda c, a: c.sh[a])
def _fg_b(c, a):
    return not c.csh[a]


@check("kappa-monotone", "CSH(a), CSH(b), a <= b  =>  kappa(a) <= kappa(b)", ("a", "b"),
       applies=lambda c, a, b: c.csh[a] and c.csh[b] and c.leq[a, b])
def _kmono(c, a, b):
    return not c.leq[c.kappa[a], c.kappa[b]]


@check("max-hollow-exists", "{k <= x : SH(k)} has a maximal element", ("x",))
def _mhe(c, x):
    return not c.maximal_of([k for k in range(c.n) if c.sh[k] and c.leq[k, x]])


@check("T2.26", "a != 0, CSH(a)  =>  kappa(a) completely strongly irreducible", ("a",),
       applies=_nz_csh)
def _t226(c, a):
    return not c.flag("completely_strongly_irreducible", c.kappa[a])


# ================================================ quotients and adjunctions

@check("quotient-SH", "SH(a)  =>  SH(a v i) in Q/i", ("i", "a"), applies=lambda c, i, a: c.sh[a])
def _qsh(c, i, a):
    Q, proj, _ = c.quotient(i)
    return not _q_sh(Q)[proj(a)]


@check("quotient-CSH", "CSH(a)  =>  CSH(a v i) in Q/i", ("i", "a"), applies=lambda c, i, a: c.csh[a])
def _qcsh(c, i, a):
    Q, proj, _ = c.quotient(i)
    return not csh_by_definition(Q)[proj(a)]


@check("quotient-residuals", "a, b >= i  =>  (a:b) in Q/i equals (a:b) in Q", ("i", "a", "b"),
       applies=lambda c, i, a, b: c.leq[i, a] and c.leq[i, b])
def _qres(c, i, a, b):
    Q, proj, keep = c.quotient(i)
    return int(keep[Q.residual_table[proj(a), proj(b)]]) != int(c.res[a, b])


def _quotient_pair(c, i):
    Q, proj, keep = c.quotient(i)
    return proj, inclusion(Q, c.L, keep)


@check("adjunction-transfer(quotient)", "f -| u, u preserves v  =>  f keeps SH (f = projection to Q/i)",
       ("i",), applies=lambda c, i: _quotient_pair(c, i)[1].preserves_binary_joins())
def _adj_q(c, i):
    f, u = _quotient_pair(c, i)
    try:
        res = check_adjunction_transfer(f, u)
    except AdjunctionError as exc:
        return f"not an adjunction: {exc}"
    return res.violated and res.witness_text()


def _is_prime(c, q):
    return c.flag("prime", q)


@check("localization-construct", "q prime  =>  Q_q is well defined on saturated elements", ("q",),
       applies=_is_prime)
def _loc_ok(c, q):
    loc = _loc_at(c, q)
    return isinstance(loc, ConstructionError) and str(loc)


def _loc_pair(c, q):
    loc = _loc_at(c, q)
    if isinstance(loc, ConstructionError):
        return None
    Q, sat = loc
    # the carrier of Q_q is the set of fixed points of saturation, ascending
    points = np.flatnonzero(saturation(c.L, c.complement_set(q)) == np.arange(c.n))
    return sat, inclusion(Q, c.L, points)


@check("adjunction-transfer(localization)", "f -| u, u preserves v  =>  f keeps SH (f = saturation)",
       ("q",), applies=lambda c, q: _is_prime(c, q) and _loc_pair(c, q) is not None
       and _loc_pair(c, q)[1].preserves_binary_joins())
def _adj_l(c, q):
    f, u = _loc_pair(c, q)
    try:
        res = check_adjunction_transfer(f, u)
    except AdjunctionError as exc:
        return f"not an adjunction: {exc}"
    return res.violated and res.witness_text()


# ============================================================= L_a and kappa

def _jp(c, a):
    return c.flag("join_principal", a)


def _is_max(c, x):
    return c.flag("maximal", x)


@check("L_a-maximal(thm)", "SH(a), a join principal  =>  L_a = 1 or L_a maximal", ("a",),
       applies=lambda c, a: c.sh[a] and _jp(c, a))
def _la_thm(c, a):
    la = c.l_a[a]
    return la != c.top and not _is_max(c, la)


@check("L_a-maximal(cor)", "a != 0, CSH(a), a join principal  =>  L_a maximal", ("a",),
       applies=lambda c, a: _nz_csh(c, a) and _jp(c, a))
def _la_cor(c, a):
    return not _is_max(c, c.l_a[a])


def _t213_applies(c, a):
    if not (c.sh[a] and _jp(c, a)):
        return False
    S = c.complement_set(c.l_a[a])
    return c.is_closed(S)


@check("T2.13", "SH(a), a join principal, S = {s !<= L_a} closed  =>  a_S SH in Q_S", ("a",),
       hyp=lambda c: c.nontrivial, applies=_t213_applies)
def _t213(c, a):
    loc = c.localization(c.complement_set(c.l_a[a]))
    if isinstance(loc, ConstructionError):
        return f"localization failed: {loc}"
    Q, sat = loc
    return not _q_sh(Q)[sat(a)]


def _ann(c, a):
    return int(c.res[c.bot, a])


@check("T2.14", "1 compact, a != 0, SH(a), a join principal  =>  Q/(0:a) quasi-local with maximal L_a",
       ("a",), hyp=lambda c: c.nontrivial, applies=lambda c, a: _nz_sh(c, a) and _jp(c, a))
def _t214(c, a):
    Q, _, keep = c.quotient(_ann(c, a))
    qp = lattice_profile(Q)
    if not qp.flags["quasi_local"]:
        return f"Q/(0:a) has {qp.maximal_count} maximal elements"
    (mx,) = qp.max_set
    return int(keep[mx]) != int(c.l_a[a]) and "unique maximal element differs from L_a"


def _t215_condition(c, a):
    Q, _, _ = c.quotient(_ann(c, a))
    if not lattice_profile(Q).flags["quasi_local"]:
        return False
    for m in c.maximals:
        loc = _loc_at(c, m)
        if isinstance(loc, ConstructionError):
            return False
        Qm, sat = loc
        am = sat(a)
        if am != Qm.bottom and not _q_sh(Qm)[am]:
            return False
    return True


@check("T2.15(=>)", "a != 0 join principal, SH(a)  =>  Q/(0:a) quasi-local and each a_m is 0 or SH",
       ("a",), hyp=lambda c: c.nontrivial, applies=lambda c, a: _nz_sh(c, a) and _jp(c, a))
def _t215a(c, a):
    return not _t215_condition(c, a)


@check("T2.15(<=)", "a != 0 join principal, Q/(0:a) quasi-local and each a_m 0 or SH  =>  SH(a)",
       ("a",), hyp=lambda c: c.nontrivial,
       applies=lambda c, a: c.nonzero(a) and _jp(c, a) and _t215_condition(c, a))
def _t215b(c, a):
    return not c.sh[a]


# ============================================== neutral and complemented

def _nc(c, a):
    return c.flag("neutral", a) and c.flag("complemented", a)


@check("T2.18(=>)", "a neutral, complemented, one maximal element below a  =>  SH(a)", ("a",),
       applies=lambda c, a: _nc(c, a) and _count_maximal_below(c, a) == 1)
def _t218a(c, a):
    return not c.sh[a]


@check("T2.18(<=)", "a neutral, complemented, SH(a)  =>  at most one maximal below a (exactly one if a != 0)",
       ("a",), applies=lambda c, a: _nc(c, a) and c.sh[a])
def _t218b(c, a):
    k = _count_maximal_below(c, a)
    return (k > 1 or (c.nonzero(a) and k != 1)) and f"{k} maximal elements below"


def _below_jac(c, a):
    return all(c.leq[x, c.jac] for x in c.below_strict(a))


@check("T2.20(=>)", "1 compact, a != 0 neutral complemented, SH(a)  =>  x < a implies x <= J", ("a",),
       hyp=lambda c: c.nontrivial, applies=lambda c, a: c.nonzero(a) and _nc(c, a) and c.sh[a])
def _t220a(c, a):
    return not _below_jac(c, a)


@check("T2.20(<=)", "1 compact, a != 0 neutral complemented, x < a implies x <= J  =>  SH(a)", ("a",),
       hyp=lambda c: c.nontrivial,
       applies=lambda c, a: c.nonzero(a) and _nc(c, a) and _below_jac(c, a))
def _t220b(c, a):
    return not c.sh[a]


# =========================================================== five-way cycle

def _t225_conds(c, a):
    k = int(c.kappa[a])
    sq = c.square(a)
    return {
        1: c.flag("prime", k),
        2: not c.leq[sq, k],
        3: sq == a,
        4: not c.leq[a, c.jac],
        5: _is_max(c, k) and k == int(c.l_a[a]),
    }


def _t225_base(c, a):
    return c.nonzero(a) and c.flag("weak_join_principal", a) and c.sh[a]


def _make_t225(i, j):
    @check(f"T2.25({i}=>{j})", f"a != 0 weak join principal SH: condition {i}  =>  condition {j}",
           ("a",), hyp=lambda c: c.nontrivial,
           applies=lambda c, a: _t225_base(c, a) and _t225_conds(c, a)[i])
    def _f(c, a):
        return not _t225_conds(c, a)[j]
    return _f


for _i, _j in ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1)):
    _make_t225(_i, _j)


# ========================================================= quasi-local part

def _only_max(c):
    return c.maximals[0]


def _ql_weak_r(c):
    return c.weak_r and c.flags["quasi_local"]


def _prop1_applies(c, i, *_):
    m = _only_max(c)
    ri = int(c.res[i, m])
    return c.flag("strongly_irreducible", i) and ri != i and c.leq[i, ri]


@check("Prop1(1)", "quasi-local weak r, i strongly irreducible, i < (i:m)  =>  (i:m) principal", ("i",),
       hyp=_ql_weak_r, applies=_prop1_applies)
def _prop1_1(c, i):
    return not c.flag("principal", c.res[i, _only_max(c)])


@check("Prop1(2)", "same hypotheses  =>  i = (i:m) m", ("i",), hyp=_ql_weak_r, applies=_prop1_applies)
def _prop1_2(c, i):
    m = _only_max(c)
    return int(c.mul[c.res[i, m], m]) != i


@check("Prop1(2-stated)", "same hypotheses  =>  i = (i:m), read literally", ("i",),
       hyp=_ql_weak_r, applies=_prop1_applies, note=True)
def _prop1_2s(c, i):
    return int(c.res[i, _only_max(c)]) != i and "i < (i:m) is assumed, so i = (i:m) cannot hold"


@check("Prop1(3)", "same hypotheses  =>  j <= i or (i:m) <= j", ("i", "j"), hyp=_ql_weak_r,
       applies=_prop1_applies)
def _prop1_3(c, i, j):
    return not (c.leq[j, i] or c.leq[c.res[i, _only_max(c)], j])


@check("Lemma2", "quasi-local, a != 0 CSH principal  =>  kappa(a) < (kappa(a):m)", ("a",),
       hyp=lambda c: c.nontrivial and c.flags["quasi_local"],
       applies=lambda c, a: _nz_csh(c, a) and c.flag("principal", a))
def _lemma2(c, a):
    k = int(c.kappa[a])
    return int(c.res[k, _only_max(c)]) == k


@check("Prop3(comparable)", "quasi-local principally generated, a != 0 CSH  =>  a comparable to all",
       ("a",), hyp=_ql_weak_r, applies=_nz_csh)
def _prop3a(c, a):
    return not c.comparable_to_all(a)


@check("Prop3(residual)", "quasi-local principally generated, a != 0 CSH  =>  a = (kappa(a):m)",
       ("a",), hyp=_ql_weak_r, applies=_nz_csh)
def _prop3b(c, a):
    return int(c.res[c.kappa[a], _only_max(c)]) != a


def _thm4_cond2(c):
    return all(bool(c.csh[a]) == c.comparable_to_all(a)
               for a in range(c.n) if c.flag("principal", a))


@check("Thm4(1=>2)", "weak r, quasi-local  =>  principal a: CSH(a) iff a comparable to all", ("a",),
       hyp=_ql_weak_r, applies=lambda c, a: c.flag("principal", a))
def _thm4a(c, a):
    return bool(c.csh[a]) != c.comparable_to_all(a)


@check("Thm4(2=>1)", "weak r, principal a: CSH(a) iff comparable to all  =>  quasi-local",
       hyp=lambda c: c.weak_r and _thm4_cond2(c))
def _thm4b(c):
    return not c.flags["quasi_local"]


# ==================================================== semi-simple, Gelfand

def _semisimple(c):
    return c.flags["semi_simple"]


@check("P3.1(=>)", "semi-simple, a != 0, SH(a)  =>  a minimal", ("a",), hyp=_semisimple,
       applies=_nz_sh)
def _p31a(c, a):
    return not c.flag("minimal", a)


@check("P3.1(<=)", "semi-simple, a != 0 minimal  =>  SH(a)", ("a",), hyp=_semisimple,
       applies=lambda c, a: c.nonzero(a) and c.flag("minimal", a))
def _p31b(c, a):
    return not c.sh[a]


@check("L3.2", "semi-simple, e != 0, exactly one maximal m with e !<= m  =>  e minimal and complemented",
       ("e",), hyp=lambda c: c.nontrivial and _semisimple(c),
       applies=lambda c, e: c.nonzero(e) and _unique_missing(c, e))
def _l32(c, e):
    return not (c.flag("minimal", e) and c.flag("complemented", e))


@check("L3.3", "at least two maximal elements, m maximal and SH  =>  m idempotent", ("m",),
       hyp=lambda c: c.prof.maximal_count >= 2, domain=_maximals_domain,
       applies=lambda c, m: c.sh[m])
def _l33(c, m):
    return c.square(m) != m


def _distinct_max_pairs(c):
    return [(x, y) for x in c.maximals for y in c.maximals if x != y]


@check("gelfand-separation", "Gelfand, m1 != m2 maximal  =>  s !<= m1, t !<= m2 with st = 0",
       ("m1", "m2"), hyp=lambda c: c.nontrivial and c.flags["gelfand"], domain=_distinct_max_pairs)
def _gsep(c, m1, m2):
    S = np.flatnonzero(~c.leq[:, m1])
    T = np.flatnonzero(~c.leq[:, m2])
    return not (c.mul[np.ix_(S, T)] == c.bot).any()


def _prod_nonzero(c, a):
    below = [x for x in range(c.n) if c.nonzero(x) and c.leq[x, a]]
    return all(c.mul[x, y] != c.bot for x in below for y in below)


def _t34_conds(c, a):
    return {1: bool(c.sh[a]), 2: _prod_nonzero(c, a), 3: c.flag("minimal", a)}


def _gelfand_ss(c):
    return c.nontrivial and c.flags["gelfand"] and _semisimple(c)


def _make_t34(i, j):
    @check(f"T3.4({i}=>{j})", f"Gelfand semi-simple, a != 0: condition {i}  =>  condition {j}",
           ("a",), hyp=_gelfand_ss, applies=lambda c, a: c.nonzero(a) and _t34_conds(c, a)[i])
    def _f(c, a):
        return not _t34_conds(c, a)[j]
    return _f


for _i, _j in ((1, 2), (2, 3), (3, 1)):
    _make_t34(_i, _j)


def _c36_hyp(c):
    return c.nontrivial and _semisimple(c) and c.flags["weak_meet_principally_generated"]


@check("C3.6(=>)", "semi-simple weak meet principally generated, a != 0: xy != 0 below a  =>  a uniform",
       ("a",), hyp=_c36_hyp, applies=lambda c, a: c.nonzero(a) and _prod_nonzero(c, a))
def _c36a(c, a):
    return not c.flag("uniform", a)


@check("C3.6(<=)", "semi-simple weak meet principally generated, a != 0 uniform  =>  xy != 0 below a",
       ("a",), hyp=_c36_hyp, applies=lambda c, a: c.nonzero(a) and c.flag("uniform", a))
def _c36b(c, a):
    return not _prod_nonzero(c, a)


def _pi_hyp(c):
    return c.nontrivial and c.flags["i0"]


@check("primitive-idempotent(=>)", "I0, e != 0 complemented neutral, CSH(e)  =>  e primitive", ("e",),
       hyp=_pi_hyp, applies=lambda c, e: c.nonzero(e) and _nc(c, e) and c.csh[e])
def _pia(c, e):
    return not c.flag("primitive_idempotent", e)


@check("primitive-idempotent(<=)", "I0, e != 0 complemented neutral primitive  =>  CSH(e)", ("e",),
       hyp=_pi_hyp,
       applies=lambda c, e: c.nonzero(e) and _nc(c, e) and c.flag("primitive_idempotent", e))
def _pib(c, e):
    return not c.csh[e]


def _t38_right(c):
    P0 = sorted(c.prof.minimal_primes)
    for p in P0:
        others = c.meet_of([q for q in P0 if q != p])
        if c.leq[others, p]:
            continue
        Q, _, _ = c.quotient(p)
        qf = lattice_profile(Q).flags
        if qf["quasi_local"] and qf["domain"]:
            return True
    return False


def _t38_left(c):
    return any(_nz_csh(c, a) for a in range(c.n))


def _t38_hyp(c):
    return c.nontrivial and c.flags["reduced"] and c.flags["prufer"]


@check("T3.8(=>)", "reduced Prufer, some a != 0 CSH  =>  minimal prime p as stated exists",
       hyp=lambda c: _t38_hyp(c) and _t38_left(c))
def _t38a(c):
    return not _t38_right(c)


@check("T3.8(<=)", "reduced Prufer, minimal prime p as stated exists  =>  some a != 0 CSH",
       hyp=lambda c: _t38_hyp(c) and _t38_right(c))
def _t38b(c):
    return not _t38_left(c)


# ================================================================ products

def _has_factors(c):
    return c.L.factors is not None and len(c.L.factors) >= 2


def _factor_data(c):
    if not hasattr(c, "_factor_data"):
        data = []
        for F in c.L.factors:
            kap = np.array([join(F, np.flatnonzero(~F.leq[x])) for x in F.elements])
            data.append((F, strongly_hollow_mask(F), kap))
        c._factor_data = data
    return c._factor_data


def _one_sided(c, a):
    """Index i with a = <0,..,a_i,..,0> and a_i SH in its factor, else None."""
    coords = c.L.coords(a)
    data = _factor_data(c)
    for i, (F, sh, _) in enumerate(data):
        if all(coords[j] == data[j][0].bottom for j in range(len(data)) if j != i) and sh[coords[i]]:
            return i
    return None


def _support(c, a):
    coords = c.L.coords(a)
    data = _factor_data(c)
    nz = [i for i in range(len(data)) if coords[i] != data[i][0].bottom]
    return nz[0] if len(nz) == 1 else None


def _t42_expected(c, a, fill_top, use_residual=False):
    i = _support(c, a)
    coords = c.L.coords(a)
    out = []
    for j, (F, _, kap) in enumerate(_factor_data(c)):
        if j == i:
            k = int(kap[coords[i]])
            out.append(int(F.residual_table[k, coords[i]]) if use_residual else k)
        else:
            out.append(F.top if fill_top else F.bottom)
    return c.L.from_coords(out)


@check("T4.2(=>)", "SH(a) in a product  =>  a = <0,..,a_i,..,0> with SH(a_i)", ("a",),
       hyp=_has_factors, applies=lambda c, a: c.sh[a])
def _t42a(c, a):
    return _one_sided(c, a) is None


@check("T4.2(<=)", "a = <0,..,a_i,..,0> with SH(a_i)  =>  SH(a)", ("a",), hyp=_has_factors,
       applies=lambda c, a: _one_sided(c, a) is not None)
def _t42b(c, a):
    return not c.sh[a]


@check("T4.2(kappa)", "a = <0,..,a_i,..,0> != 0 SH  =>  kappa(a) = <1,..,kappa(a_i),..,1>", ("a",),
       hyp=_has_factors, applies=lambda c, a: _nz_sh(c, a) and _support(c, a) is not None)
def _t42k(c, a):
    return int(c.kappa[a]) != _t42_expected(c, a, fill_top=True)


@check("T4.2(kappa-stated)", "a = <0,..,a_i,..,0> != 0 SH  =>  kappa(a) = <0,..,kappa(a_i),..,0>",
       ("a",), hyp=_has_factors, applies=lambda c, a: _nz_sh(c, a) and _support(c, a) is not None,
       note=True)
def _t42ks(c, a):
    return int(c.kappa[a]) != _t42_expected(c, a, fill_top=False) and "kappa has 1 off the support"


@check("T4.2(L_a)", "a = <0,..,a_i,..,0> != 0 SH  =>  L_a = <1,..,(kappa(a_i):a_i),..,1>", ("a",),
       hyp=_has_factors, applies=lambda c, a: _nz_sh(c, a) and _support(c, a) is not None)
def _t42l(c, a):
    return int(c.l_a[a]) != _t42_expected(c, a, fill_top=True, use_residual=True)


def _all_representable(L):
    return bool(_representable(L, csh_by_definition(L)).all())


@check("product-representability(=>)", "every element of the product representable  =>  same in each factor",
       hyp=lambda c: _has_factors(c) and _all_representable(c.L))
def _prep_a(c):
    bad = [F.name for F in c.L.factors if not _all_representable(F)]
    return bad and f"factor {bad[0]} not representable"


@check("product-representability(<=)", "every factor representable  =>  every product element representable",
       hyp=lambda c: _has_factors(c) and all(_all_representable(F) for F in c.L.factors))
def _prep_b(c):
    return not _all_representable(c.L)


def _csh_candidates(c, x):
    return [int(k) for k in np.flatnonzero(c.csh & c.leq[:, x]) if k != c.bot]


def _minimal_reps(c, x):
    cand = _csh_candidates(c, x)
    joins = subset_joins(c.L, cand)
    reps = []
    for mask in np.flatnonzero(joins == x):
        parts = [cand[b] for b in range(len(cand)) if (int(mask) >> b) & 1]
        if all(not c.leq[p, c.join_of(parts[:k] + parts[k + 1:])] for k, p in enumerate(parts)):
            reps.append(frozenset(parts))
    return reps


@check("representation-uniqueness", "two minimal CSH representations of x are equal", ("x",),
       applies=lambda c, x: len(_csh_candidates(c, x)) <= REPRESENTATION_LIMIT)
def _runiq(c, x):
    reps = set(_minimal_reps(c, x))
    return len(reps) > 1 and f"{len(reps)} distinct minimal representations"


@check("L4.5", "1 compact, every element representable  =>  #maximal <= size of representation of 1",
       hyp=lambda c: c.nontrivial and _all_representable(c.L))
def _l45(c):
    parts = c.maximal_of(_csh_candidates(c, c.top))
    return c.prof.maximal_count > len(parts) and (
        f"{c.prof.maximal_count} maximal elements, representation of size {len(parts)}")


@check("L4.6", "every non-zero element representable  =>  atoms are CSH and form the representation of Soc",
       hyp=lambda c: _all_representable(c.L))
def _l46(c):
    atoms = sorted(c.prof.atoms)
    bad = [a for a in atoms if not c.csh[a]]
    if bad:
        return f"atom {c.L.names[bad[0]]} is not CSH"
    parts = set(c.maximal_of(_csh_candidates(c, c.prof.socle)))
    return parts != set(atoms) and "representation of the socle differs from the atoms"


# ======================================================= chains and r-lattices

@check("L5.1", "weak r, quasi-local principal element lattice  =>  chain",
       hyp=lambda c: c.weak_r and c.flags["quasi_local"] and c.flags["principal_element_lattice"])
def _l51(c):
    return not c.flags["chain"]


@check("L5.2", "weak Noether chain  =>  every element CSH", ("a",),
       hyp=lambda c: c.weak_r and c.flags["chain"])
def _l52(c, a):
    return not c.csh[a]


def _all_products(c):
    return len(_csh_products(c)) == c.n


@check("P5.3(=>)", "weak r, every element a finite product of CSH elements  =>  chain",
       hyp=lambda c: c.weak_r and _all_products(c))
def _p53a(c):
    return not c.flags["chain"]


@check("P5.3(<=)", "weak r, chain  =>  every element a finite product of CSH elements", ("a",),
       hyp=lambda c: c.weak_r and c.flags["chain"])
def _p53b(c, a):
    return a not in _csh_products(c)


def _all_nonzero(c, mask):
    return all(mask[a] for a in range(c.n) if c.nonzero(a))


@check("P5.4(=>)", "weak r, every non-zero element SH  =>  chain",
       hyp=lambda c: c.weak_r and _all_nonzero(c, c.sh))
def _p54a(c):
    return not c.flags["chain"]


@check("P5.4(<=)", "weak r, chain  =>  every non-zero element SH", ("a",),
       hyp=lambda c: c.weak_r and c.flags["chain"], applies=lambda c, a: c.nonzero(a))
def _p54b(c, a):
    return not c.sh[a]


@check("P5.4(csh=>)", "weak r, every non-zero element CSH  =>  weak Noether chain",
       hyp=lambda c: c.weak_r and _all_nonzero(c, c.csh))
def _p54c(c):
    return not c.flags["chain"]


@check("P5.4(csh<=)", "weak r, weak Noether chain  =>  every non-zero element CSH", ("a",),
       hyp=lambda c: c.weak_r and c.flags["chain"], applies=lambda c, a: c.nonzero(a))
def _p54d(c, a):
    return not c.csh[a]


def _t55(c, k):
    f = c.flags
    if k == 1:
        return all(c.csh[p] for p in c.prof.spec if c.nonzero(p))
    if k == 2:
        return f["b4"] or (f["chain"] and (f["ufd"] or f["special_pel"]))
    if k == 3:
        return _all_nonzero(c, c.csh)
    if k == 4:
        prods = _csh_products(c)
        return all(a in prods for a in range(c.n) if c.nonzero(a))
    raise ValueError(k)


@check("T5.5(1=>2)", "weak r: non-zero primes CSH  =>  B4, or weak Noether chain that is UFD or special PEL",
       hyp=lambda c: c.weak_r and _t55(c, 1))
def _t55_12(c):
    return not _t55(c, 2)


@check("T5.5(2=>3)", "weak r: B4, or weak Noether chain that is UFD or special PEL  =>  non-zero elements CSH",
       ("a",), hyp=lambda c: c.weak_r and _t55(c, 2), applies=lambda c, a: c.nonzero(a))
def _t55_23(c, a):
    return not c.csh[a]


@check("T5.5(3=>1)", "weak r: non-zero elements CSH  =>  non-zero primes CSH", ("p",),
       hyp=lambda c: c.weak_r and _t55(c, 3),
       applies=lambda c, p: c.nonzero(p) and c.flag("prime", p))
def _t55_31(c, p):
    return not c.csh[p]


@check("T5.5(3=>4)", "weak r: non-zero elements CSH  =>  non-zero elements are products of CSH elements",
       ("a",), hyp=lambda c: c.weak_r and _t55(c, 3), applies=lambda c, a: c.nonzero(a))
def _t55_34(c, a):
    return a not in _csh_products(c)


@check("T5.5(4=>3)", "weak r: non-zero elements are products of CSH elements  =>  non-zero elements CSH",
       ("a",), hyp=lambda c: c.weak_r and _t55(c, 4), applies=lambda c, a: c.nonzero(a))
def _t55_43(c, a):
    return not c.csh[a]


def _p56_2(c):
    f = c.flags
    return f["b4"] or (f["quasi_local"] and c.flag("principal", _only_max(c)))


@check("P5.6(1=>2)", "weak r: non-zero maximal elements CSH  =>  B4, or quasi-local with principal maximal",
       hyp=lambda c: c.weak_r and all(c.csh[m] for m in c.maximals if c.nonzero(m)))
def _p56a(c):
    return not _p56_2(c)


@check("P5.6(2=>1)", "weak r: B4, or quasi-local with principal maximal  =>  non-zero maximal elements CSH",
       ("m",), hyp=lambda c: c.weak_r and _p56_2(c), domain=_maximals_domain,
       applies=lambda c, m: c.nonzero(m))
def _p56b(c, m):
    return not c.csh[m]


# ------------------------------------------------------------- evaluation

def evaluate_check(chk: Check, ctx: Context):
    """(status, witness tuple, detail) for one check on one lattice."""
    from ..results import HOLDS, NOTED, UNMET, VIOLATED
    if not chk.hyp(ctx):
        return UNMET, (), ""
    seen = 0
    for inst in chk.domain(ctx):
        inst = tuple(int(v) for v in inst)
        if not chk.applies(ctx, *inst):
            continue
        seen += 1
        out = chk.fails(ctx, *inst)
        if out:
            detail = out if isinstance(out, str) else ""
            return (NOTED if chk.note else VIOLATED), tuple(zip(chk.keys, inst)), detail
    if seen == 0:
        return UNMET, (), ""
    return HOLDS, (), ""


def reproduces(chk: Check, ctx: Context, inst) -> bool:
    """True when ``inst`` is a counterexample to ``chk`` on the context's lattice."""
    inst = tuple(int(v) for v in inst)
    return bool(chk.hyp(ctx) and chk.applies(ctx, *inst) and chk.fails(ctx, *inst))

