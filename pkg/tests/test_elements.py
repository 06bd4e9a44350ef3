"""Element and lattice predicates against direct quantifier oracles."""
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hollowlat.core import join, meet
from hollowlat.elements import (ELEMENT_PREDICATES, LATTICE_PREDICATES, element_masks,
                                element_profile, format_lattice_profile, lattice_profile)
from hollowlat.families import generate
from hollowlat.search import enumerate_mult_lattices

ENUMERATED = [L for n in range(1, 6) for L in enumerate_mult_lattices(n)]
CORPUSISH = ENUMERATED + [generate(s) for s in (
    "zmod(m=12)", "zmod(m=30)", "chain_power(k=3)", "b4()", "boolean(k=3)",
    "product(factors=[chain_power(k=2),zmod(m=6)])", "frame(poset=a<b;a<c)")]


def flags(L, a):
    return element_profile(L, a).flags


def test_b4_element_m(b4):
    f = flags(b4, "m")
    for k in ("prime", "maximal", "minimal", "idempotent", "complemented", "neutral", "principal"):
        assert f[k], k
    assert element_profile(b4, "m").complements == frozenset({b4.resolve("n")})


@pytest.mark.parametrize("L", CORPUSISH[:8] + CORPUSISH[-7:], ids=lambda L: L.name)
def test_top_not_prime_but_cancellation(L):
    f = flags(L, L.top)
    assert not f["prime"]
    assert f["cancellation"]


def test_z12_2Z(z12):
    f = flags(z12, "2Z")
    assert f["prime"] and f["maximal"]


def test_b4_lattice_profile(b4):
    p = lattice_profile(b4)
    f = p.flags
    assert f["gelfand"] and f["semi_simple"] and f["reduced"] and f["boolean"]
    assert not f["quasi_local"] and not f["chain"]
    assert p.jacobson == b4.bottom


def test_c3_lattice_profile(c3):
    f = lattice_profile(c3).flags
    for k in ("quasi_local", "chain", "zpi", "special_pel", "principal_element_lattice"):
        assert f[k], k


def test_one_element_lattice():
    (L,) = enumerate_mult_lattices(1)
    f = lattice_profile(L).flags
    for k in ("principally_generated", "principal_element_lattice", "prufer", "zpi", "pi_lattice"):
        assert f[k], k


def test_profile_text_is_sorted(z12):
    text = format_lattice_profile(z12, lattice_profile(z12))
    keys = [line.split()[0] for line in text.splitlines()]
    assert keys == sorted(keys)
    assert "spec {3Z,2Z}" in text and "gelfand true" in text


# ------------------------------------------------------------------ oracles

def _oracle(L):
    n, leq, J, M, mul = L.n, L.leq, L.join_table, L.meet_table, L.mul_table
    E = range(n)
    R = lambda a, b: join(L, [x for x in E if leq[mul[x, b], a]])
    out = {k: [] for k in ("prime", "maximal", "minimal", "neutral", "uniform", "meet_principal",
                           "join_principal", "weak_meet_principal", "weak_join_principal",
                           "cancellation", "strongly_irreducible", "completely_strongly_irreducible",
                           "primitive_idempotent")}
    for a in E:
        out["prime"].append(a != L.top and all(
            leq[x, a] or leq[y, a] for x in E for y in E if leq[mul[x, y], a]))
        above = [x for x in E if leq[a, x] and x != a]
        out["maximal"].append(above == [L.top])
        below = [x for x in E if leq[x, a] and x != a]
        out["minimal"].append(below == [L.bottom])
        out["neutral"].append(all(J[J[M[a, x], M[x, y]], M[y, a]] == M[M[J[a, x], J[x, y]], J[y, a]]
                                  for x in E for y in E))
        nzb = [x for x in E if leq[x, a] and x != L.bottom]
        out["uniform"].append(all(M[x, y] != L.bottom for x in nzb for y in nzb))
        e = a
        out["meet_principal"].append(all(M[x, mul[y, e]] == mul[M[R(x, e), y], e] for x in E for y in E))
        out["join_principal"].append(all(R(J[mul[x, e], y], e) == J[x, R(y, e)] for x in E for y in E))
        out["weak_meet_principal"].append(all(M[e, x] == mul[R(x, e), e] for x in E))
        out["weak_join_principal"].append(all(R(mul[x, e], e) == J[x, R(L.bottom, e)] for x in E))
        out["cancellation"].append(all(b == c for b in E for c in E if mul[a, b] == mul[a, c]))
        out["strongly_irreducible"].append(all(
            leq[x, a] or leq[y, a] for x in E for y in E if leq[M[x, y], a]))
        outside = [x for x in E if not leq[x, a]]
        out["completely_strongly_irreducible"].append(not outside or not leq[meet(L, outside), a])
        idem = [x for x in E if mul[x, x] == x and x != L.bottom]
        out["primitive_idempotent"].append(a in idem and not any(
            J[x, y] == a and mul[x, y] == L.bottom for x in idem for y in idem))
    return {k: np.array(v) for k, v in out.items()}


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CORPUSISH))
def test_element_masks_match_oracle(L):
    masks = element_masks(L)
    for k, want in _oracle(L).items():
        assert (masks[k] == want).all(), (L.name, k)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CORPUSISH))
def test_profile_invariants(L):
    m = element_masks(L)
    assert set(ELEMENT_PREDICATES) <= set(m)
    assert (m["principal"] == (m["meet_principal"] & m["join_principal"])).all()
    assert (m["weak_principal"] == (m["weak_meet_principal"] & m["weak_join_principal"])).all()
    assert not (m["principal"] & ~m["weak_principal"]).any()
    assert not (m["maximal"] & ~m["prime"]).any()
    p = lattice_profile(L)
    f = p.flags
    assert set(LATTICE_PREDICATES) <= set(f)
    assert not f["quasi_local"] or f["semi_local"]
    assert not f["chain"] or f["gelfand"]
    assert f["semi_simple"] == (p.jacobson == L.bottom)
    assert f["reduced"] == (p.nilradical == L.bottom)
    assert f["domain"] == (L.bottom in p.spec)
    assert f["prufer"] == f["principal_element_lattice"]
    assert p.jacobson == meet(L, p.max_set)
    assert p.socle == join(L, p.atoms)


def test_gelfand_separation_witnesses():
    for L in CORPUSISH:
        p = lattice_profile(L)
        if not p.flags["gelfand"]:
            continue
        for m1, m2 in product(sorted(p.max_set), repeat=2):
            if m1 == m2:
                continue
            assert any(L.mul_table[s, t] == L.bottom for s in L.elements for t in L.elements
                       if not L.leq[s, m1] and not L.leq[t, m2]), L.name
