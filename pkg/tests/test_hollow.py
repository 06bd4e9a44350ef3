from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hollowlat.core import InvariantError, MultLattice, join
from hollowlat.families import generate, load_manifest, default_manifest_path
from hollowlat.hollow import (csh_by_definition, csh_mask, csh_subset_oracle, format_hollow_report,
                              hollow_elements, hollow_profile, is_completely_strongly_hollow,
                              is_representable, is_strongly_hollow, kappa, l_a,
                              maximal_hollow_below, minimal_representations_bruteforce,
                              representations, strongly_hollow_mask, t_set)
from hollowlat.search import enumerate_mult_lattices

from conftest import chain_leq

ENUMERATED = [L for n in range(1, 6) for L in enumerate_mult_lattices(n)]


def names(L, ids):
    return {L.names[i] for i in ids}


def sh_pair_oracle(L, a):
    return all(L.leq[a, j] or L.leq[a, k] for j in L.elements for k in L.elements
               if L.leq[a, L.join_table[j, k]])


def test_b4(b4):
    assert names(b4, hollow_elements(b4)) == {"0", "m", "n"}
    assert not is_strongly_hollow(b4, "1")
    assert b4.names[kappa(b4, "m")] == "n"
    assert names(b4, t_set(b4, "m")) == {"0", "n"}
    assert is_completely_strongly_hollow(b4, "m")
    assert not is_completely_strongly_hollow(b4, "1")
    assert kappa(b4, "1") == b4.top
    assert names(b4, maximal_hollow_below(b4, "1")) == {"m", "n"}
    reps = representations(b4, "1")
    assert len(reps) == 1 and names(b4, reps[0].parts) == {"m", "n"} and reps[0].minimal


def test_bottom_is_hollow(small):
    assert is_strongly_hollow(small, small.bottom)
    assert is_completely_strongly_hollow(small, small.bottom)
    assert maximal_hollow_below(small, small.bottom) == {small.bottom}


def test_three_chain_all_hollow():
    L = MultLattice.from_leq(chain_leq(3), np.array([[0, 0, 0], [0, 0, 1], [0, 1, 2]]))
    assert hollow_elements(L) == {0, 1, 2}


@pytest.mark.parametrize("k", range(1, 7))
def test_chains(k):
    L = generate(f"chain_power(k={k})")
    assert hollow_elements(L) == set(L.elements)
    for x in L.elements:
        assert maximal_hollow_below(L, x) == {x}


def test_z12_two_algorithms_agree(z12):
    by_def = {a for a in z12.elements if sh_pair_oracle(z12, a)}
    by_kappa = {a for a in z12.elements if a == z12.bottom or not z12.leq[a, kappa(z12, a)]}
    assert by_def == by_kappa == hollow_elements(z12)
    assert names(z12, by_def) == {"0", "6Z", "4Z", "3Z"}


def test_csh_subset_oracle_limit():
    with pytest.raises(ValueError):
        csh_subset_oracle(generate("boolean(k=4)"))


def test_representation_of_csh_element(z12):
    for a in hollow_elements(z12) - {z12.bottom}:
        reps = representations(z12, a)
        assert [r.parts for r in reps] == [frozenset({a})]


def test_z12_representations(z12):
    assert names(z12, representations(z12, "2Z")[0].parts) == {"6Z", "4Z"}
    assert names(z12, representations(z12, "1")[0].parts) == {"4Z", "3Z"}


def m3_plus_top():
    """0 < a, b, c < u < 1 with every product of non-top elements zero.

    Top is join-irreducible, so the zero product distributes.
    """
    leq = np.zeros((6, 6), dtype=bool)
    order = {0: range(6), 1: (1, 4, 5), 2: (2, 4, 5), 3: (3, 4, 5), 4: (4, 5), 5: (5,)}
    for x, ups in order.items():
        leq[x, list(ups)] = True
    mul = np.zeros((6, 6), dtype=int)
    mul[5, :] = mul[:, 5] = np.arange(6)
    return MultLattice.from_leq(leq, mul, ["0", "a", "b", "c", "u", "1"], "m3-plus-top")


def test_unrepresentable():
    from hollowlat.core import validate
    L = m3_plus_top()
    assert validate(L).valid
    assert names(L, hollow_elements(L)) == {"0", "1"}
    assert not is_representable(L, "u")
    assert not is_representable(L, "a")
    assert representations(L, "u") == []
    assert "representation u none" in format_hollow_report(L)


def test_report_format(b4):
    text = format_hollow_report(b4)
    assert "element m strongly_hollow true kappa n L_a n" in text
    assert text.splitlines()[-1] == "representation 1 {m,n}"


# ------------------------------------------------------------ properties

@settings(max_examples=150, deadline=None)
@given(st.sampled_from(ENUMERATED))
def test_oracles_agree_enumerated(L):
    sh = strongly_hollow_mask(L)
    assert list(sh) == [sh_pair_oracle(L, a) for a in L.elements]
    assert (csh_mask(L) == sh).all()
    assert (csh_subset_oracle(L) == sh).all()
    assert (csh_by_definition(L) == sh).all()


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(ENUMERATED))
def test_profile_invariants(L):
    for a in L.elements:
        hp = hollow_profile(L, a)
        assert hp.kappa == join(L, hp.T_set)
        assert hp.L_a == L.residual_table[hp.kappa, a]
        assert hp.L_a == l_a(L, a)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ENUMERATED))
def test_representations_match_bruteforce(L):
    for x in L.elements:
        fast = {r.parts for r in representations(L, x)}
        slow = set(minimal_representations_bruteforce(L, x))
        assert fast == slow
        assert len(fast) <= 1
        for r in representations(L, x, minimal_only=False):
            assert join(L, r.parts) == x


def test_kappa_monotone_on_csh():
    for L in ENUMERATED:
        c = csh_mask(L)
        for a, b in product(np.flatnonzero(c), repeat=2):
            if L.leq[a, b]:
                assert L.leq[kappa(L, a), kappa(L, b)]


def test_subset_oracle_on_all_small_corpus():
    for spec in load_manifest(default_manifest_path()):
        L = generate(spec)
        if L.n <= 12:
            assert (csh_subset_oracle(L) == strongly_hollow_mask(L)).all(), L.name
