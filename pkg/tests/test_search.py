import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hollowlat.core import MultLattice, validate
from hollowlat.families import default_manifest_path, generate, load_manifest
from hollowlat.fileformat import load
from hollowlat.results import HOLDS, VIOLATED
from hollowlat.search import (SearchError, canonical_form, canonical_relabel, enumerate_lattices,
                              enumerate_lattices_naive, enumerate_mult_lattices,
                              enumerate_mult_structures, enumerate_mult_structures_naive,
                              evaluate, export, isomorphic_bruteforce, mine, parse_query)

from conftest import chain_leq

# lattices on n unlabelled elements (OEIS A006966)
LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53}


@pytest.mark.parametrize("n", range(1, 6))
def test_lattice_counts_against_naive(n):
    fast = enumerate_lattices(n)
    slow = enumerate_lattices_naive(n)
    assert len(fast) == len(slow) == LATTICE_COUNTS[n]
    assert {canonical_form(L) for L in fast} == {canonical_form(L) for L in slow}


@pytest.mark.parametrize("n", [6, 7])
def test_lattice_counts_larger(n):
    assert len(enumerate_lattices(n)) == LATTICE_COUNTS[n]


def test_enumeration_cap():
    with pytest.raises(SearchError):
        enumerate_lattices(8)


def test_three_chain_structures():
    (C3,) = enumerate_lattices(3)
    got = enumerate_mult_structures(C3)
    assert len(got) == 2 == len(enumerate_mult_structures_naive(C3))
    kinds = set()
    for L in got:
        (a,) = set(L.elements) - {L.bottom, L.top}
        kinds.add("zero" if L.mul_table[a, a] == L.bottom else "idem" if L.mul_table[a, a] == a else "?")
    assert kinds == {"zero", "idem"}


def test_two_chain_single_structure():
    (C2,) = enumerate_lattices(2)
    assert len(enumerate_mult_structures(C2)) == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_structure_counts_against_naive(n):
    for skel in enumerate_lattices(n):
        fast = {canonical_form(L) for L in enumerate_mult_structures(skel)}
        slow = {canonical_form(L) for L in enumerate_mult_structures_naive(skel)}
        assert fast == slow, skel.name


def test_b4_order_has_meet_structure(b4):
    diamond = [s for s in enumerate_lattices(4) if not s.leq.all(axis=None) and
               (s.leq | s.leq.T).sum() < 16]
    (skel,) = diamond
    forms = {canonical_form(L) for L in enumerate_mult_structures(skel)}
    assert canonical_form(b4) in forms


def test_mult_lattices_valid():
    for n in range(1, 6):
        for L in enumerate_mult_lattices(n):
            assert validate(L).valid


def test_canonical_form_vs_bruteforce():
    pool = [L for n in range(1, 6) for L in enumerate_mult_lattices(n)]
    pool += [generate(s) for s in ("zmod(m=12)", "chain_power(k=5)", "boolean(k=2)",
                                   "frame(poset=a<b;a<c)")]
    pool = [L for L in pool if L.n <= 6]
    rng = np.random.default_rng(3)
    for A in pool[::3]:
        for B in pool[::5]:
            if A.n == B.n:
                assert (canonical_form(A) == canonical_form(B)) == isomorphic_bruteforce(A, B)
        shuffled = A.relabel(rng.permutation(A.n))
        assert isomorphic_bruteforce(A, shuffled)
        assert canonical_form(shuffled) == canonical_form(A)


def test_order_only_canonical_form_differs_from_mult():
    C3 = enumerate_lattices(3)[0]
    a, b = enumerate_mult_structures(C3)
    assert canonical_form(a) != canonical_form(b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([str(s) for s in load_manifest(default_manifest_path())
                        if generate(s).n <= 16]),
       st.integers(0, 2**32 - 1))
def test_canonical_form_relabel_invariant(spec, seed):
    L = generate(spec)
    perm = np.random.default_rng(seed).permutation(L.n)
    R = L.relabel(perm)
    assert canonical_form(R) == canonical_form(L)
    assert canonical_form(canonical_relabel(R)) == canonical_form(L)


def test_export(tmp_path):
    paths = export(4, tmp_path)
    assert len(paths) == sum(len(enumerate_mult_lattices(n)) for n in range(1, 5))
    assert canonical_form(load(paths[-1])) == canonical_form(enumerate_mult_lattices(4)[-1])


# --------------------------------------------------------------------- mining

def test_mine_p29():
    q = "scope:element hyp=strongly_hollow,cancellation concl=lattice.le2_maximals"
    res = mine(q, 5, workers=1)
    assert res.status == HOLDS and res.detail == "holds up to n=5"


def test_mine_p211():
    q = "scope:element hyp=is_top,strongly_hollow concl=lattice.quasi_local"
    assert mine(q, 5, workers=1).status == HOLDS


def test_mine_b4():
    q = "scope:element hyp=lattice.b4,nonzero concl=completely_strongly_hollow"
    res = mine(q, 4, workers=1)
    assert res.status == VIOLATED
    w = res.witness_dict()
    L = enumerate_mult_lattices(w["n"])[w["index"]]
    assert L.names[w["element"]] == "1" and w["element"] == L.top
    assert evaluate(parse_query(q), L) == L.top


def test_mine_worker_independent():
    q = "scope:element hyp=strongly_hollow concl=idempotent"
    a, b = mine(q, 5, workers=1), mine(q, 5, workers=2)
    assert a == b and a.status == VIOLATED


@pytest.mark.parametrize("bad", ["concl=foo", "scope:lattice concl=prime", "hyp=x concl=prime",
                                 "scope:galaxy concl=prime", "hyp=prime", "wat concl=prime"])
def test_bad_queries(bad):
    with pytest.raises(SearchError):
        parse_query(bad)


def test_mine_range():
    with pytest.raises(SearchError):
        mine("concl=prime", 7)


def test_chain_helper_is_lattice():
    MultLattice.from_leq(chain_leq(3), np.array([[0, 0, 0], [0, 1, 1], [0, 1, 2]]))
