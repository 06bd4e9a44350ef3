import pytest
from hypothesis import given, settings, strategies as st

from hollowlat.fileformat import LoadError, dump, dumps, load, loads
from hollowlat.families import generate
from hollowlat.search import canonical_form, enumerate_mult_lattices

from conftest import SMALL_SPECS

Z2_TEXT = """lattice z2
n 2
bottom 0
top 1
cover 0 1
mul 0 0 0
mul 0 1 0
mul 1 1 1
"""


@pytest.mark.parametrize("spec", SMALL_SPECS)
def test_round_trip_byte_identical(spec, tmp_path):
    L = generate(spec)
    text = dumps(L)
    back = loads(text)
    assert dumps(back) == text
    assert canonical_form(back) == canonical_form(L)
    assert back.names == L.names
    p = tmp_path / "x.lat"
    dump(L, p)
    assert p.read_text() == text
    assert dumps(load(p)) == text


def test_minimal_file_without_names():
    L = loads(Z2_TEXT)
    assert L.n == 2 and L.names == ("0", "1")
    assert dumps(L) == Z2_TEXT


def test_comments_and_blank_lines():
    text = "# header\n\n" + Z2_TEXT.replace("cover 0 1", "cover 0 1   # only cover")
    assert dumps(loads(text)) == Z2_TEXT


@pytest.mark.parametrize("mutate, fragment", [
    (lambda t: t.replace("mul 0 1 0\n", ""), "missing mul"),
    (lambda t: t + "mul 0 1 0\n", "duplicate mul"),
    (lambda t: t + "cover 1 0\n", "cycle"),
    (lambda t: t.replace("top 1", "top 0"), "bottom/top"),
    (lambda t: t.replace("cover 0 1", "cover 0 5"), "out of range"),
    (lambda t: t + "frobnicate 1\n", "unknown directive"),
    (lambda t: t.replace("lattice z2\n", ""), "missing 'lattice'"),
    (lambda t: t.replace("mul 1 1 1", "mul 1 1 x"), "integers"),
])
def test_load_errors(mutate, fragment):
    with pytest.raises(LoadError, match=fragment):
        loads(mutate(Z2_TEXT))


def test_non_lattice_order():
    text = """lattice v
n 4
bottom 0
top 3
cover 0 1
cover 0 2
mul 0 0 0
mul 0 1 0
mul 0 2 0
mul 0 3 0
mul 1 1 1
mul 1 2 0
mul 1 3 1
mul 2 2 2
mul 2 3 2
mul 3 3 3
"""
    with pytest.raises(LoadError):
        loads(text)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([L for n in range(1, 6) for L in enumerate_mult_lattices(n)]))
def test_round_trip_enumerated(L):
    text = dumps(L)
    assert dumps(loads(text)) == text
