import numpy as np
import pytest

from hollowlat.core import MultLattice
from hollowlat.families import generate


def chain_leq(n):
    ids = np.arange(n)
    return ids[:, None] <= ids[None, :]


def raw_lattice(leq, mul, names=(), name="fixture"):
    """Build without validating, so broken fixtures can be handed to validate()."""
    return MultLattice.from_leq(leq, np.asarray(mul), names, name)


# M3: 0, three atoms, 1
M3_LEQ = np.array([[1, 1, 1, 1, 1],
                   [0, 1, 0, 0, 1],
                   [0, 0, 1, 0, 1],
                   [0, 0, 0, 1, 1],
                   [0, 0, 0, 0, 1]], dtype=bool)


def m3_with_meet():
    """Non-distributive, so mul = meet breaks distributivity and nothing else."""
    L = raw_lattice(M3_LEQ, np.zeros((5, 5), dtype=int))
    return raw_lattice(M3_LEQ, L.meet_table, ["0", "a", "b", "c", "1"], "m3-meet")


def chain4_nonassoc():
    # 0 < x < y < 1 ; x*x = 0, x*y = x, y*y = x  gives (x*y)*y = x but x*(y*y) = 0
    mul = np.array([[0, 0, 0, 0],
                    [0, 0, 1, 1],
                    [0, 1, 1, 2],
                    [0, 1, 2, 3]])
    return raw_lattice(chain_leq(4), mul, ["0", "x", "y", "1"], "chain4-nonassoc")


def chain3_exceeds():
    # 0 < a < 1 with a*a = 1
    mul = np.array([[0, 0, 0],
                    [0, 2, 1],
                    [0, 1, 2]])
    return raw_lattice(chain_leq(3), mul, ["0", "a", "1"], "chain3-exceeds")


@pytest.fixture(scope="session")
def b4():
    return generate("b4()")


@pytest.fixture(scope="session")
def z12():
    return generate("zmod(m=12)")


@pytest.fixture(scope="session")
def c3():
    """Ideal lattice of Z/p^3."""
    return generate("chain_power(k=3)")


SMALL_SPECS = ["b4()", "zmod(m=12)", "zmod(m=30)", "chain_power(k=3)", "boolean(k=3)",
               "frame(poset=a<b;a<c)", "product(factors=[chain_power(k=2),zmod(m=6)])",
               "quotient(base=zmod(m=36),element=6Z)", "localization(base=zmod(m=24),prime=2Z)"]


@pytest.fixture(scope="session", params=SMALL_SPECS)
def small(request):
    return generate(request.param)
