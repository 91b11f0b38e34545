import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orderbench import lab


@pytest.fixture(scope="session")
def e0():
    """Zero under two incomparable atoms; the running two-atom example."""
    return lab.make_family("antichain", 2)


@pytest.fixture(scope="session")
def c2():
    """The reflexive three-chain."""
    return lab.make_family("chain", 2)


@pytest.fixture(scope="session")
def p2():
    """The four-element powerset algebra."""
    return lab.make_family("powerset", 2)


@pytest.fixture(scope="session")
def p3():
    return lab.make_family("powerset", 3)


@pytest.fixture(scope="session")
def d3():
    """The diamond: three incomparable elements between bottom and top."""
    return lab.make_family("diamond", 3)


@pytest.fixture(scope="session")
def w5():
    """Five elements whose top pair separates the first two type levels."""
    return lab.make_family("interpolation_witness", 0)


@pytest.fixture(scope="session")
def one():
    return lab.make_family("chain", 0)


def small_structures(max_n):
    out = []
    for n in range(1, max_n + 1):
        out.extend(lab.enumerate_structures(n))
    return out
