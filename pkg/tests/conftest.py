"""Shared fixtures and helpers for the simpleoa test suite"""

import numpy as np
import pytest
from hypothesis import strategies as st

from simpleoa import constructions
from simpleoa.arrays import (
    SymbolArray,
    full_factorial,
    juxtapose,
    multiplicity_census,
    select_columns,
    translate,
)
from simpleoa.bounds import rao_bound


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running construction or search")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ============================================================
# FIXTURES
# ============================================================

@pytest.fixture
def even5():
    """OA(16, 5, 2, 4), the even-weight code of length 5"""
    return constructions.even_weight_oa(5)


@pytest.fixture
def sylvester3():
    return constructions.sylvester_oa(3)


@pytest.fixture(scope="session")
def nr():
    """Nordstrom-Robinson code, built once per session"""
    return constructions.nordstrom_robinson()


@pytest.fixture(scope="session")
def nr_shortened(nr):
    return constructions.zero_shorten(nr, strength=5)


# ============================================================
# HELPERS
# ============================================================

def assert_census_law(A: SymbolArray, u: int):
    """rho_max <= floor(N / M(k, s, 2u)) for an array of strength 2u"""
    rho = multiplicity_census(A).max_multiplicity
    assert rho <= A.N // rao_bound(A.k, A.s, 2 * u)


@st.composite
def random_arrays(draw, max_rows=32, max_cols=7, symbols=(2, 3)):
    s = draw(st.sampled_from(symbols))
    N = draw(st.integers(1, max_rows))
    k = draw(st.integers(1, max_cols))
    cells = draw(st.lists(st.integers(0, s - 1), min_size=N * k, max_size=N * k))
    return SymbolArray(np.array(cells, dtype=np.int64).reshape(N, k), s)


_KNOWN_ARRAYS = (
    lambda: constructions.even_weight_oa(3),
    lambda: constructions.even_weight_oa(5),
    lambda: constructions.sylvester_oa(3),
    lambda: constructions.double_strength(constructions.even_weight_oa(4)),
    lambda: full_factorial(3, 2),
    lambda: full_factorial(2, 3),
)


@st.composite
def structured_arrays(draw):
    """A known orthogonal array, possibly stacked on a translate of itself, columns shuffled"""
    A = draw(st.sampled_from(_KNOWN_ARRAYS))()
    if draw(st.booleans()):
        shift = draw(st.lists(st.integers(0, A.s - 1), min_size=A.k, max_size=A.k))
        A = juxtapose(A, translate(A, shift))
    order = draw(st.permutations(range(A.k)))
    return select_columns(A, order)


def any_arrays(**kwargs):
    return st.one_of(random_arrays(**kwargs), structured_arrays())
