"""Tests for the explicit constructions"""

import numpy as np
import pytest

from simpleoa import constructions
from simpleoa.arrays import (
    SymbolArray,
    full_factorial,
    juxtapose,
    minimum_distance,
    multiplicity_census,
    select_columns,
    weight_enumerator,
)
from simpleoa.bounds import corollary1_applies, rao_bound
from simpleoa.codes import LinearCode, code_13_3_7, repetition_code
from simpleoa.errors import ParameterError, VerificationError
from simpleoa.strength import max_strength, strength_of, verify_strength
from tests.conftest import assert_census_law


# ============================================================
# SYLVESTER AND EVEN WEIGHT
# ============================================================

def test_sylvester_h2_rows():
    assert constructions.sylvester_oa(2).rows == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_sylvester_h3_has_strength_exactly_two(sylvester3):
    assert (sylvester3.N, sylvester3.k) == (8, 7)
    assert multiplicity_census(sylvester3).is_simple
    assert max_strength(sylvester3) == 2


def test_sylvester_h1_is_degenerate():
    A = constructions.sylvester_oa(1)
    assert (A.N, A.k) == (2, 1)
    assert max_strength(A) == 1


@pytest.mark.parametrize("k", range(2, 8))
def test_sylvester_columns_keep_strength_two(k):
    A = select_columns(constructions.sylvester_oa(k.bit_length()), range(k))
    assert verify_strength(A, 2).holds
    assert A.N <= 2 * k


def test_even_weight_five_is_rao_tight(even5):
    assert even5.N == 16
    assert max_strength(even5) == 4
    assert multiplicity_census(even5).is_simple
    assert even5.N == rao_bound(5, 2, 4)
    assert even5 == even5.sorted()


def test_even_weight_small_cases():
    assert constructions.even_weight_oa(3) == constructions.sylvester_oa(2)
    assert constructions.even_weight_oa(2).rows == [(0, 0), (1, 1)]
    with pytest.raises(ParameterError):
        constructions.even_weight_oa(1)


# ============================================================
# DOUBLING AND SHORTENING
# ============================================================

def test_double_even_weight(even5):
    doubled = constructions.double_strength(even5)
    assert (doubled.N, doubled.k) == (32, 6)
    assert verify_strength(doubled, 5).holds
    assert multiplicity_census(doubled).is_simple


def test_double_full_factorial():
    assert constructions.double_strength(full_factorial(2), strength=2) == full_factorial(3)


def test_double_sylvester(sylvester3):
    doubled = constructions.double_strength(sylvester3)
    assert (doubled.N, doubled.k) == (16, 8)
    assert max_strength(doubled) == 3


def test_double_rejects_bad_input(even5):
    with pytest.raises(VerificationError):
        constructions.double_strength(juxtapose(even5, even5))
    with pytest.raises(ParameterError):
        constructions.double_strength(even5, strength=3)
    with pytest.raises(VerificationError):
        constructions.double_strength(constructions.sylvester_oa(3), strength=4)


def test_shorten_full_factorial():
    assert constructions.zero_shorten(full_factorial(2)) == full_factorial(1)


def test_shorten_even_weight(even5):
    shortened = constructions.zero_shorten(even5)
    assert shortened == constructions.even_weight_oa(4)
    assert max_strength(shortened) == 3


def test_shorten_other_column_and_symbol(even5):
    shortened = constructions.zero_shorten(even5, column=2, symbol=1)
    assert (shortened.N, shortened.k) == (8, 4)
    assert verify_strength(shortened, 3).holds


def test_shorten_rejects_unbalanced_column():
    A = SymbolArray.from_rows([[0, 0], [0, 1], [1, 1]])
    with pytest.raises(VerificationError, match="unbalanced"):
        constructions.zero_shorten(A)


def test_double_then_shorten_recovers_strength():
    for k in range(3, 7):
        A = constructions.even_weight_oa(k)
        t = k - 1 - (k - 1) % 2
        round_trip = constructions.zero_shorten(constructions.double_strength(A, strength=t))
        assert round_trip.same_rows(A)


# ============================================================
# LINEAR CODES
# ============================================================

def test_dual_of_code_13_3_7():
    A = constructions.dual_code_oa(code_13_3_7())
    assert (A.N, A.k) == (1024, 13)
    assert multiplicity_census(A).is_simple
    assert max_strength(A) == 6
    assert_census_law(A, 3)


def test_dual_of_repetition_code_is_even_weight(even5):
    assert constructions.dual_code_oa(repetition_code(5)) == even5


def test_dual_of_full_space_is_zero_row():
    A = constructions.dual_code_oa(LinearCode(np.eye(3, dtype=np.int64)))
    assert A.rows == [(0, 0, 0)]
    assert max_strength(A) == 0


@pytest.mark.parametrize("generator", [
    [[1, 1, 1, 0, 0], [0, 0, 1, 1, 1]],
    [[1, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 1]],
    [[1, 1, 1, 1, 1, 1, 1]],
])
def test_dual_strength_is_minimum_distance_minus_one(generator):
    code = LinearCode(np.array(generator))
    A = constructions.dual_code_oa(code)
    assert A.N == 2 ** (code.n - code.dim)
    assert max_strength(A) == code.minimum_distance() - 1


# ============================================================
# NORDSTROM-ROBINSON AND KERDOCK
# ============================================================

def test_nordstrom_robinson(nr):
    assert (nr.N, nr.k) == (256, 16)
    assert multiplicity_census(nr).is_simple
    assert strength_of(nr, subset_limit=10**6) == 5
    assert not verify_strength(nr, 6).holds
    assert minimum_distance(nr) == 6
    assert weight_enumerator(nr) == [1, 0, 0, 0, 0, 0, 112, 0, 30, 0, 112, 0, 0, 0, 0, 0, 1]


def test_kerdock_four_matches_nordstrom_robinson(nr):
    K = constructions.kerdock(4)
    assert (K.N, K.k) == (256, 16)
    assert weight_enumerator(K) == weight_enumerator(nr)
    assert multiplicity_census(K).is_simple
    assert strength_of(K, subset_limit=10**6) == 5


def test_kerdock_rejects_odd_m():
    with pytest.raises(ParameterError):
        constructions.kerdock(5)


@pytest.mark.slow
def test_kerdock_six():
    K = constructions.kerdock(6)
    assert (K.N, K.k) == (4096, 64)
    assert strength_of(K, subset_limit=0) == 5


def test_shortened_nordstrom_robinson(nr_shortened):
    assert (nr_shortened.N, nr_shortened.k) == (128, 15)
    assert multiplicity_census(nr_shortened).is_simple
    assert strength_of(nr_shortened, subset_limit=10**6) == 4


@pytest.mark.parametrize("k", range(11, 16))
def test_column_deletion_chain(nr_shortened, k):
    A = select_columns(nr_shortened, range(k))
    assert multiplicity_census(A).is_simple
    assert verify_strength(A, 4).holds
    assert corollary1_applies(k, 2, 4, 128)
    assert_census_law(A, 2)
    assert constructions.shortened_kerdock(k) == A


@pytest.mark.parametrize("k", range(11, 16))
def test_doubling_chain(nr_shortened, k):
    A = select_columns(nr_shortened, range(k))
    doubled = constructions.double_strength(A, strength=4)
    assert (doubled.N, doubled.k) == (256, k + 1)
    assert multiplicity_census(doubled).is_simple
    assert verify_strength(doubled, 5).holds


def test_short_shortened_kerdock_keeps_strength_but_repeats_rows():
    A = constructions.shortened_kerdock(6)
    assert (A.N, A.k) == (128, 6)
    assert verify_strength(A, 4).holds
    assert not multiplicity_census(A).is_simple
