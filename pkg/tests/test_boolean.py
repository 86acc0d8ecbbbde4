"""Tests for Boolean functions, the Walsh transform and the support bridge"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simpleoa.arrays import SymbolArray, full_factorial, juxtapose
from simpleoa.boolean import (
    BooleanFunction,
    ci_order,
    fourier_coefficient,
    minimum_ci_weight,
    oa_to_support,
    parse_truth_table,
    serialize_truth_table,
    support_to_oa,
    walsh_spectrum,
)
from simpleoa.errors import FormatError, ParameterError
from simpleoa.strength import max_strength


def test_even_weight_indicator_is_ci_of_order_4(even5):
    f = oa_to_support(even5)
    assert f.weight == 16
    assert ci_order(f) == 4


def test_nordstrom_robinson_indicator_is_ci_of_order_5(nr):
    f = oa_to_support(nr)
    assert f.weight == 256
    assert ci_order(f) == 5


def test_spectrum_matches_single_coefficients(even5):
    f = oa_to_support(even5)
    spectrum = walsh_spectrum(f)
    for index in range(2 ** f.k):
        a = [(index >> (f.k - 1 - i)) & 1 for i in range(f.k)]
        assert spectrum[index] == fourier_coefficient(f, a)
    assert spectrum[0] == f.weight
    assert spectrum[-1] == 16  # every row has even weight


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda k: st.lists(st.integers(0, 1), min_size=2 ** k, max_size=2 ** k).map(lambda bits: (k, bits))
))
def test_parseval(data):
    k, bits = data
    f = BooleanFunction(k, np.array(bits, dtype=np.uint8))
    spectrum = walsh_spectrum(f)
    assert int(np.sum(spectrum ** 2)) == 2 ** k * f.weight


def test_parity_function_is_not_balanced_on_one_variable():
    f = BooleanFunction.from_support(2, [(0, 1), (1, 0)])
    assert fourier_coefficient(f, (1, 1)) == -2
    assert ci_order(f) == 1


def test_constant_zero_function_is_rejected():
    f = BooleanFunction(3, np.zeros(8, dtype=np.uint8))
    with pytest.raises(ParameterError):
        ci_order(f)
    with pytest.raises(ParameterError):
        support_to_oa(f)


def test_non_simple_arrays_have_no_support(even5):
    with pytest.raises(ParameterError, match="not simple"):
        oa_to_support(juxtapose(even5, even5))
    with pytest.raises(ParameterError):
        oa_to_support(full_factorial(2, 3))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda k: st.sets(st.integers(0, 2 ** k - 1), min_size=1).map(lambda s: (k, sorted(s)))
))
def test_support_round_trip(data):
    k, indices = data
    rows = [[(i >> (k - 1 - c)) & 1 for c in range(k)] for i in indices]
    A = SymbolArray.from_rows(rows)
    f = oa_to_support(A)
    assert support_to_oa(f) == A
    assert oa_to_support(support_to_oa(f)) == f
    assert ci_order(f) == max_strength(A)


# ============================================================
# TRUTH-TABLE FORMAT
# ============================================================

def test_truth_table_round_trip():
    text = "3\n01101001\n"
    f = parse_truth_table(text)
    assert f.k == 3 and f.weight == 4
    assert f((0, 0, 1)) == 1
    assert serialize_truth_table(f) == text
    assert ci_order(f) == 2


@pytest.mark.parametrize("text", [
    "3\n0110100\n",
    "3\n0110100x\n",
    "x\n01\n",
    "²\n0110\n",
    "1\n",
])
def test_truth_table_errors(text):
    with pytest.raises(FormatError):
        parse_truth_table(text)


# ============================================================
# MINIMUM WEIGHTS
# ============================================================

@pytest.mark.parametrize("k, t, weight", [
    (2, 1, 2),
    (3, 2, 4),
    (4, 2, 8),
    (4, 3, 8),
    (3, 3, 8),
])
def test_minimum_ci_weight_matches_minimal_simple_arrays(k, t, weight):
    assert minimum_ci_weight(k, t) == weight
