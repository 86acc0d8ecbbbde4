"""Tests for closed-form bounds and the multiplicity verdicts"""

import math
from fractions import Fraction

import pytest

from simpleoa import constructions
from simpleoa.arrays import juxtapose, translate
from simpleoa.bounds import (
    VerdictCase,
    analyze_array,
    bound_report,
    corollary1_applies,
    ell_weights,
    friedman_bierbrauer,
    hadamard_prediction,
    kerdock_interval_contains,
    khalyavin_criterion,
    odd_strength_verdict,
    rao_bound,
    rao_bound_odd,
    theorem1_verdict,
)
from simpleoa.codes import code_13_3_7
from simpleoa.errors import ParameterError, VerificationError
from tests.conftest import assert_census_law


# ============================================================
# RAO
# ============================================================

def test_rao_small_values():
    assert rao_bound(5, 2, 4) == 16
    assert rao_bound(11, 2, 4) == 67
    assert rao_bound(13, 2, 6) == 378
    assert rao_bound(3, 3, 2) == 7


@pytest.mark.parametrize("k", range(2, 65))
def test_rao_strength_two_is_k_plus_one(k):
    assert rao_bound(k, 2, 2) == k + 1


@pytest.mark.parametrize("k", range(4, 65))
def test_rao_strength_four_closed_form(k):
    assert 2 * rao_bound(k, 2, 4) == k * k + k + 2


def test_rao_odd_strength_via_doubling():
    assert rao_bound_odd(6, 5) == 2 * rao_bound(5, 2, 4) == 32
    assert rao_bound(6, 2, 5) == 32
    assert rao_bound(3, 2, 1) == 2


def test_rao_rejects_odd_strength_for_larger_alphabets():
    with pytest.raises(ParameterError):
        rao_bound(5, 3, 3)
    with pytest.raises(ParameterError):
        rao_bound(3, 2, 4)


# ============================================================
# FRIEDMAN-BIERBRAUER AND KHALYAVIN
# ============================================================

@pytest.mark.parametrize("k, s, t, value", [
    (4, 2, 3, Fraction(8)),
    (2, 2, 1, Fraction(2)),
    (5, 2, 4, Fraction(16)),
    (8, 2, 1, Fraction(-256)),
])
def test_friedman_bierbrauer(k, s, t, value):
    assert friedman_bierbrauer(k, s, t) == value


@pytest.mark.parametrize("k, t, N, applicable, forced", [
    (7, 4, 64, True, True),
    (7, 2, 8, False, False),
    (4, 2, 8, True, True),
    (4, 2, 16, True, False),
])
def test_khalyavin(k, t, N, applicable, forced):
    assert khalyavin_criterion(k, t, N) == (applicable, forced)


# ============================================================
# MULTIPLICITY THEOREM
# ============================================================

@pytest.mark.parametrize("N, k, u, case, rho", [
    (128, 11, 2, VerdictCase.FORCED_SIMPLE, 1),
    (32, 5, 2, VerdictCase.BOUNDARY_DOUBLED_CASE, 2),
    (48, 5, 2, VerdictCase.NO_CONCLUSION, 3),
    (40, 5, 2, VerdictCase.MULTIPLICITY_AT_MOST_2, 2),
    (8, 3, 1, VerdictCase.MULTIPLICITY_AT_MOST_2, 2),
])
def test_theorem1_verdict(N, k, u, case, rho):
    verdict = theorem1_verdict(N, k, 2, u)
    assert verdict.case is case
    assert verdict.rho_max_bound == rho


def test_theorem1_verdict_range():
    with pytest.raises(ParameterError):
        theorem1_verdict(16, 3, 2, 2)
    with pytest.raises(ParameterError):
        theorem1_verdict(16, 5, 2, 0)


def test_odd_strength_verdict_reads_strength_below():
    assert odd_strength_verdict(256, 16, 5).case is VerdictCase.FORCED_SIMPLE
    with pytest.raises(ParameterError):
        odd_strength_verdict(256, 16, 4)


def test_analyze_even_weight_is_rao_tight(even5):
    analysis = analyze_array(even5, 2)
    assert analysis.rao_tight
    assert analysis.census.is_simple
    assert analysis.verdict.case is VerdictCase.FORCED_SIMPLE


def test_analyze_doubled_even_weight(even5):
    twice = juxtapose(even5, even5)
    analysis = analyze_array(twice, 2)
    assert analysis.verdict.case is VerdictCase.BOUNDARY_DOUBLED_CASE
    assert analysis.census.max_multiplicity == 2 == analysis.verdict.rho_max_bound
    assert set(analysis.census.counts.values()) == {2}
    assert analysis.doubled_even_weight


def test_analyze_doubled_translate_of_even_weight(even5):
    odd = translate(even5, (1, 0, 0, 0, 0))
    analysis = analyze_array(juxtapose(odd, odd), 2)
    assert analysis.doubled_even_weight


def test_analyze_nordstrom_robinson(nr):
    analysis = analyze_array(nr, 2)
    assert analysis.census.is_simple
    assert analysis.verdict.rho_max_bound == 1
    assert not analysis.rao_tight


def test_analyze_rejects_wrong_strength(sylvester3):
    with pytest.raises(VerificationError):
        analyze_array(sylvester3, 2)


@pytest.mark.parametrize("builder, u", [
    (lambda: constructions.even_weight_oa(5), 2),
    (lambda: constructions.even_weight_oa(7), 3),
    (lambda: constructions.sylvester_oa(4), 1),
    (lambda: juxtapose(constructions.sylvester_oa(3), constructions.sylvester_oa(3)), 1),
    (lambda: constructions.dual_code_oa(code_13_3_7()), 3),
    (lambda: constructions.shortened_kerdock(15), 2),
])
def test_census_law_on_constructed_arrays(builder, u):
    assert_census_law(builder(), u)


# ============================================================
# COROLLARY AND INTERVAL PREDICATES
# ============================================================

@pytest.mark.parametrize("k", range(2, 20))
def test_corollary_for_strength_two(k):
    assert corollary1_applies(k, 2, 2, 2 * k)


def test_corollary_boundaries():
    assert corollary1_applies(15, 2, 4, 128)
    assert not corollary1_applies(5, 2, 4, 32)
    with pytest.raises(ParameterError):
        corollary1_applies(5, 2, 3, 16)


@pytest.mark.parametrize("k, contained, m", [
    (12, True, 4),
    (15, True, 4),
    (11, False, None),
    (16, False, None),
    (46, True, 6),
    (63, True, 6),
])
def test_kerdock_interval(k, contained, m):
    assert kerdock_interval_contains(k) == (contained, m)


@pytest.mark.parametrize("k, weights", [(5, (4, 2)), (10, (7, 4)), (6, None), (2, (2, 1))])
def test_ell_weights(k, weights):
    assert ell_weights(k) == weights


def test_ell_weights_are_consistent():
    for k in range(2, 200):
        weights = ell_weights(k)
        if weights is not None:
            l1, l2 = weights
            assert l1 + l2 == k + 1
            assert 4 * l1 * l2 == k * k + k + 2


def test_even_weight_rows_have_ell_weights(even5):
    allowed = set(ell_weights(5))
    nonzero = [sum(row) for row in even5.rows if any(row)]
    assert set(nonzero) <= allowed


def test_hadamard_prediction():
    prediction = hadamard_prediction(11)
    assert prediction["strength2_lower"] == 12
    assert prediction["strength2_upper"] == 16
    assert prediction["strength3_conjectured"] == 24
    assert prediction["hadamard_order"] == 12


# ============================================================
# REPORT
# ============================================================

def test_bound_report_json_schema():
    data = bound_report(13, 2, 6).to_json()
    assert {"k", "s", "t", "rao", "fb_num", "fb_den", "khalyavin", "verdict", "best_lower"} <= set(data)
    assert data["rao"] == 378
    assert data["khalyavin"]["applicable"] is False


def test_bound_report_with_lp():
    report = bound_report(13, 2, 6, lp=True)
    assert report.lp.optimum == 1024
    assert report.best_lower == 1024


def test_bound_report_integral_rounding():
    plain = bound_report(5, 2, 2)
    rounded = bound_report(5, 2, 2, integral=True)
    assert plain.best_lower == 6
    assert rounded.best_lower == 8
    assert any("multiple" in note for note in rounded.notes)


def test_bound_report_khalyavin_dominates():
    report = bound_report(5, 2, 3)
    assert report.khalyavin_applicable
    assert report.best_lower == 16


def test_bound_report_ternary_odd_strength_has_no_rao():
    report = bound_report(4, 3, 3)
    assert report.rao is None
    assert report.best_lower == max(1, math.ceil(friedman_bierbrauer(4, 3, 3)))
