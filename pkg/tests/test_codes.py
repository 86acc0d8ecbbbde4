"""Tests for GF(2) linear algebra, linear codes and the Z4 Galois-ring tables"""

import numpy as np
import pytest

from simpleoa.codes import (
    LinearCode,
    basic_primitive_polynomial,
    code_13_3_7,
    galois_ring_table,
    gf2_nullspace,
    gf2_rank,
    gray_code_span,
    gray_map,
    kerdock_z4_code,
    parse_generator,
    primitive_binary_polynomial,
    repetition_code,
    two_row_code,
)
from simpleoa.errors import FormatError, ParameterError


def test_rank_and_nullspace():
    G = np.array([[1, 1, 0, 1], [0, 1, 1, 1]])
    assert gf2_rank(G) == 2
    null = gf2_nullspace(G)
    assert null.shape == (2, 4)
    assert not np.any((G @ null.T) % 2)
    assert gf2_rank(null) == 2


def test_gray_code_span_enumerates_every_combination():
    basis = np.array([[1, 0, 0], [0, 1, 1]])
    words = {tuple(w) for w in gray_code_span(basis, 3).tolist()}
    assert words == {(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)}


def test_linear_code_rejects_dependent_rows():
    with pytest.raises(ParameterError):
        LinearCode(np.array([[1, 1, 0], [1, 1, 0]]))
    with pytest.raises(ParameterError):
        LinearCode(np.array([[1, 2, 0]]))


def test_code_13_3_7_parameters():
    code = code_13_3_7()
    assert (code.n, code.dim) == (13, 3)
    assert code.minimum_distance() == 7
    assert len(code.codewords()) == 8


@pytest.mark.parametrize("n", range(3, 14))
def test_two_row_code_reaches_two_thirds(n):
    code = two_row_code(n)
    assert (code.n, code.dim) == (n, 2)
    assert code.minimum_distance() == 2 * n // 3


def test_two_row_code_needs_three_columns():
    with pytest.raises(ParameterError):
        two_row_code(2)


def test_repetition_code():
    code = repetition_code(5)
    assert code.minimum_distance() == 5
    assert code.dual_basis().shape == (4, 5)


def test_parse_generator():
    code = parse_generator("# [3,1] repetition\n1 3\n111\n")
    assert (code.n, code.dim) == (3, 1)


@pytest.mark.parametrize("text", ["1 3\n11\n", "2 3\n111\n", "1 3\n121\n", "x 3\n111\n", "1 ³\n111\n", ""])
def test_parse_generator_errors(text):
    with pytest.raises(FormatError):
        parse_generator(text)


# ============================================================
# Z4
# ============================================================

def test_primitive_polynomials():
    assert primitive_binary_polynomial(3) == 0b1011
    assert primitive_binary_polynomial(4) == 0b10011


def test_basic_primitive_polynomial_lifts_the_binary_one():
    h = basic_primitive_polynomial(3)
    assert h == (3, 1, 2, 1)
    mask = primitive_binary_polynomial(3)
    assert [c % 2 for c in h] == [(mask >> i) & 1 for i in range(4)]


def test_galois_ring_table_has_distinct_units():
    table = galois_ring_table(3)
    assert table.shape == (8, 3)
    assert len({tuple(r) for r in table.tolist()}) == 8


def test_octacode_size_and_gray_image_weights():
    words = kerdock_z4_code(3)
    assert words.shape == (256, 8)
    binary = gray_map(words)
    assert binary.shape == (256, 16)
    weights = np.bincount(binary.sum(axis=1), minlength=17)
    assert weights[0] == 1 and weights[16] == 1


def test_gray_map_layouts():
    words = np.array([[0, 1, 2, 3]])
    assert gray_map(words, interleave=True).tolist() == [[0, 0, 0, 1, 1, 1, 1, 0]]
    assert gray_map(words, interleave=False).tolist() == [[0, 0, 1, 1, 0, 1, 1, 0]]
