"""
Explicit constructions of orthogonal arrays
Every result is checked by the verifiers before it is returned
"""

import itertools
import logging
from typing import Optional

import numpy as np

from simpleoa.arrays import SymbolArray, minimum_distance, multiplicity_census
from simpleoa.codes import LinearCode, gray_code_span, gray_map, kerdock_z4_code
from simpleoa.constants import SUBSET_VERIFY_LIMIT
from simpleoa.errors import ConstructionError, ParameterError, VerificationError
from simpleoa.strength import holds_strength, strength_of

logger = logging.getLogger(__name__)


def _post_verify(A: SymbolArray, name: str, strength: int, exact: bool = False,
                 simple: bool = True) -> SymbolArray:
    """Raise ConstructionError unless A has the claimed strength (and is simple)"""
    if simple and not multiplicity_census(A).is_simple:
        raise ConstructionError(f"{name}: output has repeated rows")
    if not holds_strength(A, strength, SUBSET_VERIFY_LIMIT):
        raise ConstructionError(f"{name}: output fails strength {strength}")
    if exact and strength < A.k and holds_strength(A, strength + 1, SUBSET_VERIFY_LIMIT):
        raise ConstructionError(f"{name}: output has strength above {strength}")
    logger.info("%s: verified OA(%d,%d,%d,%d)", name, A.N, A.k, A.s, strength)
    return A


def _binary_rows(h: int) -> np.ndarray:
    return np.array(list(itertools.product((0, 1), repeat=h)), dtype=np.int64)


def sylvester_oa(h: int) -> SymbolArray:
    """
    OA(2^h, 2^h - 1, 2, 2) from the Sylvester-Hadamard matrix of order 2^h

    Rows are indexed by x in {0,1}^h, columns by the nonzero y in {0,1}^h,
    entry x.y mod 2. For h=1 the single column only carries strength 1.
    """
    if h < 1:
        raise ParameterError("sylvester_oa needs h >= 1")
    X = _binary_rows(h)
    Y = X[1:]
    A = SymbolArray((X @ Y.T) % 2, 2).sorted()
    return _post_verify(A, f"sylvester(h={h})", min(2, A.k))


def even_weight_oa(k: int) -> SymbolArray:
    """The 2^(k-1) even-weight vectors of length k, an OA of strength k-1"""
    if k < 2:
        raise ParameterError("even_weight_oa needs k >= 2")
    X = _binary_rows(k)
    A = SymbolArray(X[X.sum(axis=1) % 2 == 0], 2)
    return _post_verify(A, f"even-weight(k={k})", k - 1)


def double_strength(A: SymbolArray, strength: Optional[int] = None) -> SymbolArray:
    """
    [0 | A ; 1 | complement(A)]: a simple OA(N, k, 2, 2u) becomes a simple
    OA(2N, k+1, 2, 2u+1)

    Args:
        A: simple binary array
        strength: the even strength 2u of A; defaults to the largest even
            number not above its actual strength
    """
    if A.s != 2:
        raise ParameterError("double_strength needs a binary array")
    if not multiplicity_census(A).is_simple:
        raise VerificationError("double_strength needs a simple input array")
    if strength is None:
        actual = strength_of(A, SUBSET_VERIFY_LIMIT)
        strength = actual - actual % 2
    elif strength % 2:
        raise ParameterError(f"input strength {strength} must be even")
    elif not holds_strength(A, strength, SUBSET_VERIFY_LIMIT):
        raise VerificationError(f"input does not have strength {strength}")
    data = A.as_int()
    top = np.hstack([np.zeros((A.N, 1), dtype=np.int64), data])
    bottom = np.hstack([np.ones((A.N, 1), dtype=np.int64), 1 - data])
    doubled = SymbolArray(np.vstack([top, bottom]), 2).sorted()
    return _post_verify(doubled, "double", strength + 1)


def zero_shorten(A: SymbolArray, column: int = 0, symbol: int = 0,
                 strength: Optional[int] = None) -> SymbolArray:
    """
    Keep the rows with `symbol` in `column` and delete that column

    Args:
        A: the array; the chosen column must be balanced
        column: 0-based column index
        symbol: the symbol the kept rows carry
        strength: known strength of A (computed when omitted)
    """
    if A.k < 2:
        raise ParameterError("zero_shorten needs k >= 2")
    if not 0 <= column < A.k or not 0 <= symbol < A.s:
        raise ParameterError(f"column {column} / symbol {symbol} out of range")
    counts = np.bincount(A.data[:, column], minlength=A.s)
    if np.any(counts != counts[0]):
        raise VerificationError(f"column {column} is unbalanced: counts {counts.tolist()}")
    if strength is None:
        strength = strength_of(A, SUBSET_VERIFY_LIMIT)
    kept = A.data[A.data[:, column] == symbol]
    shortened = SymbolArray(np.delete(kept, column, axis=1), A.s).sorted()
    simple = multiplicity_census(A).is_simple
    return _post_verify(shortened, "shorten", max(strength - 1, 0), simple=simple)


def dual_code_oa(C: LinearCode) -> SymbolArray:
    """
    All codewords of the dual code as a simple binary array

    The strength equals the minimum distance of C minus one; this is checked
    for n <= 20.
    """
    if C.dim > C.n:
        raise ParameterError("generator has more rows than columns")
    basis = C.dual_basis()
    words = gray_code_span(basis, C.n)
    A = SymbolArray(words, 2).sorted()
    if A.N != 2 ** (C.n - C.dim):
        raise ConstructionError(f"dual code has {A.N} words, expected 2^{C.n - C.dim}")
    if C.n <= 20:
        d = C.minimum_distance()
        _post_verify(A, f"dual[{C.n},{C.dim}]", max(d - 1, 0), exact=True)
    return A


def nordstrom_robinson() -> SymbolArray:
    """
    The (16, 256) Nordstrom-Robinson code as a simple OA(256, 16, 2, 5)

    Gray image of the octacode, the length-8 Z4 Kerdock code, with the two
    bits of each Z4 coordinate kept adjacent.
    """
    A = SymbolArray(gray_map(kerdock_z4_code(3), interleave=True), 2).sorted()
    _post_verify(A, "nordstrom-robinson", 5, exact=True)
    if minimum_distance(A) != 6:
        raise ConstructionError("nordstrom-robinson: minimum distance is not 6")
    return A


def kerdock(m: int) -> SymbolArray:
    """Binary Kerdock code of length 2^m (m even, m >= 4) as a simple OA(4^m, 2^m, 2, 5)"""
    if m < 4 or m % 2:
        raise ParameterError(f"kerdock needs an even m >= 4, got {m}")
    words = gray_map(kerdock_z4_code(m - 1), interleave=False)
    A = SymbolArray(words, 2).sorted()
    if A.N != 4 ** m or A.k != 2 ** m:
        raise ConstructionError(f"kerdock(m={m}): unexpected shape {A.N}x{A.k}")
    return _post_verify(A, f"kerdock(m={m})", 5, exact=True)


def shortened_kerdock(k: int) -> SymbolArray:
    """
    First k columns of the shortened Nordstrom-Robinson code, an OA(128, k, 2, min(4, k))

    Deleting columns keeps the strength; the rows are checked distinct for k >= 11
    only, below that they may repeat.
    """
    if not 1 <= k <= 15:
        raise ParameterError("shortened_kerdock needs 1 <= k <= 15")
    A = zero_shorten(nordstrom_robinson(), strength=5)
    return _post_verify(SymbolArray(A.data[:, :k], 2), f"shortened-kerdock(k={k})", min(4, k), simple=k >= 11)
