"""
Strength verification for symbol arrays
Counting over column subsets, character sums, the character matrix and its
Gram law, and the distance-distribution shortcut for binary arrays
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from simpleoa.arrays import SymbolArray, SymbolRow, pair_distance_counts
from simpleoa.errors import ParameterError
from simpleoa.lp import krawtchouk

logger = logging.getLogger(__name__)


def _check_range(A: SymbolArray, t: int, name: str = "t"):
    if not 0 <= t <= A.k:
        raise ParameterError(f"{name}={t} must lie in 0..k={A.k}")


# ===================== COUNTING =====================

@dataclass(frozen=True)
class Witness:
    """A t-tuple whose count in a column subset differs from the index"""

    columns: Tuple[int, ...]
    symbols: SymbolRow
    observed: int
    expected: Fraction


@dataclass(frozen=True)
class StrengthReport:
    requested_t: int
    holds: bool
    lambda_: Fraction
    witness: Optional[Witness] = None
    max_strength: Optional[int] = None


def tuple_counts(A: SymbolArray, cols: Tuple[int, ...]) -> np.ndarray:
    """Occurrences of every tuple on `cols`, indexed by lexicographic rank"""
    weights = A.s ** np.arange(len(cols) - 1, -1, -1, dtype=np.int64)
    codes = A.as_int()[:, list(cols)] @ weights if cols else np.zeros(A.N, dtype=np.int64)
    return np.bincount(codes, minlength=A.s ** len(cols))


def _decode(code: int, length: int, s: int) -> SymbolRow:
    digits = []
    for _ in range(length):
        code, d = divmod(code, s)
        digits.append(d)
    return tuple(reversed(digits))


def count_witness(A: SymbolArray, t: int) -> Optional[Witness]:
    """Lexicographically first (column subset, tuple) with a wrong count"""
    expected = Fraction(A.N, A.s ** t)
    for cols in itertools.combinations(range(A.k), t):
        counts = tuple_counts(A, cols)
        bad = np.flatnonzero(counts != expected) if expected.denominator == 1 else [0]
        if len(bad):
            code = int(bad[0])
            return Witness(cols, _decode(code, t, A.s), int(counts[code]), expected)
    return None


def verify_strength(A: SymbolArray, t: int, include_max: bool = False) -> StrengthReport:
    """
    Check that every t-column projection contains each t-tuple N/s^t times

    Args:
        A: the array
        t: requested strength, 0 <= t <= k
        include_max: also fill in the largest strength of A

    Returns:
        StrengthReport; a failing report always carries a replayable witness
    """
    _check_range(A, t)
    witness = count_witness(A, t)
    best = max_strength(A) if include_max else None
    return StrengthReport(
        requested_t=t,
        holds=witness is None,
        lambda_=Fraction(A.N, A.s ** t),
        witness=witness,
        max_strength=best,
    )


def max_strength(A: SymbolArray) -> int:
    """Largest t with verify_strength(A, t).holds, by ascending scan"""
    for t in range(1, A.k + 1):
        if A.N % A.s ** t or count_witness(A, t) is not None:
            return t - 1
    return A.k


# ===================== CHARACTER SUMS =====================

@lru_cache(maxsize=None)
def cyclotomic_polynomial(s: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_s, lowest degree first"""
    # x^s - 1 divided by Phi_d for every proper divisor d of s
    poly = [-1] + [0] * (s - 1) + [1]
    for d in range(1, s):
        if s % d == 0:
            poly = _divide_monic(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _divide_monic(num: List[int], den: List[int]) -> List[int]:
    num = list(num)
    dd = len(den) - 1
    quotient = [0] * (len(num) - dd)
    for r in range(len(num) - 1, dd - 1, -1):
        q = num[r]
        quotient[r - dd] = q
        if q:
            for i, c in enumerate(den):
                num[r - dd + i] -= q * c
    assert not any(num[:dd]), "cyclotomic division left a remainder"
    return quotient


def cyclotomic_is_zero(counts: np.ndarray, s: int) -> np.ndarray:
    """
    Decide sum_r counts[..., r] * zeta^r == 0 exactly

    The sum vanishes iff the integer polynomial with these coefficients is
    divisible by Phi_s.
    """
    phi = cyclotomic_polynomial(s)
    deg = len(phi) - 1
    rem = np.array(counts, dtype=np.int64, copy=True)
    for r in range(s - 1, deg - 1, -1):
        q = rem[..., r].copy()
        for i, c in enumerate(phi):
            if c:
                rem[..., r - deg + i] -= q * c
    return np.all(rem[..., :deg] == 0, axis=-1)


def low_weight_vectors(k: int, s: int, max_weight: int, min_weight: int = 0) -> List[SymbolRow]:
    """Tuples of weight min_weight..max_weight; weight ascending, then lexicographic"""
    out = []
    for w in range(min_weight, max_weight + 1):
        block = []
        for support in itertools.combinations(range(k), w):
            for values in itertools.product(range(1, s), repeat=w):
                v = [0] * k
                for c, x in zip(support, values):
                    v[c] = x
                block.append(tuple(v))
        out.extend(sorted(block))
    return out


def _exponents(A: SymbolArray, vectors: List[SymbolRow]) -> np.ndarray:
    """a_i . v mod s for every row i and every vector v"""
    if not vectors:
        return np.zeros((A.N, 0), dtype=np.int64)
    V = np.array(vectors, dtype=np.int64)
    return (A.as_int() @ V.T) % A.s


def _residue_counts(E: np.ndarray, s: int) -> np.ndarray:
    """Count of each residue r along axis 0, stacked on a new last axis"""
    return np.stack([(E == r).sum(axis=0) for r in range(s)], axis=-1)


class CharacterSumCheck(NamedTuple):
    holds: bool
    failing_v: Optional[SymbolRow]
    # the failing sum: an int for s=2, the residue counts otherwise
    value: object = None


def character_sum_check(A: SymbolArray, t: int) -> CharacterSumCheck:
    """Whether sum_i zeta^(a_i . v) = 0 for every v with 1 <= w(v) <= t"""
    _check_range(A, t)
    for w in range(1, t + 1):
        vectors = low_weight_vectors(A.k, A.s, w, w)
        E = _exponents(A, vectors)
        if A.s == 2:
            sums = (1 - 2 * E).sum(axis=0)
            bad = np.flatnonzero(sums != 0)
            if len(bad):
                return CharacterSumCheck(False, vectors[bad[0]], int(sums[bad[0]]))
        else:
            counts = _residue_counts(E, A.s)
            bad = np.flatnonzero(~cyclotomic_is_zero(counts, A.s))
            if len(bad):
                i = bad[0]
                return CharacterSumCheck(False, vectors[i], tuple(counts[i].tolist()))
    return CharacterSumCheck(True, None)


def column_orthogonality_check(A: SymbolArray, t: int) -> bool:
    """sum_i alpha_{i,v} conj(alpha_{i,v'}) = 0 for all v != v' with w(v) + w(v') <= t"""
    _check_range(A, t)
    vectors = low_weight_vectors(A.k, A.s, t)
    weights = np.array([sum(1 for x in v if x) for v in vectors])
    E = _exponents(A, vectors)
    for a in range(len(vectors)):
        partners = np.flatnonzero(weights <= t - weights[a])
        partners = partners[partners != a]
        if not len(partners):
            continue
        diff = (E[:, partners] - E[:, [a]]) % A.s
        if not np.all(cyclotomic_is_zero(_residue_counts(diff, A.s), A.s)):
            return False
    return True


# ===================== CHARACTER MATRIX =====================

@dataclass(frozen=True, eq=False)
class CharacterMatrix:
    """H = [H_0 H_1 ... H_u]; entry (i, v) = zeta^(a_i . v)

    Stored as the exponent matrix a_i . v mod s, which represents every
    entry exactly.
    """

    exponents: np.ndarray
    column_index: List[SymbolRow]
    u: int
    s: int

    @property
    def N(self) -> int:
        return self.exponents.shape[0]

    @property
    def M(self) -> int:
        return self.exponents.shape[1]

    @property
    def entries(self) -> np.ndarray:
        """±1 integers for s=2, complex roots of unity otherwise (display only)"""
        if self.s == 2:
            return 1 - 2 * self.exponents
        return np.exp(2j * np.pi * self.exponents / self.s)


def build_character_matrix(A: SymbolArray, u: int) -> CharacterMatrix:
    _check_range(A, u, "u")
    index = low_weight_vectors(A.k, A.s, u)
    return CharacterMatrix(_exponents(A, index), index, u, A.s)


def gram_is_scaled_identity(H: CharacterMatrix) -> bool:
    """Exact test of H* H = N I"""
    if H.s == 2:
        entries = H.entries
        gram = entries.T @ entries
        return bool(np.array_equal(gram, H.N * np.eye(H.M, dtype=np.int64)))
    # conj(H_iv) H_iv' = zeta^(e_iv' - e_iv)
    diff = (H.exponents[:, None, :] - H.exponents[:, :, None]) % H.s
    counts = _residue_counts(diff, H.s)
    off = ~np.eye(H.M, dtype=bool)
    return bool(np.all(cyclotomic_is_zero(counts, H.s)[off]))


# ===================== DISTANCE SHORTCUT =====================

def dual_distance_strength(A: SymbolArray) -> int:
    """
    Strength of a binary array from its pair-distance counts

    sum_i P_i K_j(i) equals the sum of squared Fourier coefficients of the
    row-multiplicity function over weight j, so it vanishes exactly when
    every weight-j coefficient does.
    """
    pairs = pair_distance_counts(A)
    for j in range(1, A.k + 1):
        if sum(p * krawtchouk(j, i, A.k) for i, p in enumerate(pairs)):
            return j - 1
    return A.k


def strength_of(A: SymbolArray, subset_limit: int) -> int:
    """max_strength, switching to the distance shortcut for large binary arrays"""
    if A.s == 2 and math.comb(A.k, A.k // 2) > subset_limit:
        logger.debug("using distance distribution for %r", A)
        return dual_distance_strength(A)
    return max_strength(A)


def holds_strength(A: SymbolArray, t: int, subset_limit: int) -> bool:
    if A.s == 2 and math.comb(A.k, t) > subset_limit:
        return dual_distance_strength(A) >= t
    return verify_strength(A, t).holds
