"""
Array model for simpleoa
Symbol arrays, the OA text format, elementary transforms and row statistics
"""

import itertools
import logging
import string
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from simpleoa.constants import COMMENT_PREFIX, MAX_TEXT_SYMBOLS
from simpleoa.errors import FormatError, ParameterError

logger = logging.getLogger(__name__)

SymbolRow = Tuple[int, ...]

# popcount of every byte value, used by the bit-packed distance routines
_BYTE_WEIGHTS = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SymbolArray:
    """An N x k array over the symbols {0, ..., s-1}

    Rows may repeat; the array is a multiset semantically but keeps its row
    order. The underlying numpy buffer is read-only.
    """

    data: np.ndarray
    s: int = 2

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise ParameterError("an array needs a two-dimensional row matrix")
        if self.s < 2 or self.s > 256:
            raise ParameterError(f"alphabet size s={self.s} must lie in 2..256")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ParameterError("an array needs at least one row and one column")
        if data.min() < 0 or data.max() >= self.s:
            raise ParameterError(f"symbols must lie in 0..{self.s - 1}")
        # one byte per symbol
        data = data.astype(np.uint8)
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], s: int = 2) -> "SymbolArray":
        """Build an array from an iterable of equal-length rows"""
        rows = [tuple(int(x) for x in row) for row in rows]
        if not rows:
            raise ParameterError("an array needs at least one row")
        if len({len(row) for row in rows}) != 1:
            raise ParameterError("all rows must have the same length")
        return cls(np.array(rows, dtype=np.int64), s)

    @property
    def N(self) -> int:
        return self.data.shape[0]

    @property
    def k(self) -> int:
        return self.data.shape[1]

    @property
    def rows(self) -> List[SymbolRow]:
        return [tuple(int(x) for x in row) for row in self.data]

    def as_int(self) -> np.ndarray:
        """Writable int64 copy for arithmetic (a uint8 matmul would overflow)"""
        return self.data.astype(np.int64)

    def sorted(self) -> "SymbolArray":
        """Same multiset of rows in lexicographic order"""
        order = np.lexsort(self.data.T[::-1])
        return SymbolArray(self.data[order], self.s)

    def row_multiset(self) -> Counter:
        return Counter(self.rows)

    def same_rows(self, other: "SymbolArray") -> bool:
        """True when both arrays hold the same multiset of rows"""
        return (
            self.s == other.s
            and self.k == other.k
            and self.row_multiset() == other.row_multiset()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolArray):
            return NotImplemented
        return self.s == other.s and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.s, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"SymbolArray(N={self.N}, k={self.k}, s={self.s})"


# ===================== TEXT FORMAT =====================

def parse_oa(text) -> SymbolArray:
    """
    Parse the OA text format

    The first non-comment line is the header "N k s", followed by N lines of
    k contiguous digits. Lines starting with '#' and blank lines are skipped.

    Args:
        text: bytes or str

    Returns:
        SymbolArray with rows in file order
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as e:
            raise FormatError(f"input is not ASCII text: {e}")

    header = None
    rows = []
    last_line = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(COMMENT_PREFIX):
            continue
        last_line = number
        if header is None:
            header = _parse_header(line, number)
            continue
        N, k, s = header
        if len(rows) == N:
            raise FormatError(f"more than the declared {N} rows", number)
        if len(line) != k:
            raise FormatError(f"row has {len(line)} symbols, expected k={k}", number)
        row = []
        for ch in line:
            if ch not in string.digits:
                raise FormatError(f"invalid symbol {ch!r}", number)
            if int(ch) >= s:
                raise FormatError(f"symbol {ch} >= s={s}", number)
            row.append(int(ch))
        rows.append(row)

    if header is None:
        raise FormatError("missing header line 'N k s'")
    N, k, s = header
    if len(rows) != N:
        raise FormatError(f"found {len(rows)} rows, header declares N={N}", last_line)
    logger.debug("parsed %d x %d array over %d symbols", N, k, s)
    return SymbolArray(np.array(rows, dtype=np.int64).reshape(N, k), s)


def _parse_header(line: str, number: int) -> Tuple[int, int, int]:
    parts = line.split()
    if len(parts) != 3 or not all(p.isascii() and p.isdigit() for p in parts):
        raise FormatError(f"malformed header {line!r}, expected 'N k s'", number)
    N, k, s = (int(p) for p in parts)
    if N < 1 or k < 1:
        raise FormatError("header needs N >= 1 and k >= 1", number)
    if not 2 <= s <= MAX_TEXT_SYMBOLS:
        raise FormatError(f"header needs 2 <= s <= {MAX_TEXT_SYMBOLS}", number)
    return N, k, s


def serialize_oa(A: SymbolArray) -> str:
    """Emit the OA text format with a trailing newline"""
    if A.s > MAX_TEXT_SYMBOLS:
        raise ParameterError(f"the text format supports s <= {MAX_TEXT_SYMBOLS}")
    lines = [f"{A.N} {A.k} {A.s}"]
    lines.extend("".join(str(x) for x in row) for row in A.data.tolist())
    return "\n".join(lines) + "\n"


# ===================== TRANSFORMS =====================

def full_factorial(k: int, s: int = 2) -> SymbolArray:
    """All s^k tuples in lexicographic order, an OA of strength k"""
    if k < 1:
        raise ParameterError("k must be positive")
    rows = list(itertools.product(range(s), repeat=k))
    return SymbolArray(np.array(rows, dtype=np.int64), s)


def delete_column(A: SymbolArray, j: int) -> SymbolArray:
    """Drop column j (0-based)"""
    if A.k < 2:
        raise ParameterError("cannot delete the only column")
    if not 0 <= j < A.k:
        raise ParameterError(f"column {j} out of range 0..{A.k - 1}")
    return SymbolArray(np.delete(A.data, j, axis=1), A.s)


def select_columns(A: SymbolArray, cols: Sequence[int]) -> SymbolArray:
    """Keep only the given columns, in the given order"""
    cols = list(cols)
    if not cols or any(not 0 <= c < A.k for c in cols):
        raise ParameterError(f"column selection {cols} invalid for k={A.k}")
    return SymbolArray(A.data[:, cols], A.s)


def juxtapose(A: SymbolArray, B: SymbolArray) -> SymbolArray:
    """Stack the rows of B under the rows of A"""
    if A.k != B.k or A.s != B.s:
        raise ParameterError(
            f"cannot juxtapose k={A.k},s={A.s} with k={B.k},s={B.s}"
        )
    return SymbolArray(np.vstack([A.data, B.data]), A.s)


def translate(A: SymbolArray, v: Sequence[int]) -> SymbolArray:
    """Add the fixed row v to every row modulo s"""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (A.k,):
        raise ParameterError(f"translation vector needs length {A.k}")
    return SymbolArray((A.as_int() + v) % A.s, A.s)


# ===================== ROW STATISTICS =====================

@dataclass(frozen=True)
class MultiplicityCensus:
    """Distinct rows with their multiplicities"""

    counts: Dict[SymbolRow, int]
    max_multiplicity: int
    is_simple: bool
    distinct_count: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def multiplicity_census(A: SymbolArray) -> MultiplicityCensus:
    counts = dict(sorted(A.row_multiset().items()))
    rho = max(counts.values())
    return MultiplicityCensus(
        counts=counts,
        max_multiplicity=rho,
        is_simple=rho == 1,
        distinct_count=len(counts),
    )


def _require_binary(A: SymbolArray, what: str):
    if A.s != 2:
        raise ParameterError(f"{what} is defined for binary arrays only (s=2)")


def weight_enumerator(A: SymbolArray) -> List[int]:
    """c_w = number of rows of Hamming weight w, for w = 0..k"""
    _require_binary(A, "the weight enumerator")
    weights = A.as_int().sum(axis=1)
    return np.bincount(weights, minlength=A.k + 1).tolist()


def pack_rows(A: SymbolArray) -> np.ndarray:
    """Bit-packed binary rows, one uint8 vector per row"""
    _require_binary(A, "bit packing")
    return np.packbits(A.data, axis=1)


def pair_distance_counts(A: SymbolArray) -> List[int]:
    """
    P_i = number of ordered row pairs at Hamming distance i

    Identical rows, including each row with itself, count at distance 0.
    """
    packed = pack_rows(A)
    counts = np.zeros(A.k + 1, dtype=np.int64)
    for i in range(A.N):
        distances = _BYTE_WEIGHTS[packed ^ packed[i]].sum(axis=1)
        counts += np.bincount(distances, minlength=A.k + 1)
    return counts.tolist()


def distance_distribution(A: SymbolArray) -> List[Fraction]:
    """Normalized distance distribution A_i = P_i / N (A_0 = 1 for simple arrays)"""
    return [Fraction(p, A.N) for p in pair_distance_counts(A)]


def minimum_distance(A: SymbolArray) -> int:
    """Smallest Hamming distance between two distinct rows (0 if a row repeats)"""
    _require_binary(A, "the minimum distance")
    if not multiplicity_census(A).is_simple:
        return 0
    if A.N < 2:
        raise ParameterError("minimum distance needs at least two rows")
    counts = pair_distance_counts(A)
    return next(i for i in range(1, A.k + 1) if counts[i])
