"""
Boolean functions and their link to simple binary orthogonal arrays
A t-th order correlation-immune function has a simple OA of strength t as support
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from simpleoa.arrays import SymbolArray, multiplicity_census
from simpleoa.constants import WALSH_MAX_VARIABLES
from simpleoa.errors import FormatError, ParameterError

logger = logging.getLogger(__name__)


def _parity(values: np.ndarray) -> np.ndarray:
    x = values.astype(np.uint64)
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(shift)
    return (x & np.uint64(1)).astype(np.int64)


def _popcounts(k: int) -> np.ndarray:
    weights = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        weights = np.concatenate([weights, weights + 1])
    return weights


def _index(bits: Sequence[int]) -> int:
    """x in {0,1}^k to its lexicographic rank (x_1 most significant)"""
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Truth table of f: {0,1}^k -> {0,1}, indexed in lexicographic order"""

    k: int
    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=np.uint8, copy=True).reshape(-1)
        if self.k < 1:
            raise ParameterError("a Boolean function needs k >= 1 variables")
        if table.size != 2 ** self.k:
            raise ParameterError(f"truth table needs 2^{self.k} entries, got {table.size}")
        if np.any(table > 1):
            raise ParameterError("truth table entries must be 0 or 1")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @classmethod
    def from_support(cls, k: int, support) -> "BooleanFunction":
        table = np.zeros(2 ** k, dtype=np.uint8)
        for x in support:
            table[_index(x)] = 1
        return cls(k, table)

    @property
    def weight(self) -> int:
        return int(self.table.sum())

    def __call__(self, x: Sequence[int]) -> int:
        return int(self.table[_index(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.k, self.table.tobytes()))


def parse_truth_table(text) -> BooleanFunction:
    """Truth-table file: a line "k" then a 2^k-character 0/1 string"""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    lines = [
        (n, line.strip()) for n, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(lines) != 2:
        raise FormatError("expected a 'k' line followed by one truth-table line")
    (n1, head), (n2, bits) = lines
    if not (head.isascii() and head.isdigit()):
        raise FormatError(f"malformed variable count {head!r}", n1)
    k = int(head)
    if k < 1 or len(bits) != 2 ** k:
        raise FormatError(f"truth table has {len(bits)} characters, expected 2^{k}", n2)
    if set(bits) - {"0", "1"}:
        raise FormatError("truth table may only contain 0 and 1", n2)
    return BooleanFunction(k, np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0"))


def serialize_truth_table(f: BooleanFunction) -> str:
    return f"{f.k}\n" + "".join(str(int(b)) for b in f.table) + "\n"


# ===================== FOURIER =====================

def fourier_coefficient(f: BooleanFunction, a: Sequence[int]) -> int:
    """f^(a) = sum_x f(x) (-1)^(a.x) for the 0/1-valued f"""
    if len(a) != f.k:
        raise ParameterError(f"vector a needs length {f.k}")
    support = np.flatnonzero(f.table)
    signs = 1 - 2 * _parity(support & _index(a))
    return int(signs.sum())


def walsh_spectrum(f: BooleanFunction) -> np.ndarray:
    """All 2^k Fourier coefficients by an in-place butterfly, indexed like the table"""
    if f.k > WALSH_MAX_VARIABLES:
        raise ParameterError(f"transform supports k <= {WALSH_MAX_VARIABLES}")
    spectrum = f.table.astype(np.int64)
    h = 1
    while h < spectrum.size:
        blocks = spectrum.reshape(-1, 2, h)
        low, high = blocks[:, 0, :].copy(), blocks[:, 1, :].copy()
        blocks[:, 0, :] = low + high
        blocks[:, 1, :] = low - high
        h *= 2
    return spectrum


def ci_order(f: BooleanFunction) -> int:
    """Largest t with f^(a) = 0 for all 1 <= w(a) <= t"""
    if f.weight == 0:
        raise ParameterError("ci_order is undefined for the constant-0 function")
    spectrum = walsh_spectrum(f)
    weights = _popcounts(f.k)
    for w in range(1, f.k + 1):
        if np.any(spectrum[weights == w]):
            return w - 1
    return f.k


# ===================== SUPPORT <-> ARRAY =====================

def support_to_oa(f: BooleanFunction) -> SymbolArray:
    """Support of f as a simple binary array, rows in lexicographic order"""
    if f.weight == 0:
        raise ParameterError("the constant-0 function has an empty support")
    support = np.flatnonzero(f.table)
    shifts = np.arange(f.k - 1, -1, -1)
    rows = (support[:, None] >> shifts) & 1
    return SymbolArray(rows, 2)


def oa_to_support(A: SymbolArray) -> BooleanFunction:
    if A.s != 2:
        raise ParameterError("only binary arrays are supports of Boolean functions")
    census = multiplicity_census(A)
    if not census.is_simple:
        row = next(r for r, c in census.counts.items() if c > 1)
        raise ParameterError(f"row {''.join(map(str, row))} repeats; the array is not simple")
    return BooleanFunction.from_support(A.k, A.rows)


def minimum_ci_weight(k: int, t: int) -> Optional[int]:
    """
    Smallest weight of a k-variable function with ci_order >= t, by exhaustion

    Translating the support keeps the CI order, so 0 is assumed in the support.
    Intended for k <= 4.
    """
    if not 0 <= t <= k:
        raise ParameterError("need 0 <= t <= k")
    size = 2 ** k
    for weight in range(1, size + 1):
        for rest in itertools.combinations(range(1, size), weight - 1):
            table = np.zeros(size, dtype=np.uint8)
            table[[0, *rest]] = 1
            if ci_order(BooleanFunction(k, table)) >= t:
                logger.debug("minimum_ci_weight(k=%d, t=%d) = %d", k, t, weight)
                return weight
    return None
