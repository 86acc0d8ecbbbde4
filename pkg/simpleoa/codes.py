"""
Codes over GF(2) and Z4
Linear codes, GF(2) row reduction and nullspaces, codeword enumeration,
and the Galois-ring tables behind the Z4-linear Kerdock codes
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from simpleoa.errors import FormatError, ParameterError

logger = logging.getLogger(__name__)


# ===================== GF(2) LINEAR ALGEBRA =====================

def gf2_rref(M: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(2) and its pivot columns"""
    A = (np.asarray(M, dtype=np.int64) & 1).astype(np.uint8)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.flatnonzero(A[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            A[[r, p], :] = A[[p, r], :]
        # clear column c everywhere else
        ones = np.flatnonzero(A[:, c])
        ones = ones[ones != r]
        if ones.size:
            A[ones, :] ^= A[r, :]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def gf2_rank(M: np.ndarray) -> int:
    return len(gf2_rref(M)[1])


def gf2_nullspace(M: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0} over GF(2)"""
    R, pivots = gf2_rref(M)
    n = np.asarray(M).shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for row, p in enumerate(pivots):
            basis[b, p] = R[row, f]
    return basis


def gray_code_span(basis: np.ndarray, n: int) -> np.ndarray:
    """All 2^d combinations of the basis rows, stepping messages in Gray-code order"""
    basis = np.asarray(basis, dtype=np.uint8).reshape(-1, n)
    d = basis.shape[0]
    words = np.zeros((2 ** d, n), dtype=np.uint8)
    word = np.zeros(n, dtype=np.uint8)
    for i in range(1, 2 ** d):
        # consecutive Gray codes differ in the lowest set bit of i
        bit = (i & -i).bit_length() - 1
        word = word ^ basis[bit]
        words[i] = word
    return words


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A binary linear [n, dim] code given by a full-rank generator matrix"""

    generator: np.ndarray

    def __post_init__(self):
        G = np.array(self.generator, dtype=np.int64)
        if G.ndim != 2 or G.shape[1] < 1:
            raise ParameterError("generator must be a non-empty matrix")
        if np.any((G != 0) & (G != 1)):
            raise ParameterError("generator entries must be 0 or 1")
        G = G.astype(np.uint8)
        rank = gf2_rank(G)
        if rank != G.shape[0]:
            raise ParameterError(
                f"generator rows are dependent: rank {rank} < {G.shape[0]} rows"
            )
        G.flags.writeable = False
        object.__setattr__(self, "generator", G)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    def codewords(self) -> np.ndarray:
        return gray_code_span(self.generator, self.n)

    def dual_basis(self) -> np.ndarray:
        return gf2_nullspace(self.generator)

    def minimum_distance(self) -> int:
        weights = self.codewords().astype(np.int64).sum(axis=1)
        nonzero = weights[weights > 0]
        return int(nonzero.min()) if nonzero.size else 0


def parse_generator(text) -> LinearCode:
    """Generator-matrix file: "dim n" header, then dim rows of n binary digits"""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    lines = [
        (number, line.strip()) for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise FormatError("missing header line 'dim n'")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isascii() and p.isdigit() for p in parts):
        raise FormatError(f"malformed header {header!r}, expected 'dim n'", number)
    dim, n = int(parts[0]), int(parts[1])
    rows = []
    for number, line in lines[1:]:
        if len(line) != n or set(line) - {"0", "1"}:
            raise FormatError(f"generator row must be {n} binary digits", number)
        rows.append([int(ch) for ch in line])
    if len(rows) != dim:
        raise FormatError(f"found {len(rows)} generator rows, header declares {dim}")
    return LinearCode(np.array(rows, dtype=np.int64).reshape(dim, n))


def repetition_code(n: int) -> LinearCode:
    return LinearCode(np.ones((1, n), dtype=np.int64))


def two_row_code(n: int) -> LinearCode:
    """
    A binary [n, 2, floor(2n/3)] code, the largest distance two rows allow

    Columns split into three near-equal blocks; the rows cover blocks 1-2 and
    2-3, so the nonzero weights are the three pairwise block sums.
    """
    if n < 3:
        raise ParameterError("two_row_code needs n >= 3")
    a, b, _ = (n // 3 + (1 if i < n % 3 else 0) for i in range(3))
    G = np.zeros((2, n), dtype=np.int64)
    G[0, :a + b] = 1
    G[1, a:] = 1
    return LinearCode(G)


def code_13_3_7() -> LinearCode:
    """The binary linear [13, 3, 7] code whose dual is an OA(1024, 13, 2, 6)"""
    return LinearCode(np.array([
        [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0],
        [1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0],
        [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1],
    ]))


# ===================== Z4 / GALOIS RING =====================

def _gf2_poly_mulmod(a: int, b: int, mod: int) -> int:
    deg = mod.bit_length() - 1
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= mod
    return result


@lru_cache(maxsize=None)
def primitive_binary_polynomial(degree: int) -> int:
    """Smallest primitive polynomial of the given degree, as a bit mask"""
    order = 2 ** degree - 1
    for poly in range(2 ** degree + 1, 2 ** (degree + 1), 2):
        x, power = 1, 0
        while True:
            x = _gf2_poly_mulmod(x, 2, poly)
            power += 1
            if x == 1 or power > order:
                break
        if x == 1 and power == order:
            return poly
    raise ParameterError(f"no primitive polynomial of degree {degree}")


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def basic_primitive_polynomial(degree: int) -> Tuple[int, ...]:
    """
    Monic basic primitive polynomial over Z4, lowest degree first

    Graeffe's method: with p = e + o split into even and odd powers,
    h(x^2) = ±(e(x)^2 - o(x)^2) mod 4.
    """
    mask = primitive_binary_polynomial(degree)
    bits = [(mask >> i) & 1 for i in range(degree + 1)]
    even = [b if i % 2 == 0 else 0 for i, b in enumerate(bits)]
    odd = [b if i % 2 == 1 else 0 for i, b in enumerate(bits)]
    square = [(x - y) % 4 for x, y in zip(_poly_mul(even, even), _poly_mul(odd, odd))]
    assert not any(square[1::2]), "Graeffe step left odd powers"
    h = square[::2]
    logger.debug("basic primitive polynomial of degree %d: %s", degree, h)
    if h[-1] == 3:
        h = [(-c) % 4 for c in h]
    assert h[-1] == 1
    return tuple(h)


def galois_ring_table(degree: int) -> np.ndarray:
    """
    Coordinates of 0, 1, xi, ..., xi^(2^degree - 2) in GR(4^degree)

    Row r is the coefficient vector over the basis 1, xi, ..., xi^(degree-1),
    generated by a shift register with feedback from the basic primitive
    polynomial.
    """
    h = basic_primitive_polynomial(degree)
    feedback = [(-c) % 4 for c in h[:-1]]
    n = 2 ** degree - 1
    table = np.zeros((n + 1, degree), dtype=np.int64)
    table[1, 0] = 1
    for r in range(2, n + 1):
        carry = table[r - 1, -1]
        table[r, 1:] = table[r - 1, :-1]
        table[r] = (table[r] + carry * np.array(feedback)) % 4
    return table


def kerdock_z4_code(degree: int) -> np.ndarray:
    """All 4^(degree+1) codewords of the Z4-linear Kerdock code of length 2^degree"""
    table = galois_ring_table(degree)
    G = np.vstack([np.ones(2 ** degree, dtype=np.int64), table.T])
    messages = np.array(list(itertools.product(range(4), repeat=degree + 1)), dtype=np.int64)
    return (messages @ G) % 4


def gray_map(words: np.ndarray, interleave: bool = True) -> np.ndarray:
    """
    Gray map Z4 -> GF(2)^2: 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10

    With interleave the images of coordinate c sit at 2c, 2c+1; otherwise all
    first bits come first, then all second bits.
    """
    words = np.asarray(words, dtype=np.int64)
    first = (words >= 2).astype(np.uint8)
    second = ((words == 1) | (words == 2)).astype(np.uint8)
    if interleave:
        out = np.empty((words.shape[0], 2 * words.shape[1]), dtype=np.uint8)
        out[:, 0::2] = first
        out[:, 1::2] = second
        return out
    return np.hstack([first, second])
