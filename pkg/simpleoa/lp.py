"""
Delsarte linear programming bound for binary orthogonal arrays
Krawtchouk polynomials, an exact-rational simplex solver and certificates
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from simpleoa.errors import ParameterError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def krawtchouk(j: int, x: int, n: int) -> int:
    """K_j(x; n) = sum_i (-1)^i C(x, i) C(n - x, j - i)"""
    if not (0 <= j <= n and 0 <= x <= n):
        raise ParameterError(f"krawtchouk needs 0 <= j, x <= n, got j={j} x={x} n={n}")
    return sum(
        (-1) ** i * math.comb(x, i) * math.comb(n - x, j - i)
        for i in range(0, j + 1)
    )


def dual_distribution(distribution: Sequence, n: int) -> List[Fraction]:
    """
    MacWilliams transform of a distance distribution

    With A_i = P_i / N this returns N * B_j = sum_i K_j(i) A_i, which is zero
    exactly when every Fourier coefficient of weight j vanishes.
    """
    if len(distribution) != n + 1:
        raise ParameterError(f"distribution needs {n + 1} entries")
    return [
        sum((Fraction(a) * krawtchouk(j, i, n) for i, a in enumerate(distribution)), Fraction(0))
        for j in range(n + 1)
    ]


# ===================== EXACT SIMPLEX =====================

class ExactSimplex:
    """Dense-tableau simplex over Fractions with Bland's anti-cycling rule

    Solves  min c.x  subject to  A x = b, x >= 0, b >= 0, starting from a
    basis given by identity columns (slacks or artificials). Phase 1 drives
    the artificial columns to zero; they are then barred from re-entering.
    """

    def __init__(self, A: List[List[Fraction]], b: List[Fraction], c: List[Fraction],
                 basis: List[int], artificial: Sequence[int]):
        self.m = len(A)
        self.n = len(c)
        self.T = [list(row) for row in A]
        self.rhs = list(b)
        self.c = list(c)
        self.basis = list(basis)
        self.initial_basis = list(basis)
        self.artificial = set(artificial)
        self.pivots = 0

    def _pivot(self, r: int, j: int):
        piv = self.T[r][j]
        self.T[r] = [v / piv for v in self.T[r]]
        self.rhs[r] /= piv
        for i in range(self.m):
            if i != r and self.T[i][j] != 0:
                f = self.T[i][j]
                self.T[i] = [a - f * p for a, p in zip(self.T[i], self.T[r])]
                self.rhs[i] -= f * self.rhs[r]
        logger.debug("pivot: x%d leaves, x%d enters", self.basis[r], j)
        self.basis[r] = j
        self.pivots += 1

    def _reduced_costs(self, cost: List[Fraction]) -> List[Fraction]:
        return [
            cost[j] - sum((cost[self.basis[i]] * self.T[i][j] for i in range(self.m)), Fraction(0))
            for j in range(self.n)
        ]

    def _run(self, cost: List[Fraction], barred: set):
        while True:
            reduced = self._reduced_costs(cost)
            entering = next(
                (j for j in range(self.n) if j not in barred and reduced[j] < 0),
                None,
            )
            if entering is None:
                return
            best = None
            for i in range(self.m):
                a = self.T[i][entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ParameterError("linear program is unbounded")
            self._pivot(best[1], entering)

    def duals(self, cost: List[Fraction]) -> List[Fraction]:
        """y = c_B B^-1, read from the tableau columns of the initial basis"""
        return [
            sum(
                (cost[self.basis[i]] * self.T[i][self.initial_basis[r]] for i in range(self.m)),
                Fraction(0),
            )
            for r in range(self.m)
        ]

    def solve(self) -> Tuple[List[Fraction], Fraction]:
        if self.artificial:
            phase1 = [Fraction(1) if j in self.artificial else Fraction(0) for j in range(self.n)]
            self._run(phase1, barred=set())
            infeasibility = sum(self.rhs[i] for i in range(self.m) if self.basis[i] in self.artificial)
            assert infeasibility == 0, "phase 1 left a positive artificial"
            self._drive_out_artificials()
        self._run(self.c, barred=self.artificial)
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            x[j] = self.rhs[i]
        value = sum((self.c[j] * x[j] for j in range(self.n)), Fraction(0))
        return x, value

    def _drive_out_artificials(self):
        for i in range(self.m):
            if self.basis[i] in self.artificial:
                j = next(
                    (j for j in range(self.n) if j not in self.artificial and self.T[i][j] != 0),
                    None,
                )
                # rows of the Delsarte system are independent, so a pivot exists
                assert j is not None, "redundant constraint row"
                self._pivot(i, j)


# ===================== DELSARTE BOUND =====================

@dataclass(frozen=True)
class LPCertificate:
    """Optimal distance distribution and dual multipliers for (k, t)

    `dual[j-1]` belongs to the constraint  sum_i K_j(i) A_i (= or >=) 0.
    """

    k: int
    t: int
    optimum: Fraction
    distribution: Tuple[Fraction, ...]
    dual: Tuple[Fraction, ...]
    pivots: int = 0

    @property
    def integer_bound(self) -> int:
        """ceil(optimum) lifted to a multiple of 2^t"""
        step = 2 ** self.t
        return math.ceil(self.optimum / step) * step

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "t": self.t,
            "optimum": _frac_json(self.optimum),
            "A": [_frac_json(a) for a in self.distribution],
            "dual": [_frac_json(y) for y in self.dual],
            "integer_bound": self.integer_bound,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LPCertificate":
        return cls(
            k=int(data["k"]),
            t=int(data["t"]),
            optimum=_frac_from_json(data["optimum"]),
            distribution=tuple(_frac_from_json(a) for a in data["A"]),
            dual=tuple(_frac_from_json(y) for y in data["dual"]),
        )


def _frac_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def _frac_from_json(data: dict) -> Fraction:
    return Fraction(int(data["num"]), int(data["den"]))


@lru_cache(maxsize=None)
def lp_bound(k: int, t: int) -> LPCertificate:
    """
    Solve the Delsarte LP for binary OAs with k columns and strength t

        min  sum_i A_i
        s.t. A_0 = 1, A_i >= 0,
             sum_i K_j(i) A_i  = 0   for 1 <= j <= t,
             sum_i K_j(i) A_i >= 0   for t <  j <= k.

    Args:
        k: number of columns
        t: strength, 1 <= t <= k

    Returns:
        LPCertificate with exact optimum, distribution and dual multipliers
    """
    if not 1 <= t <= k:
        raise ParameterError(f"lp_bound needs 1 <= t <= k, got k={k} t={t}")

    # Variables: A_1..A_k, then one slack per inequality row, then one
    # artificial per equality row. Each row j is negated so that its
    # right-hand side C(k, j) is positive.
    n_slack = k - t
    n_vars = k + n_slack + t
    rows, rhs, basis, artificial = [], [], [], []
    for j in range(1, k + 1):
        row = [Fraction(-krawtchouk(j, i, k)) for i in range(1, k + 1)]
        row += [Fraction(0)] * (n_slack + t)
        if j <= t:
            col = k + n_slack + (j - 1)
            artificial.append(col)
        else:
            col = k + (j - t - 1)
        row[col] = Fraction(1)
        basis.append(col)
        rows.append(row)
        rhs.append(Fraction(math.comb(k, j)))
    cost = [Fraction(1)] * k + [Fraction(0)] * (n_slack + t)

    solver = ExactSimplex(rows, rhs, cost, basis, artificial)
    x, value = solver.solve()
    # Negated rows flip the sign of their multipliers back.
    dual = [-y for y in solver.duals(cost)]
    cert = LPCertificate(
        k=k,
        t=t,
        optimum=1 + value,
        distribution=(Fraction(1), *x[:k]),
        dual=tuple(dual),
        pivots=solver.pivots,
    )
    logger.info("lp_bound(k=%d, t=%d) = %s after %d pivots", k, t, cert.optimum, solver.pivots)
    return cert


@dataclass
class CertificateCheck:
    ok: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: LPCertificate) -> CertificateCheck:
    """
    Replay every primal constraint and the dual optimality identity

    Independent of the solver: only Krawtchouk values and exact arithmetic.
    """
    k, t = cert.k, cert.t
    A = cert.distribution
    y = cert.dual
    if len(A) != k + 1 or len(y) != k:
        return CertificateCheck(False, "certificate has wrong dimensions")
    if A[0] != 1:
        return CertificateCheck(False, f"A_0 = {A[0]}, expected 1")
    for i, a in enumerate(A):
        if a < 0:
            return CertificateCheck(False, f"A_{i} = {a} is negative")
    for j in range(1, k + 1):
        value = sum(krawtchouk(j, i, k) * a for i, a in enumerate(A))
        if j <= t and value != 0:
            return CertificateCheck(False, f"equality j={j}: sum K_{j}(i) A_i = {value} != 0")
        if j > t and value < 0:
            return CertificateCheck(False, f"inequality j={j}: sum K_{j}(i) A_i = {value} < 0")
    if sum(A) != cert.optimum:
        return CertificateCheck(False, f"objective: sum A_i = {sum(A)} != optimum {cert.optimum}")
    for j in range(t + 1, k + 1):
        if y[j - 1] < 0:
            return CertificateCheck(False, f"dual multiplier y_{j} = {y[j - 1]} is negative")
    for i in range(1, k + 1):
        lhs = sum(y[j - 1] * krawtchouk(j, i, k) for j in range(1, k + 1))
        if lhs > 1:
            return CertificateCheck(False, f"dual constraint i={i}: {lhs} > 1")
    dual_value = 1 - sum(y[j - 1] * math.comb(k, j) for j in range(1, k + 1))
    if dual_value != cert.optimum:
        return CertificateCheck(False, f"duality gap: dual value {dual_value} != optimum {cert.optimum}")
    return CertificateCheck(True)
