"""
Lower bounds on the number of rows and simplicity verdicts
Rao, Friedman-Bierbrauer, Khalyavin, the multiplicity theorem and its corollary
"""

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from simpleoa.arrays import SymbolArray, multiplicity_census, translate, MultiplicityCensus
from simpleoa.errors import ParameterError, VerificationError
from simpleoa.lp import LPCertificate, lp_bound
from simpleoa.strength import character_sum_check

logger = logging.getLogger(__name__)


# ===================== CLOSED FORMS =====================

def rao_bound(k: int, s: int, t: int) -> int:
    """
    M(k, s, t) = sum_{j <= t/2} C(k, j) (s-1)^j for even t

    Odd t is served for s=2 only, through 2 F(k-1, 2, t-1) = F(k, 2, t).
    """
    if k < 0 or s < 2 or not 0 <= t <= max(k, 0):
        raise ParameterError(f"rao_bound needs s >= 2 and 0 <= t <= k, got k={k} s={s} t={t}")
    if t % 2:
        if s != 2:
            raise ParameterError("odd-strength Rao values are only defined here for s=2")
        return rao_bound_odd(k, t)
    u = t // 2
    return sum(math.comb(k, j) * (s - 1) ** j for j in range(u + 1))


def rao_bound_odd(k: int, t: int) -> int:
    """Binary Rao value for odd t via doubling: 2 M(k-1, 2, t-1)"""
    if t % 2 == 0 or not 1 <= t <= k:
        raise ParameterError(f"rao_bound_odd needs odd 1 <= t <= k, got k={k} t={t}")
    return 2 * rao_bound(k - 1, 2, t - 1)


def friedman_bierbrauer(k: int, s: int, t: int) -> Fraction:
    """s^k (1 - (s-1) k / (s (t+1))), exact and possibly non-positive"""
    return s ** k * (1 - Fraction((s - 1) * k, s * (t + 1)))


def khalyavin_criterion(k: int, t: int, N: int) -> Tuple[bool, bool]:
    """
    Returns (applicable, simplicity_forced_at_equality) for binary arrays

    The bound N >= 2^(k-1) applies when t >= (2k-2)/3 and forces simplicity
    at equality.
    """
    applicable = 3 * t >= 2 * k - 2
    return applicable, applicable and N == 2 ** (k - 1)


# ===================== MULTIPLICITY THEOREM =====================

class VerdictCase(str, enum.Enum):
    FORCED_SIMPLE = "forced_simple"
    MULTIPLICITY_AT_MOST_2 = "multiplicity_at_most_2"
    BOUNDARY_DOUBLED_CASE = "boundary_doubled_case"
    NO_CONCLUSION = "no_conclusion"


@dataclass(frozen=True)
class SimplicityVerdict:
    case: VerdictCase
    rho_max_bound: int
    rao: int
    details: str


def theorem1_verdict(N: int, k: int, s: int, u: int) -> SimplicityVerdict:
    """
    What the multiplicity theorem says about any OA(N, k, s, 2u)

    rho_max <= floor(N / M); N < 2M forces simplicity; N < 3M bounds every
    multiplicity by 2; N = 2M with s=2, u=2, k >= 5 is the doubled boundary.
    """
    if N < 1 or s < 2 or u < 1 or 2 * u > k:
        raise ParameterError(f"theorem1_verdict needs N >= 1, u >= 1, 2u <= k; got N={N} k={k} u={u}")
    M = rao_bound(k, s, 2 * u)
    rho = N // M
    if N < 2 * M:
        case, details = VerdictCase.FORCED_SIMPLE, f"N={N} < 2M={2 * M}: every such array is simple"
    elif N == 2 * M and s == 2 and u == 2 and k >= 5:
        case = VerdictCase.BOUNDARY_DOUBLED_CASE
        details = (
            f"N=2M={N}: simple, or k=5 and the array is two copies of OA(16,5,2,4)"
        )
    elif N < 3 * M:
        case, details = VerdictCase.MULTIPLICITY_AT_MOST_2, f"2M <= N={N} < 3M={3 * M}: multiplicities <= 2"
    else:
        case, details = VerdictCase.NO_CONCLUSION, f"N={N} >= 3M={3 * M}: multiplicities <= {rho}"
    return SimplicityVerdict(case, rho, M, details)


def odd_strength_verdict(N: int, k: int, t: int) -> SimplicityVerdict:
    """Verdict for a binary OA of odd strength t, read at strength t-1"""
    if t % 2 == 0 or t < 3:
        raise ParameterError("odd_strength_verdict needs odd t >= 3")
    return theorem1_verdict(N, k, 2, (t - 1) // 2)


@dataclass(frozen=True)
class ArrayAnalysis:
    verdict: SimplicityVerdict
    census: MultiplicityCensus
    rao_tight: bool
    doubled_even_weight: Optional[bool] = None


def _is_twice_even_weight(A: SymbolArray, census: MultiplicityCensus) -> bool:
    if set(census.counts.values()) != {2} or census.distinct_count != 16:
        return False
    # translate some row to zero; the distinct rows must then all have even weight
    base = next(iter(census.counts))
    shifted = translate(A, base)
    return bool(np.all(shifted.as_int().sum(axis=1) % 2 == 0))


def analyze_array(A: SymbolArray, u: int) -> ArrayAnalysis:
    """
    Apply the multiplicity theorem to a concrete array of strength 2u

    Checks rho_max <= floor(N/M) against the census, and in the doubled
    boundary case with k=5 confirms the two-copies structure.
    """
    check = character_sum_check(A, 2 * u)
    if not check.holds:
        raise VerificationError(
            f"array does not have strength {2 * u}: character sum at {check.failing_v}",
            witness=check.failing_v,
        )
    verdict = theorem1_verdict(A.N, A.k, A.s, u)
    census = multiplicity_census(A)
    if census.max_multiplicity > verdict.rho_max_bound:
        raise VerificationError(
            f"multiplicity {census.max_multiplicity} exceeds floor(N/M)={verdict.rho_max_bound}"
        )
    if verdict.case is VerdictCase.FORCED_SIMPLE and not census.is_simple:
        raise VerificationError("array should be simple but has repeated rows")
    doubled = None
    if verdict.case is VerdictCase.BOUNDARY_DOUBLED_CASE and not census.is_simple:
        doubled = A.k == 5 and _is_twice_even_weight(A, census)
        if not doubled:
            raise VerificationError("non-simple boundary array is not two copies of OA(16,5,2,4)")
    return ArrayAnalysis(verdict, census, A.N == verdict.rao, doubled)


def corollary1_applies(k: int, s: int, t: int, F_upper: int) -> bool:
    """F_upper < 2 M(k, s, t) certifies F*(k, s, t) = F(k, s, t)"""
    if t % 2:
        raise ParameterError("corollary1_applies needs an even strength")
    return F_upper < 2 * rao_bound(k, s, t)


def kerdock_interval_contains(k: int) -> Tuple[bool, Optional[int]]:
    """Whether 2^(m - 1/2) <= k <= 2^m - 1 for some even m >= 4, compared as k^2 >= 2^(2m-1)"""
    if k < 1:
        raise ParameterError("k must be positive")
    m = 4
    while k * k >= 2 ** (2 * m - 1):
        if k <= 2 ** m - 1:
            return True, m
        m += 2
    return False, None


def ell_weights(k: int) -> Optional[Tuple[int, int]]:
    """Row weights (k+1 ± sqrt(k-1))/2 of the doubled boundary case, when integral"""
    if k < 1:
        return None
    kappa = math.isqrt(k - 1)
    if kappa * kappa != k - 1 or (k + 1 + kappa) % 2:
        return None
    return (k + 1 + kappa) // 2, (k + 1 - kappa) // 2


def hadamard_prediction(k: int) -> dict:
    """
    Computable predicates behind the strength-2/3 Hadamard discussion

    Rao plus divisibility give F(k,2,2) >= 4 ceil((k+1)/4); the Sylvester
    family gives F(k,2,2) <= 2^h for 2^(h-1) <= k <= 2^h - 1; the conjectured
    value of F*(k,2,3) is 8 ceil(k/4).
    """
    if k < 2:
        raise ParameterError("need k >= 2")
    h = k.bit_length()
    return {
        "strength2_lower": 4 * math.ceil((k + 1) / 4),
        "strength2_upper": 2 ** h,
        "strength3_conjectured": 8 * math.ceil(k / 4),
        "hadamard_order": k + 1 if (k + 1) % 4 == 0 else None,
    }


# ===================== REPORT =====================

@dataclass
class BoundReport:
    k: int
    s: int
    t: int
    rao: Optional[int]
    friedman_bierbrauer: Fraction
    khalyavin_applicable: bool
    khalyavin_value: int
    lp: Optional[LPCertificate] = None
    best_lower: int = 0
    verdict: Optional[SimplicityVerdict] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "t": self.t,
            "rao": self.rao,
            "fb_num": self.friedman_bierbrauer.numerator,
            "fb_den": self.friedman_bierbrauer.denominator,
            "khalyavin": {
                "applicable": self.khalyavin_applicable,
                "value": self.khalyavin_value,
            },
            "lp": self.lp.to_json() if self.lp else None,
            "verdict": self.verdict.case.value if self.verdict else None,
            "best_lower": self.best_lower,
            "notes": list(self.notes),
        }


def bound_report(k: int, s: int, t: int, lp: bool = False, integral: bool = False) -> BoundReport:
    """
    Every applicable lower bound for (k, s, t)

    Args:
        lp: include the Delsarte LP (binary only)
        integral: round best_lower up to a multiple of s^t
    """
    if k < 1 or s < 2 or not 1 <= t <= k:
        raise ParameterError(f"bound_report needs k >= 1, s >= 2, 1 <= t <= k; got k={k} s={s} t={t}")
    notes = []
    rao = None
    if t % 2 == 0 or s == 2:
        rao = rao_bound(k, s, t)
    else:
        notes.append("no Rao value for odd t with s != 2")
    fb = friedman_bierbrauer(k, s, t)
    kh_applicable = s == 2 and khalyavin_criterion(k, t, 2 ** (k - 1))[0]
    candidates = [1, math.ceil(fb)]
    if rao is not None:
        candidates.append(rao)
    if kh_applicable:
        candidates.append(2 ** (k - 1))
        notes.append(f"t >= (2k-2)/3: N >= 2^(k-1) = {2 ** (k - 1)}, simple at equality")
    cert = None
    if lp:
        if s != 2:
            notes.append("LP bound only available for s=2")
        else:
            cert = lp_bound(k, t)
            candidates.append(math.ceil(cert.optimum))
    best = max(candidates)
    logger.debug("bound_report(k=%d, s=%d, t=%d): candidates %s", k, s, t, candidates)
    if integral:
        step = s ** t
        best = math.ceil(best / step) * step
        notes.append(f"best_lower rounded up to a multiple of s^t = {step}")
    verdict = None
    u = t // 2
    if u >= 1 and (t % 2 == 0 or s == 2):
        verdict = theorem1_verdict(best, k, s, u)
        if t % 2:
            notes.append(f"verdict read at strength {t - 1}")
        if verdict.case is VerdictCase.FORCED_SIMPLE:
            notes.append(f"any OA with N < {2 * verdict.rao} rows is simple")
    return BoundReport(
        k=k, s=s, t=t, rao=rao, friedman_bierbrauer=fb,
        khalyavin_applicable=kh_applicable, khalyavin_value=2 ** (k - 1),
        lp=cert, best_lower=best, verdict=verdict, notes=notes,
    )
