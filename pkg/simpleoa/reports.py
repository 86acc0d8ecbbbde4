"""
Command reports for simpleoa
Runs each command against the library and collects results with provenance
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from simpleoa import constructions
from simpleoa.arrays import (
    SymbolArray,
    full_factorial,
    multiplicity_census,
    select_columns,
    serialize_oa,
)
from simpleoa.boolean import BooleanFunction, ci_order, support_to_oa, walsh_spectrum
from simpleoa.bounds import analyze_array, bound_report, ell_weights, VerdictCase
from simpleoa.codes import code_13_3_7, two_row_code
from simpleoa.constants import (
    REFERENCE_MINIMAL_ROWS,
    SUBSET_VERIFY_LIMIT,
    TABLE_SEARCH_BUDGET,
    TABLE_SEARCH_ROW_LIMIT,
)
from simpleoa.errors import InconclusiveSearch, OAError, ParameterError
from simpleoa.lp import verify_certificate
from simpleoa.search import exists_oa, min_rows
from simpleoa.strength import holds_strength, max_strength, verify_strength

logger = logging.getLogger(__name__)

SOURCES = ("construction", "search", "bound", "lp", "verified-file")


@dataclass
class Report:
    """What a command computed, and which module certifies each claim"""

    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    provenance: List[Tuple[str, str]] = field(default_factory=list)
    success: bool = True
    message: str = ""

    def claim(self, claim: str, source: str):
        if source not in SOURCES:
            raise ParameterError(f"unknown provenance source {source!r}")
        self.provenance.append((claim, source))

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": dict(self.inputs),
            "results": dict(self.results),
            "provenance": [{"claim": c, "source": s} for c, s in self.provenance],
            "success": self.success,
            "message": self.message,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(
            command=data["command"],
            inputs=dict(data["inputs"]),
            results=dict(data["results"]),
            provenance=[(p["claim"], p["source"]) for p in data["provenance"]],
            success=bool(data["success"]),
            message=data.get("message", ""),
        )


def _params(A: SymbolArray) -> dict:
    return {"N": A.N, "k": A.k, "s": A.s}


# ===================== VERIFY / ANALYZE =====================

def verify_report(A: SymbolArray, t: Optional[int] = None) -> Report:
    """Strength check at t, or the largest strength when t is omitted"""
    report = Report("verify", {"t": t, **_params(A)})
    census = multiplicity_census(A)
    report.results.update(simple=census.is_simple, max_multiplicity=census.max_multiplicity)
    if t is None:
        best = max_strength(A)
        report.results["max_strength"] = best
        report.message = f"OA({A.N},{A.k},{A.s},{best})"
        report.claim(f"strength {best}", "verified-file")
        return report

    outcome = verify_strength(A, t)
    report.results.update(holds=outcome.holds, lambda_=str(outcome.lambda_))
    if outcome.holds:
        report.message = f"OA({A.N},{A.k},{A.s},{t}) with index {outcome.lambda_}"
        report.claim(f"strength {t}", "verified-file")
    else:
        w = outcome.witness
        report.success = False
        report.results["witness"] = {
            "columns": [c + 1 for c in w.columns],
            "symbols": "".join(map(str, w.symbols)),
            "observed": w.observed,
            "expected": str(w.expected),
        }
        report.message = (
            f"strength {t} fails: tuple {''.join(map(str, w.symbols))} on columns "
            f"{','.join(str(c + 1) for c in w.columns)} appears {w.observed} times, "
            f"expected {w.expected}"
        )
    return report


def analyze_report(A: SymbolArray, u: int) -> Report:
    analysis = analyze_array(A, u)
    verdict = analysis.verdict
    report = Report("analyze", {"u": u, **_params(A)})
    report.results.update(
        strength=2 * u,
        rao=verdict.rao,
        rho_max=analysis.census.max_multiplicity,
        rho_max_bound=verdict.rho_max_bound,
        simple=analysis.census.is_simple,
        verdict=verdict.case.value,
        rao_tight=analysis.rao_tight,
        details=verdict.details,
    )
    if verdict.case is VerdictCase.BOUNDARY_DOUBLED_CASE:
        report.results["ell_weights"] = ell_weights(A.k)
        report.results["doubled_even_weight"] = analysis.doubled_even_weight
    report.claim(f"strength {2 * u}", "verified-file")
    report.claim(f"rho_max <= {verdict.rho_max_bound}", "bound")
    tight = ", Rao-tight" if analysis.rao_tight else ""
    report.message = f"{verdict.case.value}: rho_max={analysis.census.max_multiplicity} <= {verdict.rho_max_bound}{tight}"
    return report


# ===================== BOUND =====================

def bound_command_report(k: int, s: int, t: int, lp: bool = False, integral: bool = False) -> Report:
    bounds = bound_report(k, s, t, lp=lp, integral=integral)
    report = Report("bound", {"k": k, "s": s, "t": t, "lp": lp, "integral": integral})
    report.results.update(bounds.to_json())
    if bounds.rao is not None:
        report.claim(f"Rao bound {bounds.rao}", "bound")
    report.claim(f"Friedman-Bierbrauer bound {bounds.friedman_bierbrauer}", "bound")
    if bounds.lp is not None:
        check = verify_certificate(bounds.lp)
        report.results["lp_certificate_ok"] = check.ok
        if not check:
            report.success = False
            report.message = f"LP certificate failed its replay: {check.violation}"
            return report
        report.claim(f"LP bound {bounds.lp.optimum}", "lp")
    report.claim(f"best lower bound {bounds.best_lower}", "lp" if bounds.lp is not None else "bound")
    report.message = f"F({k},{s},{t}) >= {bounds.best_lower}"
    return report


# ===================== CONSTRUCT =====================

def construct_report(kind: str, A: SymbolArray, strength: int, inputs: dict) -> Report:
    report = Report("construct", {"kind": kind, **inputs})
    report.results.update(strength=strength, simple=multiplicity_census(A).is_simple,
                          array=serialize_oa(A), **_params(A))
    report.claim(f"OA({A.N},{A.k},{A.s},{strength})", "construction")
    report.message = f"{kind}: OA({A.N},{A.k},{A.s},{strength})"
    return report


# ===================== SEARCH =====================

def search_report(k: int, s: int, t: int, simple_only: bool, N: Optional[int] = None,
                  max_N: Optional[int] = None, budget: int = None, workers: int = 1) -> Report:
    """
    Existence at a fixed N, or the minimum over multiples of s^t up to max_N

    Raises InconclusiveSearch when the budget runs out.
    """
    inputs = {"k": k, "s": s, "t": t, "simple_only": simple_only, "N": N, "max_N": max_N,
              "budget": budget, "workers": workers}
    report = Report("search", inputs)
    kwargs = {"workers": workers}
    if budget is not None:
        kwargs["budget"] = budget
    kind = "simple " if simple_only else ""
    if N is not None:
        outcome = exists_oa(N, k, s, t, simple_only=simple_only, **kwargs)
        report.results.update(outcome.to_json())
        if outcome.found is not None:
            report.claim(f"{kind}OA({N},{k},{s},{t}) exists", "search")
            report.message = f"found {kind}OA({N},{k},{s},{t})"
        else:
            report.claim(f"no {kind}OA({N},{k},{s},{t})", "search")
            report.message = f"no {kind}OA({N},{k},{s},{t}): {outcome.reason}"
        return report

    result = min_rows(k, s, t, simple_only=simple_only, N_limit=max_N, **kwargs)
    report.results.update(result.to_json())
    for rows in result.exhausted_rows:
        report.claim(f"no {kind}OA({rows},{k},{s},{t})", "search")
    if result.value is None:
        report.message = f"no {kind}OA(N,{k},{s},{t}) with N <= {max_N or s ** k}"
    else:
        report.claim(f"minimum N = {result.value}", "search")
        report.message = f"minimum {kind}OA(N,{k},{s},{t}) has N = {result.value}"
    return report


# ===================== TABLE =====================

@dataclass
class TableCell:
    k: int
    t: int
    lower: int
    upper: Optional[int]
    lower_source: str
    upper_source: Optional[str]
    reference: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "t": self.t,
            "lower": self.lower,
            "upper": self.upper,
            "resolved": self.resolved,
            "lower_source": self.lower_source,
            "upper_source": self.upper_source,
            "reference": self.reference,
            "notes": list(self.notes),
        }


def _catalogue(max_k: int) -> List[Tuple[str, Callable[[], SymbolArray], int]]:
    """Simple binary arrays the table may restrict to fewer columns"""
    entries = [(f"full-factorial(k={max_k})", lambda: full_factorial(max_k), max_k)]
    h = 2
    while 2 ** (h - 1) <= max_k:
        entries.append((f"sylvester(h={h})", lambda h=h: constructions.sylvester_oa(h), 2))
        h += 1
    for k in range(2, max_k + 1):
        entries.append((f"even-weight(k={k})", lambda k=k: constructions.even_weight_oa(k), k - 1))
    for k in range(3, max_k + 1):
        # dual of a [k, 2, floor(2k/3)] code: 2^(k-2) rows, strength floor(2k/3) - 1
        entries.append((f"dual[{k},2,{2 * k // 3}]", lambda k=k: constructions.dual_code_oa(two_row_code(k)),
                        2 * k // 3 - 1))
    if max_k >= 6:
        entries.append(("shortened-nordstrom-robinson", lambda: constructions.shortened_kerdock(15), 4))
        entries.append(("nordstrom-robinson", constructions.nordstrom_robinson, 5))
        entries.append(("dual[13,3,7]", lambda: constructions.dual_code_oa(code_13_3_7()), 6))
    return entries


class _UpperBounds:
    """Smallest simple binary arrays found for each (k, t), built on demand"""

    def __init__(self, max_k: int):
        self.catalogue = _catalogue(max_k)
        self.built: Dict[str, SymbolArray] = {}
        self.best: Dict[Tuple[int, int], Tuple[SymbolArray, str]] = {}

    def _build(self, name, builder) -> SymbolArray:
        if name not in self.built:
            self.built[name] = builder()
        return self.built[name]

    def get(self, k: int, t: int) -> Optional[Tuple[SymbolArray, str]]:
        if (k, t) in self.best:
            return self.best[(k, t)]
        candidates = []
        if t == 0:
            candidates.append((SymbolArray.from_rows([[0] * k]), "construction: single zero row"))
        for name, builder, strength in self.catalogue:
            if strength < t:
                continue
            A = self._build(name, builder)
            if A.k < k:
                continue
            B = select_columns(A, range(k))
            if multiplicity_census(B).is_simple:
                candidates.append((B, name))
        if t % 2 and k >= 2:
            base = self.get(k - 1, t - 1)
            if base is not None:
                doubled = constructions.double_strength(base[0], strength=t - 1)
                candidates.append((doubled, f"double({base[1]})"))
        if not candidates:
            self.best[(k, t)] = None
            return None
        A, name = min(candidates, key=lambda c: c[0].N)
        if not holds_strength(A, t, SUBSET_VERIFY_LIMIT):
            raise OAError(f"catalogue array {name} fails strength {t} on {k} columns")
        self.best[(k, t)] = (A, name)
        return self.best[(k, t)]


def _search_cell(cell: TableCell, budget: int):
    """Close the gap between lower and upper by exhaustive search on small N"""
    step = 2 ** cell.t
    limit = min(cell.upper or TABLE_SEARCH_ROW_LIMIT, TABLE_SEARCH_ROW_LIMIT)
    N = cell.lower
    while N <= limit and N < (cell.upper or limit + 1):
        try:
            outcome = exists_oa(N, cell.k, 2, cell.t, simple_only=True, budget=budget)
        except InconclusiveSearch as e:
            cell.notes.append(f"search inconclusive at N={N} after {e.nodes_visited} nodes")
            return
        except ParameterError as e:
            cell.notes.append(f"search skipped: {e}")
            return
        if outcome.found is not None:
            cell.upper, cell.upper_source = N, "search"
            return
        cell.lower, cell.lower_source = N + step, "search"
        N += step


def table_report(max_k: int, max_t: int, lp: bool = True, search: bool = False,
                 budget: int = TABLE_SEARCH_BUDGET) -> Report:
    """
    Certified intervals [lower, upper] for the minimal simple binary OA sizes

    Lower bounds come from bounds/lp, upper bounds from verified constructions
    (and optionally search). A cell is resolved only when both meet.
    """
    if max_k < 1 or max_t < 1:
        raise ParameterError("max_k and max_t must be positive")
    report = Report("table", {"max_k": max_k, "max_t": max_t, "lp": lp, "search": search})
    uppers = _UpperBounds(max_k)
    cells = []
    for k in range(1, max_k + 1):
        for t in range(1, min(k, max_t) + 1):
            bounds = bound_report(k, 2, t, lp=lp, integral=True)
            lp_lower = bounds.lp is not None and bounds.lp.integer_bound >= bounds.best_lower
            upper = uppers.get(k, t)
            cell = TableCell(
                k=k,
                t=t,
                lower=bounds.best_lower,
                upper=upper[0].N if upper else None,
                lower_source="lp" if lp_lower else "bound",
                upper_source="construction" if upper else None,
                reference=REFERENCE_MINIMAL_ROWS.get((k, t)),
            )
            if upper:
                cell.notes.append(f"upper from {upper[1]}")
            if search and not cell.resolved:
                _search_cell(cell, budget)
            if cell.resolved and cell.reference is not None and cell.reference != cell.lower:
                logger.warning("cell (%d,%d) resolved to %d, reference value %d", k, t, cell.lower, cell.reference)
            report.claim(f"F*({k},2,{t}) >= {cell.lower}", cell.lower_source)
            if cell.upper is not None:
                report.claim(f"F*({k},2,{t}) <= {cell.upper}", cell.upper_source)
            cells.append(cell)
    resolved = sum(c.resolved for c in cells)
    report.results["cells"] = [c.to_json() for c in cells]
    report.results["resolved"] = resolved
    report.message = f"{resolved} of {len(cells)} cells resolved"
    return report


# ===================== FOURIER =====================

def fourier_report(f: BooleanFunction, spectrum: bool = False) -> Report:
    report = Report("fourier", {"k": f.k})
    order = ci_order(f)
    report.results.update(weight=f.weight, ci_order=order)
    report.results["support_strength"] = max_strength(support_to_oa(f))
    if spectrum:
        report.results["spectrum"] = walsh_spectrum(f).tolist()
    report.claim(f"correlation-immune of order {order}", "verified-file")
    report.message = f"weight {f.weight}, correlation-immune of order {order}"
    return report
