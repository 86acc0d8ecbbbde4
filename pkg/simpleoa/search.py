"""
Exhaustive search for (simple) orthogonal arrays
Row-by-row backtracking over lexicographically sorted row lists, with
per-(column subset, tuple) counters and a hard node budget
"""

import itertools
import logging
import math
import multiprocessing
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from simpleoa.arrays import SymbolArray, full_factorial, multiplicity_census, serialize_oa
from simpleoa.constants import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_WORKERS,
    PROGRESS_INTERVAL,
    SEARCH_MAX_CELLS,
)
from simpleoa.errors import InconclusiveSearch, ParameterError, VerificationError
from simpleoa.strength import verify_strength

logger = logging.getLogger(__name__)

SYMMETRY_ASSUMPTIONS = [
    "first row is all-zero: translating every row by a fixed vector mod s keeps "
    "the strength and the simplicity",
    "rows are listed in nondecreasing lexicographic order (strictly increasing "
    "for simple arrays): an array is a multiset of rows",
]


@dataclass
class SearchOutcome:
    """Result of exists_oa: a verified array, or an exhaustion certificate"""

    found: Optional[SymbolArray]
    exhausted: bool
    nodes_visited: int
    symmetry_assumptions: List[str] = field(default_factory=list)
    reason: Optional[str] = None
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "params": dict(self.params),
            "found": serialize_oa(self.found) if self.found is not None else None,
            "exhausted": self.exhausted,
            "nodes_visited": self.nodes_visited,
            "symmetry_assumptions": list(self.symmetry_assumptions),
            "reason": self.reason,
        }


@dataclass
class MinRowsResult:
    k: int
    s: int
    t: int
    simple_only: bool
    value: Optional[int]
    outcomes: List[SearchOutcome]

    @property
    def exhausted_rows(self) -> List[int]:
        """Row counts certified impossible, in increasing order"""
        return [o.params["N"] for o in self.outcomes if o.exhausted]

    @property
    def witness(self) -> Optional[SymbolArray]:
        return next((o.found for o in self.outcomes if o.found is not None), None)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "t": self.t,
            "simple_only": self.simple_only,
            "value": self.value,
            "exhausted_rows": self.exhausted_rows,
            "outcomes": [o.to_json() for o in self.outcomes],
        }


# ===================== BACKTRACKING =====================

class _Problem(NamedTuple):
    N: int
    k: int
    s: int
    t: int
    simple_only: bool


class _BranchResult(NamedTuple):
    rows: Optional[Tuple[int, ...]]
    nodes: int
    overran: bool


class _BudgetExceeded(Exception):
    pass


@lru_cache(maxsize=8)
def _cell_table(k: int, s: int, t: int) -> Tuple[Tuple[int, ...], ...]:
    """
    For every candidate row (by lexicographic rank) the flat counter indices
    subset_index * s^t + tuple_code it increments

    Subset 0 is the first t columns, so its tuple code is rank // s^(k-t).
    """
    rows = full_factorial(k, s).as_int()
    weights = s ** np.arange(t - 1, -1, -1, dtype=np.int64)
    columns = []
    for index, cols in enumerate(itertools.combinations(range(k), t)):
        codes = rows[:, list(cols)] @ weights if cols else np.zeros(len(rows), dtype=np.int64)
        columns.append(codes + index * s ** t)
    return tuple(tuple(r) for r in np.stack(columns, axis=1).tolist())


class _Walker:
    """Depth-first extension of a sorted row list; one instance per branch"""

    def __init__(self, problem: _Problem, budget: int):
        self.problem = problem
        self.cells = _cell_table(problem.k, problem.s, problem.t)
        self.block = problem.s ** (problem.k - problem.t)
        self.lam = problem.N // problem.s ** problem.t
        self.counts = [0] * (math.comb(problem.k, problem.t) * problem.s ** problem.t)
        self.chosen: List[int] = []
        self.budget = budget
        self.nodes = 0

    def place(self, r: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        if self.nodes % PROGRESS_INTERVAL == 0:
            logger.info("search N=%d: %d nodes, depth %d", self.problem.N, self.nodes, len(self.chosen))
        counts, lam = self.counts, self.lam
        ok = True
        for c in self.cells[r]:
            counts[c] += 1
            if counts[c] > lam:
                ok = False
        self.chosen.append(r)
        return ok

    def remove(self, r: int):
        counts = self.counts
        for c in self.cells[r]:
            counts[c] -= 1
        self.chosen.pop()

    def candidates(self, prev: int) -> range:
        """
        Rows that may follow `prev`

        The prefix on the first t columns never decreases, so block p of rows
        sharing that prefix must hold exactly lambda rows before block p+1
        opens.
        """
        p = prev // self.block
        if self.counts[p] < self.lam:
            return range(prev + int(self.problem.simple_only), (p + 1) * self.block)
        if (p + 1) * self.block >= len(self.cells):
            return range(0)
        return range((p + 1) * self.block, (p + 2) * self.block)

    def extend(self, prev: int) -> bool:
        if len(self.chosen) == self.problem.N:
            return True
        for r in self.candidates(prev):
            if self.place(r) and self.extend(r):
                return True
            self.remove(r)
        return False


def _explore_branch(task: Tuple[_Problem, int, int]) -> _BranchResult:
    """Search every completion whose first two rows are 0 and `second`"""
    problem, second, budget = task
    walker = _Walker(problem, budget=1)
    walker.place(0)
    walker.nodes, walker.budget = 0, budget
    try:
        found = walker.place(second) and walker.extend(second)
    except _BudgetExceeded:
        return _BranchResult(None, walker.nodes, True)
    return _BranchResult(tuple(walker.chosen) if found else None, walker.nodes, False)


def _first_branches(problem: _Problem) -> range:
    walker = _Walker(problem, budget=1)
    walker.place(0)
    return walker.candidates(0)


def _merge(problem: _Problem, results, budget: int):
    """Consume branch results in canonical order; same verdict as a sequential run"""
    total = 1
    for result in results:
        total += result.nodes
        if result.overran or total > budget:
            raise InconclusiveSearch(
                f"node budget {budget} exceeded for OA({problem.N},{problem.k},{problem.s},{problem.t})",
                nodes_visited=total,
            )
        if result.rows is not None:
            return result.rows, total
    return None, total


def _run_sequential(problem: _Problem, branches: range, budget: int):
    def results():
        used = 1
        for second in branches:
            result = _explore_branch((problem, second, budget - used))
            used += result.nodes
            yield result
    return _merge(problem, results(), budget)


def _run_parallel(problem: _Problem, branches: range, budget: int, workers: int):
    tasks = [(problem, second, budget - 1) for second in branches]
    # leaving the pool terminates workers still exploring later branches
    with multiprocessing.Pool(processes=workers) as pool:
        return _merge(problem, pool.imap(_explore_branch, tasks), budget)


def exists_oa(N: int, k: int, s: int, t: int, simple_only: bool = False,
              budget: int = DEFAULT_NODE_BUDGET, workers: int = DEFAULT_WORKERS) -> SearchOutcome:
    """
    Decide whether an OA(N, k, s, t) (simple if requested) exists

    Args:
        N, k, s, t: array parameters
        simple_only: require distinct rows
        budget: maximum number of placed rows before giving up
        workers: processes for the subtrees below the second row

    Returns:
        SearchOutcome; the found array is the lexicographically least sorted one

    Raises:
        InconclusiveSearch: budget exhausted before a verdict
    """
    if N < 1 or k < 1 or s < 2 or not 0 <= t <= k:
        raise ParameterError(f"exists_oa needs N, k >= 1, s >= 2, 0 <= t <= k; got N={N} k={k} s={s} t={t}")
    if budget < 1 or workers < 1:
        raise ParameterError("budget and workers must be positive")
    params = {"N": N, "k": k, "s": s, "t": t, "simple_only": simple_only}

    def exhausted(reason: str, nodes: int = 0) -> SearchOutcome:
        return SearchOutcome(None, True, nodes, list(SYMMETRY_ASSUMPTIONS), reason, params)

    if N % s ** t:
        return exhausted(f"index N/s^t = {N}/{s ** t} is not an integer")
    if simple_only and N > s ** k:
        return exhausted(f"a simple array has at most s^k = {s ** k} rows")
    cells = s ** k * math.comb(k, t)
    if cells > SEARCH_MAX_CELLS:
        raise ParameterError(f"k={k}, s={s}, t={t} needs {cells} counters, over the limit {SEARCH_MAX_CELLS}")

    problem = _Problem(N, k, s, t, simple_only)
    logger.info("searching OA(%d,%d,%d,%d)%s", N, k, s, t, " simple" if simple_only else "")
    if N == 1:
        rows, nodes = (0,), 1
    else:
        branches = _first_branches(problem)
        if workers > 1 and len(branches) > 1:
            rows, nodes = _run_parallel(problem, branches, budget, workers)
        else:
            rows, nodes = _run_sequential(problem, branches, budget)
    if rows is None:
        return exhausted("search space exhausted", nodes)

    table = full_factorial(k, s).as_int()
    A = SymbolArray(table[list(rows)], s)
    report = verify_strength(A, t)
    if not report.holds or (simple_only and not multiplicity_census(A).is_simple):
        raise VerificationError("search produced an array that fails re-verification", report.witness)
    logger.info("found OA(%d,%d,%d,%d) after %d nodes", N, k, s, t, nodes)
    return SearchOutcome(A, False, nodes, list(SYMMETRY_ASSUMPTIONS), None, params)


def min_rows(k: int, s: int, t: int, simple_only: bool = False, N_limit: Optional[int] = None,
             budget: int = DEFAULT_NODE_BUDGET, workers: int = DEFAULT_WORKERS) -> MinRowsResult:
    """
    Smallest N <= N_limit, stepping over multiples of s^t, with an OA(N, k, s, t)

    Every smaller multiple is kept as an exhaustion certificate. The value is
    None when no N up to the limit works.
    """
    step = s ** t
    if N_limit is None:
        N_limit = s ** k
    outcomes = []
    for N in range(step, N_limit + 1, step):
        outcome = exists_oa(N, k, s, t, simple_only=simple_only, budget=budget, workers=workers)
        outcomes.append(outcome)
        if outcome.found is not None:
            return MinRowsResult(k, s, t, simple_only, N, outcomes)
    return MinRowsResult(k, s, t, simple_only, None, outcomes)
