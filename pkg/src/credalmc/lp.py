"""Linear programs for expectation bounds, with a built-in simplex solver.

The solver is a dense two-phase primal simplex using Bland's rule, so runs
are deterministic and, on exact-rational data, terminate with exact optima.
Problems at the intended scale are tiny (tens of variables), which is why a
self-contained reference implementation is preferred over an external
solver; anything honouring the :func:`solve` contract can be swapped in.

Besides the generic solver this module builds the programs for lower and
upper expectations of path functionals over an interval credal set of joint
matrices: the two-step program optimizes directly over one joint matrix,
and the general program introduces a mass function over whole length-``N``
paths tied to one joint-matrix variable per step.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from .errors import BudgetExceeded, EmptyCredalSet
from .numeric import Tolerance, is_exact_array, require_same_mode, to_tensor

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, types only
    from .credal import Gamble2, IntervalJointSet

__all__ = [
    "MIN",
    "MAX",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "LinearProgram",
    "LpOutcome",
    "solve",
    "to_lp_text",
    "lower_expectation_two_step",
    "upper_expectation_two_step",
    "build_nstep_program",
    "lower_expectation_nstep",
    "upper_expectation_nstep",
    "DEFAULT_PATH_BUDGET",
]

MIN = "min"
MAX = "max"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

DEFAULT_PATH_BUDGET = 10**6

# Internal pivot threshold for float tableaus; final feasibility is always
# re-certified against the caller's tolerance.
_PIVOT_EPS = 1e-11


def _is_inf(v) -> bool:
    return isinstance(v, float) and math.isinf(v)


@dataclass(frozen=True)
class LinearProgram:
    """``sense`` the objective ``c . x`` subject to ``eq_lhs @ x == eq_rhs``
    and ``lower <= x <= upper`` (upper entries may be ``math.inf``)."""

    objective: np.ndarray
    eq_lhs: np.ndarray
    eq_rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    sense: str = MIN

    def __post_init__(self):
        n = self.objective.size
        if self.eq_lhs.ndim != 2 or self.eq_lhs.shape[1] != n:
            raise ValueError("equality rows must match the variable count")
        if self.eq_rhs.size != self.eq_lhs.shape[0]:
            raise ValueError("equality right-hand side has the wrong length")
        if self.lower.size != n or self.upper.size != n:
            raise ValueError("bounds must match the variable count")
        if self.sense not in (MIN, MAX):
            raise ValueError(f"sense must be {MIN!r} or {MAX!r}")
        for lo, hi in zip(self.lower, self.upper):
            if not _is_inf(hi) and lo > hi:
                raise ValueError("lower bound exceeds upper bound")

    @property
    def nvars(self) -> int:
        return self.objective.size

    @property
    def exact(self) -> bool:
        return is_exact_array(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    """Solver verdict; ``value`` and ``solution`` are set iff optimal."""

    status: str
    value: object = None
    solution: np.ndarray | None = None


def _pivot(T: np.ndarray, basis: list, r: int, c: int) -> None:
    T[r] = T[r] / T[r, c]
    col = T[:, c].copy()
    col[r] = 0
    T -= np.outer(col, T[r])
    # kill residual drift in the pivot column (exact identity in both modes)
    T[:, c] = 0
    T[r, c] = 1
    basis[r] = c


def _bland_loop(T: np.ndarray, basis: list, ncompete: int, eps) -> str:
    """Pivot to optimality with Bland's anti-cycling rule: enter the lowest
    negative-reduced-cost column, leave on the lowest-index minimum ratio."""
    while True:
        enter = None
        cost = T[-1]
        for j in range(ncompete):
            if cost[j] < -eps:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(len(basis)):
            coef = T[i, enter]
            if coef > eps:
                key = (T[i, -1] / coef, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], enter)


def solve(lp: LinearProgram, tol: Tolerance | None = None) -> LpOutcome:
    """Solve the program with the two-phase simplex method.

    Optimal solutions are re-checked for primal feasibility (within
    ``tol.lp``; exactly in rational mode) before being returned, and
    identical inputs always produce identical outcomes.  Infeasibility and
    unboundedness are reported in the outcome status, never raised.
    """
    exact = lp.exact
    tol = tol if tol is not None else Tolerance.default(exact)
    eps = 0 if exact else _PIVOT_EPS
    dtype = object if exact else float
    n = lp.nvars
    c_min = (-lp.objective if lp.sense == MAX else lp.objective).astype(dtype)

    # standard form: x = lower + y with y >= 0, slack rows for finite uppers
    m0 = lp.eq_lhs.shape[0]
    finite = [i for i in range(n) if not _is_inf(lp.upper[i])]
    rows = m0 + len(finite)
    ncols = n + len(finite)
    A = np.zeros((rows, ncols), dtype=dtype)
    b = np.zeros(rows, dtype=dtype)
    if m0:
        A[:m0, :n] = lp.eq_lhs
        b[:m0] = lp.eq_rhs - lp.eq_lhs @ lp.lower
    for j, i in enumerate(finite):
        A[m0 + j, i] = 1
        A[m0 + j, n + j] = 1
        b[m0 + j] = lp.upper[i] - lp.lower[i]
    for i in range(rows):
        if b[i] < 0:
            A[i] = -A[i]
            b[i] = -b[i]

    # phase 1: artificial basis, minimize total artificial mass
    T = np.zeros((rows + 1, ncols + rows + 1), dtype=dtype)
    T[:rows, :ncols] = A
    for i in range(rows):
        T[i, ncols + i] = 1
    T[:rows, -1] = b
    T[-1, :ncols] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    if exact:
        # plain ints divide to floats under numpy object arithmetic, so the
        # whole tableau must hold Fractions before the first pivot
        T = np.frompyfunc(
            lambda v: v if isinstance(v, Fraction) else Fraction(v), 1, 1
        )(T)
    basis = [ncols + i for i in range(rows)]
    _bland_loop(T, basis, ncols, eps)
    infeas = -T[-1, -1]
    if (infeas != 0) if exact else (infeas > tol.lp):
        return LpOutcome(INFEASIBLE)

    # drive leftover artificials out of the basis; drop redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= ncols:
            enter = None
            for j in range(ncols):
                if (T[i, j] != 0) if exact else (abs(T[i, j]) > eps):
                    enter = j
                    break
            if enter is None:
                T = np.delete(T, i, axis=0)
                basis.pop(i)
                continue
            _pivot(T, basis, i, enter)
        i += 1
    T = np.hstack([T[:, :ncols], T[:, -1:]])

    # phase 2: rebuild reduced costs for the real objective
    c_std = np.zeros(ncols, dtype=dtype)
    c_std[:n] = c_min
    T[-1, :ncols] = c_std
    T[-1, -1] = 0
    for i, bi in enumerate(basis):
        if c_std[bi] != 0:
            T[-1] = T[-1] - c_std[bi] * T[i]
    status = _bland_loop(T, basis, ncols, eps)
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED)

    y = np.zeros(ncols, dtype=dtype)
    for i, bi in enumerate(basis):
        y[bi] = T[i, -1]
    x = lp.lower + y[:n]
    _certify_feasible(lp, x, tol)
    return LpOutcome(OPTIMAL, value=lp.objective @ x, solution=x)


def _certify_feasible(lp: LinearProgram, x: np.ndarray, tol: Tolerance) -> None:
    # int 0 in exact mode: float slack arithmetic would demote Fractions
    slack = 0 if lp.exact else tol.lp
    if lp.eq_lhs.shape[0]:
        residual = abs(lp.eq_lhs @ x - lp.eq_rhs).max()
        if residual > slack:
            raise RuntimeError(f"simplex returned an infeasible point: residual {residual}")
    for v, lo, hi in zip(x, lp.lower, lp.upper):
        if v < lo - slack or (not _is_inf(hi) and v > hi + slack):
            raise RuntimeError("simplex returned a point outside its bounds")


def to_lp_text(lp: LinearProgram, name: str = "program") -> str:
    """Render the program in a plain-text LP interchange layout (objective,
    one line per constraint row, then bounds), for external cross-checking.
    Variables are named positionally ``x0, x1, ...`` in program order."""

    def term(coef, j):
        return f"{'+' if coef >= 0 else '-'} {abs(coef)} x{j}"

    lines = [f"\\ {name}", "Minimize" if lp.sense == MIN else "Maximize"]
    obj = " ".join(term(c, j) for j, c in enumerate(lp.objective) if c != 0)
    lines.append(f" obj: {obj or '0 x0'}")
    lines.append("Subject To")
    for i in range(lp.eq_lhs.shape[0]):
        row = " ".join(term(c, j) for j, c in enumerate(lp.eq_lhs[i]) if c != 0)
        lines.append(f" e{i}: {row or '0 x0'} = {lp.eq_rhs[i]}")
    lines.append("Bounds")
    for j, (lo, hi) in enumerate(zip(lp.lower, lp.upper)):
        if _is_inf(hi):
            lines.append(f" x{j} >= {lo}")
        else:
            lines.append(f" {lo} <= x{j} <= {hi}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _expectation_two_step(iset: "IntervalJointSet", f: "Gamble2", sense: str,
                          tol: Tolerance | None):
    require_same_mode(iset.lower, f.values)
    n = iset.dim
    if f.values.shape != (n, n):
        raise ValueError("gamble shape does not match the credal set")
    dtype = object if iset.exact else float
    lp = LinearProgram(
        objective=f.values.ravel().astype(dtype),
        eq_lhs=np.ones((1, n * n), dtype=dtype),
        eq_rhs=np.ones(1, dtype=dtype) if not iset.exact
        else np.array([1], dtype=object),
        lower=iset.lower.ravel().copy(),
        upper=iset.upper.ravel().copy(),
        sense=sense,
    )
    out = solve(lp, tol)
    if out.status == INFEASIBLE:
        raise EmptyCredalSet("no joint matrix satisfies the interval bounds")
    return out.value


def lower_expectation_two_step(iset: "IntervalJointSet", f: "Gamble2",
                               tol: Tolerance | None = None):
    """Minimum of ``sum Q(x,y) f(x,y)`` over the interval credal set."""
    return _expectation_two_step(iset, f, MIN, tol)


def upper_expectation_two_step(iset: "IntervalJointSet", f: "Gamble2",
                               tol: Tolerance | None = None):
    """Maximum of ``sum Q(x,y) f(x,y)`` over the interval credal set."""
    return _expectation_two_step(iset, f, MAX, tol)


def build_nstep_program(iset: "IntervalJointSet", f, horizon: int, sense: str = MIN,
                        budget: int = DEFAULT_PATH_BUDGET) -> LinearProgram:
    """Program for the expectation of a gamble on length-``horizon`` paths.

    Variables are the path mass function ``p`` (lexicographic path order)
    followed by one joint matrix per step (row-major).  Constraints: each
    step's pairwise marginal of ``p`` equals its joint matrix; adjacent
    joint matrices are marginally compatible (redundant but kept, mirroring
    the three-step layout the model generalizes); joint matrices stay inside
    the interval bounds; ``p`` is a mass function.
    """
    if horizon < 2:
        raise ValueError("the path functional needs a horizon of at least 2")
    n = iset.dim
    npaths = n**horizon
    if npaths > budget:
        raise BudgetExceeded(f"|S|^N = {npaths} exceeds the budget {budget}")
    exact = iset.exact
    dtype = object if exact else float
    fv = to_tensor(getattr(f, "values", f), exact)
    if fv.shape != (n,) * horizon:
        raise ValueError(f"gamble must have shape {(n,) * horizon}, got {fv.shape}")

    nsteps = horizon - 1
    nq = n * n
    nvars = npaths + nsteps * nq
    paths = np.array(list(itertools.product(range(n), repeat=horizon)), dtype=int)

    rows = []
    rhs = []
    for k in range(nsteps):
        pair = paths[:, k] * n + paths[:, k + 1]
        block = np.zeros((nq, nvars), dtype=dtype)
        block[pair, np.arange(npaths)] = 1
        block[np.arange(nq), npaths + k * nq + np.arange(nq)] = -1
        rows.append(block)
        rhs.extend([0] * nq)
    for k in range(nsteps - 1):
        block = np.zeros((n, nvars), dtype=dtype)
        for z in range(n):
            for x in range(n):
                block[z, npaths + k * nq + x * n + z] = 1  # column sum of Q_k
                block[z, npaths + (k + 1) * nq + z * n + x] = -1  # row sum of Q_{k+1}
        rows.append(block)
        rhs.extend([0] * n)
    total = np.zeros((1, nvars), dtype=dtype)
    total[0, :npaths] = 1
    rows.append(total)
    rhs.append(1)

    lower = np.zeros(nvars, dtype=dtype)
    upper = np.full(nvars, math.inf, dtype=dtype)
    for k in range(nsteps):
        lower[npaths + k * nq: npaths + (k + 1) * nq] = iset.lower.ravel()
        upper[npaths + k * nq: npaths + (k + 1) * nq] = iset.upper.ravel()

    objective = np.zeros(nvars, dtype=dtype)
    objective[:npaths] = fv.ravel()
    return LinearProgram(
        objective=objective,
        eq_lhs=np.vstack(rows),
        eq_rhs=np.array(rhs, dtype=dtype),
        lower=lower,
        upper=upper,
        sense=sense,
    )


def _expectation_nstep(iset, f, horizon, sense, tol, budget):
    out = solve(build_nstep_program(iset, f, horizon, sense, budget), tol)
    if out.status == INFEASIBLE:
        raise EmptyCredalSet("no compatible path law satisfies the interval bounds")
    return out.value


def lower_expectation_nstep(iset: "IntervalJointSet", f, horizon: int,
                            tol: Tolerance | None = None,
                            budget: int = DEFAULT_PATH_BUDGET):
    """LP lower bound for the expectation of a path gamble over the set."""
    return _expectation_nstep(iset, f, horizon, MIN, tol, budget)


def upper_expectation_nstep(iset: "IntervalJointSet", f, horizon: int,
                            tol: Tolerance | None = None,
                            budget: int = DEFAULT_PATH_BUDGET):
    return _expectation_nstep(iset, f, horizon, MAX, tol, budget)
