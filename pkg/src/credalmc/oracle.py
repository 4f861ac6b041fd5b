"""Independent brute-force checks used by the test and acceptance suites.

Everything here is deliberately dumb: exhaustive path enumeration, dense
grid scans over interval boxes, and exhaustive assembly of compatible
sequences from grid members.  The point is to cross-check the linear
programs and the reversal calculus by a different route, so none of these
functions share code with the operations they verify.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .core import TransitionLaw, path_probability
from .credal import Gamble2, IntervalJointSet
from .errors import BudgetExceeded, NoFeasibleGridPoint, NoFeasibleGridPointWarning
from .jointrep import JointMatrix, JointSequence, law_from_joint_sequence
from .numeric import Tolerance

__all__ = [
    "GridSpec",
    "enumerate_path_distribution",
    "law_expectation",
    "grid_min_expectation",
    "grid_members",
    "enumerate_compatible_sequences",
    "enumerate_compatible_laws",
]

_GRID_SLOP = 1e-9  # absorbs float accumulation when laying out grid axes


@dataclass(frozen=True)
class GridSpec:
    """Resolution and evaluation budget of a grid scan."""

    step: float
    budget: int = 10_000_000

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        if self.budget < 1:
            raise ValueError("grid budget must be at least 1")


def enumerate_path_distribution(law: TransitionLaw, budget: int = 10**6) -> dict:
    """Probability of every state sequence of the law's horizon."""
    npaths = law.dim**law.horizon
    if npaths > budget:
        raise BudgetExceeded(f"|S|^N = {npaths} exceeds the budget {budget}")
    return {
        path: path_probability(law, path)
        for path in itertools.product(range(law.dim), repeat=law.horizon)
    }


def law_expectation(law: TransitionLaw, f, budget: int = 10**6):
    """Expectation of a path gamble under one precise law, by enumeration."""
    fv = np.asarray(getattr(f, "values", f))
    if fv.shape != (law.dim,) * law.horizon:
        raise ValueError(f"gamble must have shape {(law.dim,) * law.horizon}")
    dist = enumerate_path_distribution(law, budget)
    total = None
    for path, prob in dist.items():
        term = prob * fv[path]
        total = term if total is None else total + term
    return total


def _axis_values(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(np.floor((hi - lo) / step + _GRID_SLOP)) + 1
    return lo + step * np.arange(count)


def grid_min_expectation(iset: IntervalJointSet, f: Gamble2, grid: GridSpec) -> float:
    """Minimum of ``sum f*Q`` over box grid points on the mass-one slice.

    Entries are scanned in row-major order at the grid resolution; the last
    entry is not gridded but repaired to make the total mass one, and the
    point is kept only when the repaired entry lies inside its own bounds.
    The result is within ``Lipschitz(f) * step`` of the true minimum.
    """
    lo = np.asarray(iset.lower, dtype=float).ravel()
    hi = np.asarray(iset.upper, dtype=float).ravel()
    fv = np.asarray(f.values, dtype=float).ravel()
    m = lo.size
    if m == 1:
        if lo[0] - _GRID_SLOP <= 1.0 <= hi[0] + _GRID_SLOP:
            return float(fv[0])
        raise NoFeasibleGridPoint("the single entry cannot carry mass one")
    axes = [_axis_values(lo[i], hi[i], grid.step) for i in range(m - 1)]
    npoints = int(np.prod([a.size for a in axes]))
    if npoints > grid.budget:
        raise BudgetExceeded(f"{npoints} grid points exceed the budget {grid.budget}")
    # broadcast the trailing free entries once; stream over the first axis
    rest = axes[1:]
    shapes = [
        (1,) * i + (a.size,) + (1,) * (len(rest) - 1 - i) for i, a in enumerate(rest)
    ]
    rest_sum = 0.0
    rest_obj = 0.0
    for a, shp, coef in zip(rest, shapes, fv[1 : m - 1]):
        rest_sum = rest_sum + a.reshape(shp)
        rest_obj = rest_obj + coef * a.reshape(shp)
    best = np.inf
    for v0 in axes[0]:
        last = 1.0 - v0 - rest_sum
        ok = (last >= lo[m - 1] - _GRID_SLOP) & (last <= hi[m - 1] + _GRID_SLOP)
        if not np.any(ok):
            continue
        obj = fv[0] * v0 + rest_obj + fv[m - 1] * last
        value = float(np.min(np.where(ok, obj, np.inf)))
        best = min(best, value)
    if not np.isfinite(best):
        raise NoFeasibleGridPoint("no grid point lands on the mass-one slice")
    return best


def grid_members(iset: IntervalJointSet, grid: GridSpec) -> list[JointMatrix]:
    """All grid points of the box that are joint matrices (same scan and
    repair rule as :func:`grid_min_expectation`), in row-major scan order."""
    lo = np.asarray(iset.lower, dtype=float).ravel()
    hi = np.asarray(iset.upper, dtype=float).ravel()
    n = iset.dim
    m = lo.size
    axes = [_axis_values(lo[i], hi[i], grid.step) for i in range(m - 1)]
    npoints = int(np.prod([a.size for a in axes])) if axes else 1
    if npoints > grid.budget:
        raise BudgetExceeded(f"{npoints} grid points exceed the budget {grid.budget}")
    out = []
    for combo in itertools.product(*axes):
        last = 1.0 - sum(combo)
        if lo[m - 1] - _GRID_SLOP <= last <= hi[m - 1] + _GRID_SLOP:
            entries = np.array(combo + (last,)).reshape(n, n)
            entries[entries < 0] = 0.0  # float noise only, never real mass
            out.append(JointMatrix(entries))
    return out


def enumerate_compatible_sequences(
    iset: IntervalJointSet, horizon: int, grid: GridSpec,
    tol: Tolerance | None = None,
) -> list[JointSequence]:
    """Every sequence of grid members of the box that chains into a law:
    adjacent members must have matching marginals within ``tol.eq``."""
    if horizon < 2:
        raise ValueError("a sequence needs a horizon of at least 2")
    tol = tol if tol is not None else Tolerance.default(False)
    members = grid_members(iset, grid)
    if not members:
        warnings.warn(
            "grid scan found no joint matrix inside the box",
            NoFeasibleGridPointWarning,
            stacklevel=2,
        )
        return []
    combos = len(members) ** (horizon - 1)
    if combos > grid.budget:
        raise BudgetExceeded(f"{combos} candidate sequences exceed the budget")
    rows = [m.left_marginal for m in members]
    cols = [m.right_marginal for m in members]
    out = []
    for picks in itertools.product(range(len(members)), repeat=horizon - 1):
        if all(
            np.max(np.abs(cols[a] - rows[b])) <= tol.eq
            for a, b in zip(picks, picks[1:])
        ):
            out.append(JointSequence([members[i] for i in picks], tol))
    return out


def enumerate_compatible_laws(
    iset: IntervalJointSet, horizon: int, grid: GridSpec,
    tol: Tolerance | None = None,
) -> list[TransitionLaw]:
    """Forward laws of all grid-compatible sequences from the box."""
    return [
        law_from_joint_sequence(seq, tol)
        for seq in enumerate_compatible_sequences(iset, horizon, grid, tol)
    ]
