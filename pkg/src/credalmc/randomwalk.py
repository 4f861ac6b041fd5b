"""Random walks on weighted graphs, precise and interval-weighted.

Vertices are states; a nonnegative weight matrix induces the walk that
leaves ``x`` along ``y`` with probability proportional to ``w(x, y)``.
Undirected (symmetric, connected) weights give the classical reversible
walk started from its stationary distribution; interval weight boxes give
a credal walk whose joint-matrix image stays convex even though the
induced transition set does not.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .core import ProbVector, StochasticMatrix
from .credal import Gamble2, convex_hull_membership
from .errors import (
    DegenerateWeights,
    DirectedUnsupported,
    IsolatedVertex,
)
from . import lp
from .jointrep import JointMatrix
from .numeric import Tolerance, freeze, is_exact_array, require_same_mode, to_matrix

__all__ = [
    "WeightMatrix",
    "IntervalWeightSet",
    "walk_transition",
    "walk_stationary",
    "walk_joint",
    "NonconvexityWitness",
    "transition_set_nonconvexity_witness",
    "walk_lower_expectation",
    "walk_upper_expectation",
    "is_symmetric_weight_set",
]


def _connected(w: np.ndarray) -> bool:
    # union-find over positive-weight edges
    n = w.shape[0]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x in range(n):
        for y in range(x + 1, n):
            if w[x, y] > 0 or w[y, x] > 0:
                parent[find(x)] = find(y)
    return len({find(x) for x in range(n)}) == 1


class WeightMatrix:
    """Edge weights of a graph on states ``0..n-1``; zero means no edge.

    Undirected weights must be symmetric and their positive-weight graph
    connected; directed weights skip both checks.
    """

    __slots__ = ("w", "directed")

    def __init__(self, w, directed: bool = False, exact: bool = False,
                 tol: Tolerance | None = None):
        arr = to_matrix(w, exact)
        tol = tol if tol is not None else Tolerance.default(exact)
        if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"weight matrix must be square, got {arr.shape}")
        if (arr < 0).any():
            raise ValueError("weights must be nonnegative")
        if arr.sum() <= 0:
            raise ValueError("total weight must be positive")
        if not directed:
            if not (abs(arr - arr.T) <= tol.eq).all():
                raise ValueError("undirected weights must be symmetric")
            if not _connected(arr):
                raise ValueError("undirected weight graph must be connected")
        self.w = freeze(arr)
        self.directed = directed

    @property
    def exact(self) -> bool:
        return is_exact_array(self.w)

    @property
    def dim(self) -> int:
        return self.w.shape[0]

    @property
    def outgoing(self) -> np.ndarray:
        return self.w.sum(axis=1)

    @property
    def incoming(self) -> np.ndarray:
        return self.w.sum(axis=0)

    @property
    def total(self):
        return self.w.sum()

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"WeightMatrix(dim={self.dim}, {kind})"


class IntervalWeightSet:
    """Box of weight functions ``lower <= w <= upper``.

    Directed boxes are the primary credal model; :meth:`undirected` builds
    the symmetric-bound special case.
    """

    __slots__ = ("lower", "upper", "directed")

    def __init__(self, lower, upper, directed: bool = True, exact: bool = False,
                 tol: Tolerance | None = None):
        lo = to_matrix(lower, exact)
        hi = to_matrix(upper, exact)
        if lo.shape != hi.shape or lo.shape[0] != lo.shape[1]:
            raise ValueError("bounds must be square matrices of equal shape")
        if (lo < 0).any():
            raise ValueError("weights must be nonnegative")
        if (lo > hi).any():
            raise ValueError("lower bound exceeds upper bound")
        if hi.sum() <= 0:
            raise DegenerateWeights("upper bound has zero total weight")
        self.lower = freeze(lo)
        self.upper = freeze(hi)
        self.directed = directed

    @classmethod
    def undirected(cls, lower, upper, exact: bool = False,
                   tol: Tolerance | None = None) -> "IntervalWeightSet":
        tol = tol if tol is not None else Tolerance.default(exact)
        out = cls(lower, upper, directed=False, exact=exact, tol=tol)
        if not (abs(out.lower - out.lower.T) <= tol.eq).all() or not (
            abs(out.upper - out.upper.T) <= tol.eq
        ).all():
            raise ValueError("undirected weight bounds must be symmetric")
        return out

    @property
    def exact(self) -> bool:
        return is_exact_array(self.lower)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def contains(self, w, tol: Tolerance | None = None) -> bool:
        arr = w.w if isinstance(w, WeightMatrix) else np.asarray(w)
        tol = tol if tol is not None else Tolerance.default(self.exact)
        pad = 0 if self.exact else tol.eq  # keep Fraction arithmetic exact
        return bool(
            (arr >= self.lower - pad).all() and (arr <= self.upper + pad).all()
        )


def walk_transition(w: WeightMatrix, tol: Tolerance | None = None) -> StochasticMatrix:
    """Transition matrix of the walk: each row of weights normalized by the
    vertex's total outgoing weight."""
    out = w.outgoing
    if (out <= 0).any():
        raise IsolatedVertex("a vertex has zero outgoing weight")
    return StochasticMatrix(w.w / out[:, None], w.exact, tol)


def walk_stationary(w: WeightMatrix, tol: Tolerance | None = None) -> ProbVector:
    """Stationary distribution of the undirected walk: vertex weight over
    total weight."""
    if w.directed:
        raise DirectedUnsupported(
            "the weight/total-weight formula holds for undirected walks only"
        )
    out = w.outgoing
    if (out <= 0).any():
        raise IsolatedVertex("a vertex has zero outgoing weight")
    return ProbVector(out / w.total, w.exact, tol)


def walk_joint(w: WeightMatrix, tol: Tolerance | None = None) -> JointMatrix:
    """Joint matrix of two consecutive states of the walk started from the
    stationary distribution: the weights normalized by the total weight."""
    return JointMatrix(w.w / w.total, w.exact, tol)


class NonconvexityWitness(NamedTuple):
    w1: WeightMatrix
    w2: WeightMatrix
    midpoint_transition: StochasticMatrix
    midpoint_in_hull: bool


def transition_set_nonconvexity_witness() -> NonconvexityWitness:
    """A concrete certificate that weight boxes induce non-convex
    transition sets: two symmetric weight matrices whose midpoint's walk
    transition matrix is not a convex combination of the two original walk
    transition matrices (checked exactly, rows stacked into one vector)."""
    w1 = WeightMatrix([[1, 3], [3, 2]], exact=True)
    w2 = WeightMatrix([[1, 5], [5, 2]], exact=True)
    mid = WeightMatrix((w1.w + w2.w) / 2, exact=True)
    p_mid = walk_transition(mid)
    in_hull = convex_hull_membership(
        p_mid, [walk_transition(w1), walk_transition(w2)]
    )
    return NonconvexityWitness(w1, w2, p_mid, in_hull)


def _charnes_cooper(wset: IntervalWeightSet, f: Gamble2, sense: str,
                    tol: Tolerance | None):
    """Optimize ``sum f(x,y) w(x,y) / W(w)`` over the weight box.

    The ratio objective is linearized by substituting ``y = w / W`` and
    ``t = 1 / W``: then ``sum y = 1``, the box becomes ``t*lower <= y <=
    t*upper`` (rows with slack variables), and ``t >= 1 / sum(upper)``
    excludes the degenerate ray.
    """
    exact = require_same_mode(wset.lower, f.values)
    n = wset.dim
    if f.values.shape != (n, n):
        raise ValueError("gamble shape does not match the weight set")
    total_hi = wset.upper.sum()
    if total_hi <= 0:
        raise DegenerateWeights("upper bound has zero total weight")
    dtype = object if exact else float
    m = n * n
    # variables: y (m), t, lower slacks (m), upper slacks (m)
    nvars = m + 1 + 2 * m
    eq = np.zeros((2 * m + 1, nvars), dtype=dtype)
    rhs = np.zeros(2 * m + 1, dtype=dtype)
    lo_flat = wset.lower.ravel()
    hi_flat = wset.upper.ravel()
    for i in range(m):
        # y_i - t*lower_i - s_i = 0
        eq[i, i] = 1
        eq[i, m] = -lo_flat[i]
        eq[i, m + 1 + i] = -1
        # t*upper_i - y_i - u_i = 0
        eq[m + i, i] = -1
        eq[m + i, m] = hi_flat[i]
        eq[m + i, m + 1 + m + i] = -1
    eq[2 * m, :m] = 1
    rhs[2 * m] = 1
    lower = np.zeros(nvars, dtype=dtype)
    lower[m] = 1 / total_hi
    upper = np.full(nvars, math.inf, dtype=dtype)
    objective = np.zeros(nvars, dtype=dtype)
    objective[:m] = f.values.ravel()
    out = lp.solve(
        lp.LinearProgram(objective, eq, rhs, lower, upper, sense), tol
    )
    if out.status != lp.OPTIMAL:
        raise DegenerateWeights(
            f"weight-box expectation program ended {out.status}"
        )
    return out.value


def walk_lower_expectation(wset: IntervalWeightSet, f: Gamble2,
                           tol: Tolerance | None = None):
    """Minimum over the weight box of the expected pair payoff of the walk
    (an exact linear-fractional optimum, not a relaxation)."""
    return _charnes_cooper(wset, f, lp.MIN, tol)


def walk_upper_expectation(wset: IntervalWeightSet, f: Gamble2,
                           tol: Tolerance | None = None):
    return _charnes_cooper(wset, f, lp.MAX, tol)


def is_symmetric_weight_set(wset: IntervalWeightSet,
                            tol: Tolerance | None = None) -> bool:
    """Whether the box is closed under weight transposition, i.e. both
    bounds are symmetric; a symmetric box induces a transposition-closed
    joint set, hence a reversible walk."""
    tol = tol if tol is not None else Tolerance.default(wset.exact)
    return bool(
        (abs(wset.lower - wset.lower.T) <= tol.eq).all()
        and (abs(wset.upper - wset.upper.T) <= tol.eq).all()
    )
