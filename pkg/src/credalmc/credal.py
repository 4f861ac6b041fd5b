"""Credal sets of distributions and of joint matrices.

Two representations are used side by side, with no implicit conversion
between them: finite vertex lists (their convex hull is the modelled set),
which suit hull reasoning and the worked two-state examples, and entrywise
interval bounds on joint matrices, which feed directly into linear
programs.  Converting a box into vertices is exponential and deliberately
not offered.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import lp
from .core import ProbVector, StochasticMatrix
from .errors import EmptyCredalSet
from .jointrep import JointMatrix, joint_from
from .numeric import (
    Tolerance,
    freeze,
    is_exact_array,
    require_same_mode,
    to_matrix,
)

__all__ = [
    "VertexCredalSet",
    "MatrixSet",
    "IntervalJointSet",
    "Gamble2",
    "left_marginals",
    "right_marginals",
    "is_symmetric_set",
    "tighten_bounds",
    "minimal_reversible_extension",
    "minimal_interval_hull",
    "convex_hull_membership",
    "check_invariant_hull",
    "forward_joint_set_vertices",
    "reverse_gamble",
]


class VertexCredalSet:
    """Credal set of mass functions given by finitely many vertices."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[ProbVector]):
        vertices = tuple(vertices)
        if not vertices:
            raise ValueError("vertex credal set must be nonempty")
        require_same_mode(*(v.entries for v in vertices))
        if len({len(v) for v in vertices}) > 1:
            raise ValueError("all vertices must share one dimension")
        self.vertices = vertices

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


class MatrixSet:
    """Finite family of transition matrices; ``take_hull`` says whether the
    modelled set is the family itself or its convex hull."""

    __slots__ = ("vertices", "take_hull")

    def __init__(self, vertices: Sequence[StochasticMatrix], take_hull: bool = False):
        vertices = tuple(vertices)
        if not vertices:
            raise ValueError("matrix set must be nonempty")
        require_same_mode(*(p.entries for p in vertices))
        if len({p.dim for p in vertices}) > 1:
            raise ValueError("all matrices must share one dimension")
        self.vertices = vertices
        self.take_hull = take_hull

    @property
    def dim(self) -> int:
        return self.vertices[0].dim

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


class IntervalJointSet:
    """All joint matrices lying entrywise between two bounds.

    The bounds themselves need not be joint matrices.  Nonemptiness demands
    the lower entries sum to at most one and the upper entries to at least
    one; membership of ``Q`` means ``lower <= Q <= upper`` with total mass
    one.
    """

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper, exact: bool = False, tol: Tolerance | None = None):
        lo = to_matrix(lower, exact)
        hi = to_matrix(upper, exact)
        tol = tol if tol is not None else Tolerance.default(exact)
        if lo.shape != hi.shape or lo.shape[0] != lo.shape[1]:
            raise ValueError("bounds must be square matrices of equal shape")
        if (lo < 0).any():
            raise ValueError("lower bound has a negative entry")
        if (lo > hi).any():
            raise ValueError("lower bound exceeds upper bound")
        if lo.sum() > 1 + tol.sum or hi.sum() < 1 - tol.sum:
            raise EmptyCredalSet(
                "bounds leave no room for a joint matrix of total mass 1"
            )
        self.lower = freeze(lo)
        self.upper = freeze(hi)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.lower)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def contains(self, Q, tol: Tolerance | None = None) -> bool:
        """Membership test for a joint matrix (or raw array)."""
        q = Q.entries if isinstance(Q, JointMatrix) else np.asarray(Q)
        tol = tol if tol is not None else Tolerance.default(self.exact)
        if q.shape != self.lower.shape:
            return False
        pad = 0 if self.exact else tol.eq  # keep Fraction arithmetic exact
        return bool(
            (q >= self.lower - pad).all()
            and (q <= self.upper + pad).all()
            and abs(q.sum() - 1) <= max(tol.sum, tol.eq)
        )

    def transpose(self) -> "IntervalJointSet":
        return IntervalJointSet(
            self.lower.T.copy(), self.upper.T.copy(), self.exact
        )

    def __repr__(self) -> str:
        return f"IntervalJointSet(dim={self.dim})"


class Gamble2:
    """Real payoff attached to each ordered pair of consecutive states."""

    __slots__ = ("values",)

    def __init__(self, values, exact: bool = False):
        arr = to_matrix(values, exact)
        if arr.shape[0] != arr.shape[1]:
            raise ValueError("a two-step gamble must be square")
        if not exact and not np.isfinite(arr).all():
            raise ValueError("gamble values must be finite")
        self.values = freeze(arr)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.values)

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def _entry_bounds(iset: IntervalJointSet, objective: np.ndarray,
                  tol: Tolerance | None):
    """(min, max) of a linear functional of Q over the interval set."""
    dtype = object if iset.exact else float
    one = np.array([1], dtype=dtype)
    results = []
    for sense in (lp.MIN, lp.MAX):
        out = lp.solve(
            lp.LinearProgram(
                objective=objective,
                eq_lhs=np.ones((1, objective.size), dtype=dtype),
                eq_rhs=one,
                lower=iset.lower.ravel().copy(),
                upper=iset.upper.ravel().copy(),
                sense=sense,
            ),
            tol,
        )
        if out.status == lp.INFEASIBLE:
            raise EmptyCredalSet("no joint matrix satisfies the interval bounds")
        results.append(out.value)
    return tuple(results)


def _marginal_objective(n: int, state: int, side: str, exact: bool) -> np.ndarray:
    obj = np.zeros(n * n, dtype=object if exact else float)
    if side == "left":
        obj[state * n:(state + 1) * n] = 1
    else:
        obj[state::n] = 1
    return obj


def left_marginals(iset: IntervalJointSet, tol: Tolerance | None = None):
    """Per-state [min, max] of the earlier-state marginal over the set,
    each endpoint from one linear program."""
    return [
        _entry_bounds(iset, _marginal_objective(iset.dim, x, "left", iset.exact), tol)
        for x in range(iset.dim)
    ]


def right_marginals(iset: IntervalJointSet, tol: Tolerance | None = None):
    """Per-state [min, max] of the later-state marginal over the set."""
    return [
        _entry_bounds(iset, _marginal_objective(iset.dim, x, "right", iset.exact), tol)
        for x in range(iset.dim)
    ]


def is_symmetric_set(iset: IntervalJointSet, tol: Tolerance | None = None) -> bool:
    """Symmetry of both bounds.  This characterizes closure of the set
    under transposition only when the bounds are exact (attained); tighten
    with :func:`tighten_bounds` first when that is not known."""
    tol = tol if tol is not None else Tolerance.default(iset.exact)
    return bool(
        (abs(iset.lower - iset.lower.T) <= tol.eq).all()
        and (abs(iset.upper - iset.upper.T) <= tol.eq).all()
    )


def tighten_bounds(iset: IntervalJointSet, tol: Tolerance | None = None) -> IntervalJointSet:
    """Replace each bound entry by its attained extreme over the set
    (two LPs per entry), so the returned bounds are exact."""
    n = iset.dim
    exact = iset.exact
    lo = np.zeros((n, n), dtype=object if exact else float)
    hi = np.zeros((n, n), dtype=object if exact else float)
    for x in range(n):
        for y in range(n):
            obj = np.zeros(n * n, dtype=object if exact else float)
            obj[x * n + y] = 1
            lo[x, y], hi[x, y] = _entry_bounds(iset, obj, tol)
    return IntervalJointSet(lo, hi, exact, tol)


def minimal_reversible_extension(
    mats: Sequence[JointMatrix], tol: Tolerance | None = None
) -> list[JointMatrix]:
    """Smallest transposition-closed family containing the input: the input
    plus the transposes, with duplicates (within ``tol.eq``) removed."""
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one joint matrix")
    tol = tol if tol is not None else Tolerance.default(mats[0].exact)
    out: list[JointMatrix] = []
    for cand in mats + [m.transpose(tol) for m in mats]:
        if not any(
            (abs(cand.entries - kept.entries) <= tol.eq).all() for kept in out
        ):
            out.append(cand)
    return out


def minimal_interval_hull(
    mats: Sequence[JointMatrix], tol: Tolerance | None = None
) -> IntervalJointSet:
    """Tightest interval bounds containing every given joint matrix."""
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one joint matrix")
    lo = mats[0].entries.copy()
    hi = mats[0].entries.copy()
    for m in mats[1:]:
        lo = np.minimum(lo, m.entries)
        hi = np.maximum(hi, m.entries)
    return IntervalJointSet(lo, hi, mats[0].exact, tol)


def _flat(value) -> np.ndarray:
    if isinstance(value, ProbVector):
        return value.entries.ravel()
    if isinstance(value, (JointMatrix, StochasticMatrix)):
        return value.entries.ravel()
    return np.asarray(value).ravel()


def convex_hull_membership(target, vertices: Sequence, tol: Tolerance | None = None) -> bool:
    """Whether ``target`` is a convex combination of the vertices, decided
    by LP feasibility.  In float mode the matching equalities carry a
    ``tol.lp`` slack; in exact mode membership is decided exactly."""
    verts = [_flat(v) for v in vertices]
    if not verts:
        raise ValueError("need at least one vertex")
    t = _flat(target)
    exact = require_same_mode(t, *verts)
    tol = tol if tol is not None else Tolerance.default(exact)
    dtype = object if exact else float
    nv = len(verts)
    d = t.size
    slack = 0 if exact else tol.lp
    # variables: nv hull weights, then (if float) one +/- slack pair per row
    nvars = nv + (0 if exact else 2 * d)
    eq = np.zeros((d + 1, nvars), dtype=dtype)
    rhs = np.zeros(d + 1, dtype=dtype)
    for j, v in enumerate(verts):
        eq[:d, j] = v
    if not exact:
        eq[np.arange(d), nv + np.arange(d)] = 1
        eq[np.arange(d), nv + d + np.arange(d)] = -1
    rhs[:d] = t
    eq[d, :nv] = 1
    rhs[d] = 1
    lower = np.zeros(nvars, dtype=dtype)
    upper = np.empty(nvars, dtype=dtype)
    upper[:nv] = 1
    if not exact:
        upper[nv:] = slack
    out = lp.solve(
        lp.LinearProgram(
            objective=np.zeros(nvars, dtype=dtype),
            eq_lhs=eq,
            eq_rhs=rhs,
            lower=lower,
            upper=upper,
        ),
        tol,
    )
    return out.status == lp.OPTIMAL


def check_invariant_hull(
    vertices: Sequence[ProbVector] | VertexCredalSet,
    mats: MatrixSet,
    tol: Tolerance | None = None,
):
    """Verify that pushing each hull vertex through each matrix lands back
    inside the hull.  Returns ``(True, None)`` or ``(False, (q, P, qP))``
    with the first violating triple."""
    if isinstance(vertices, VertexCredalSet):
        vertices = vertices.vertices
    for q in vertices:
        for P in mats:
            exact = require_same_mode(q.entries, P.entries)
            image = ProbVector(q.entries @ P.entries, exact, tol)
            if not convex_hull_membership(image, list(vertices), tol):
                return False, (q, P, image)
    return True, None


def forward_joint_set_vertices(
    marg: VertexCredalSet, mats: MatrixSet, tol: Tolerance | None = None
) -> list[JointMatrix]:
    """Generators ``diag(q) P`` of the one-step joint set induced by a
    marginal credal set and a transition set (all vertex pairs, in order)."""
    if marg.dim != mats.dim:
        raise ValueError("marginal set and matrix set dimensions differ")
    return [joint_from(q, P, tol) for q in marg for P in mats]


def reverse_gamble(f):
    """Payoff of the reversed path: ``f*(x_1..x_N) = f(x_N..x_1)``."""
    if isinstance(f, Gamble2):
        return Gamble2(f.values.T.copy(), f.exact)
    arr = np.asarray(f)
    return np.transpose(arr, axes=tuple(reversed(range(arr.ndim)))).copy()
