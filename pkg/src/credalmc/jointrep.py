"""Joint-distribution (edge-measure) matrices for two consecutive states.

A joint matrix ``Q`` stores the probability of observing the ordered pair
``(x, y)`` at adjacent times; its row sums are the earlier marginal and its
column sums the later one.  A marginally compatible sequence of joint
matrices encodes an inhomogeneous chain without ever dividing by marginals,
so zero-probability states need no special treatment, and time reversal is
just transposition in reverse order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import ProbVector, StochasticMatrix, TransitionLaw
from .errors import IncompatibleSequence
from .numeric import Tolerance, freeze, is_exact_array, require_same_mode, to_matrix

__all__ = [
    "JointMatrix",
    "JointSequence",
    "joint_from",
    "forward_pair_from",
    "is_marginally_compatible",
    "law_from_joint_sequence",
    "path_probability_joint",
    "reverse_joint_sequence",
    "is_symmetric",
]


class JointMatrix:
    """Joint distribution of an ordered pair of states: nonnegative entries
    summing to one."""

    __slots__ = ("entries",)

    def __init__(self, entries, exact: bool = False, tol: Tolerance | None = None):
        arr = to_matrix(entries, exact)
        tol = tol if tol is not None else Tolerance.default(exact)
        if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"joint matrix must be square, got {arr.shape}")
        if (arr < 0).any():
            raise ValueError("joint matrix has a negative entry")
        if abs(arr.sum() - 1) > tol.sum:
            raise ValueError(f"joint matrix entries sum to {arr.sum()!r}, not 1")
        self.entries = freeze(arr)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def left_marginal(self) -> np.ndarray:
        """Row sums: the distribution of the earlier state."""
        return self.entries.sum(axis=1)

    @property
    def right_marginal(self) -> np.ndarray:
        """Column sums: the distribution of the later state."""
        return self.entries.sum(axis=0)

    def transpose(self, tol: Tolerance | None = None) -> "JointMatrix":
        return JointMatrix(self.entries.T.copy(), self.exact, tol)

    def __getitem__(self, xy):
        return self.entries[xy]

    def __repr__(self) -> str:
        return f"JointMatrix({[list(r) for r in self.entries]!r})"


class JointSequence:
    """Joint matrices for the adjacent pairs of an ``N``-step chain; every
    column-sum vector must match the next matrix's row sums."""

    __slots__ = ("mats",)

    def __init__(self, mats: Sequence[JointMatrix], tol: Tolerance | None = None):
        mats = tuple(mats)
        if not mats:
            raise ValueError("joint sequence must be nonempty")
        require_same_mode(*(m.entries for m in mats))
        if len({m.dim for m in mats}) > 1:
            raise ValueError("all joint matrices must share one dimension")
        tol = tol if tol is not None else Tolerance.default(mats[0].exact)
        for k in range(len(mats) - 1):
            if not is_marginally_compatible(mats[k], mats[k + 1], tol):
                raise IncompatibleSequence(
                    f"column sums of matrix {k} differ from row sums of matrix {k + 1}"
                )
        self.mats = mats

    @property
    def horizon(self) -> int:
        return len(self.mats) + 1

    @property
    def dim(self) -> int:
        return self.mats[0].dim

    @property
    def exact(self) -> bool:
        return self.mats[0].exact

    def __len__(self) -> int:
        return len(self.mats)

    def __getitem__(self, k) -> JointMatrix:
        return self.mats[k]

    def __repr__(self) -> str:
        return f"JointSequence(N={self.horizon}, dim={self.dim})"


def joint_from(
    q: ProbVector, P: StochasticMatrix, tol: Tolerance | None = None
) -> JointMatrix:
    """Joint matrix ``diag(q) P`` of the pair (start distribution, step)."""
    exact = require_same_mode(q.entries, P.entries)
    return JointMatrix(q.entries[:, None] * P.entries, exact, tol)


def forward_pair_from(
    Q: JointMatrix, tol: Tolerance | None = None
) -> tuple[ProbVector, StochasticMatrix]:
    """Recover a forward pair ``(q, P)`` with ``diag(q) P == Q``.

    Rows of ``Q`` with zero mass leave the corresponding ``P`` row
    unconstrained; the uniform row is used so the result is deterministic.
    """
    exact = Q.exact
    q = Q.left_marginal
    n = Q.dim
    uniform = Fraction(1, n) if exact else 1.0 / n
    rows = np.empty((n, n), dtype=Q.entries.dtype)
    for x in range(n):
        if q[x] == 0:
            rows[x, :] = uniform
        else:
            rows[x, :] = Q.entries[x] / q[x]
    return ProbVector(q, exact, tol), StochasticMatrix(rows, exact, tol)


def is_marginally_compatible(
    Q1: JointMatrix, Q2: JointMatrix, tol: Tolerance | None = None
) -> bool:
    """Whether the later marginal of ``Q1`` equals the earlier one of ``Q2``."""
    require_same_mode(Q1.entries, Q2.entries)
    if Q1.dim != Q2.dim:
        raise ValueError("joint matrices must share one dimension")
    tol = tol if tol is not None else Tolerance.default(Q1.exact)
    return bool((abs(Q1.right_marginal - Q2.left_marginal) <= tol.eq).all())


def law_from_joint_sequence(
    seq: JointSequence, tol: Tolerance | None = None
) -> TransitionLaw:
    """Forward transition law matching the sequence: initial distribution
    from the first row sums, step matrices by row normalization (uniform on
    dead rows)."""
    initial = None
    steps = []
    for m in seq.mats:
        q, p = forward_pair_from(m, tol)
        if initial is None:
            initial = q
        steps.append(p)
    return TransitionLaw(initial, steps)


def path_probability_joint(seq: JointSequence, path: Sequence[int]):
    """Path probability from the factorized form: the product of pair
    probabilities divided by the interior marginals, with ``0/0 := 0``.

    The quotient convention is applied by short-circuiting: a zero pair
    factor makes the whole path impossible, and every interior marginal
    dominates its pair entry, so no explicit zero division can remain.
    Zero-marginal sequences (where no forward law exists) are therefore
    handled by the same rule as everywhere else.
    """
    path = tuple(path)
    if len(path) != seq.horizon:
        raise ValueError(f"path length {len(path)} != horizon {seq.horizon}")
    n = seq.dim
    if any(not 0 <= x < n for x in path):
        raise ValueError(f"path {path} has a state outside 0..{n - 1}")
    num = None
    for k, m in enumerate(seq.mats):
        factor = m.entries[path[k], path[k + 1]]
        if factor == 0:
            return factor
        num = factor if num is None else num * factor
    for k in range(1, len(seq.mats)):
        num = num / seq.mats[k].left_marginal[path[k]]
    return num


def reverse_joint_sequence(
    seq: JointSequence, tol: Tolerance | None = None
) -> JointSequence:
    """Sequence of the reversed chain: transpose every matrix and flip the
    order.  Applying it twice returns the input."""
    return JointSequence([m.transpose(tol) for m in reversed(seq.mats)], tol)


def is_symmetric(Q: JointMatrix, tol: Tolerance | None = None) -> bool:
    tol = tol if tol is not None else Tolerance.default(Q.exact)
    return bool((abs(Q.entries - Q.entries.T) <= tol.eq).all())
