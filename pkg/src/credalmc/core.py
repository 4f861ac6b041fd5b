"""Finite-state chains: distributions, transition matrices, time reversal.

States are dense indices ``0..n-1``; all vectors are row vectors.  A
transition law pairs an initial distribution with an ordered list of step
matrices and fully describes an inhomogeneous chain over a finite horizon.
The reversal calculus implemented here turns the law of ``(X_1,...,X_N)``
into the law of ``(X_N,...,X_1)`` and back.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NegativeSolution, NonUniqueStationary, ZeroMarginal
from .numeric import (
    Tolerance,
    freeze,
    is_exact_array,
    require_same_mode,
    to_matrix,
    to_vector,
)

__all__ = [
    "ProbVector",
    "StochasticMatrix",
    "TransitionLaw",
    "Path",
    "marginal_at",
    "stationary_distribution",
    "q_reverse",
    "reverse_law",
    "path_probability",
    "detailed_balance_holds",
]

# Paths are plain tuples of state indices; operations validate length/range.
Path = tuple

_ZERO_TEXT = "marginal has a zero entry; the backward transition matrix is undefined"


class ProbVector:
    """A probability mass function on states ``0..n-1``.

    Entries must be nonnegative and sum to one within ``tol.sum`` (exactly
    in rational mode).  The underlying array is read-only.
    """

    __slots__ = ("entries",)

    def __init__(self, entries, exact: bool = False, tol: Tolerance | None = None):
        arr = to_vector(entries, exact)
        tol = tol if tol is not None else Tolerance.default(exact)
        if arr.size == 0:
            raise ValueError("probability vector must be nonempty")
        if (arr < 0).any():
            raise ValueError("probability vector has a negative entry")
        if abs(arr.sum() - 1) > tol.sum:
            raise ValueError(f"probability vector sums to {arr.sum()!r}, not 1")
        self.entries = freeze(arr)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.entries)

    def __len__(self) -> int:
        return self.entries.size

    def __getitem__(self, x):
        return self.entries[x]

    def __repr__(self) -> str:
        return f"ProbVector({list(self.entries)!r})"


class StochasticMatrix:
    """A row-stochastic matrix: ``entries[x, y]`` is the probability of a
    transition from ``x`` to ``y``."""

    __slots__ = ("entries",)

    def __init__(self, entries, exact: bool = False, tol: Tolerance | None = None):
        arr = to_matrix(entries, exact)
        tol = tol if tol is not None else Tolerance.default(exact)
        if arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"transition matrix must be square, got {arr.shape}")
        if (arr < 0).any():
            raise ValueError("transition matrix has a negative entry")
        rows = arr.sum(axis=1)
        if (abs(rows - 1) > tol.sum).any():
            raise ValueError(f"rows must sum to 1, got row sums {list(rows)!r}")
        self.entries = freeze(arr)

    @property
    def exact(self) -> bool:
        return is_exact_array(self.entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, xy):
        return self.entries[xy]

    def __repr__(self) -> str:
        return f"StochasticMatrix({[list(r) for r in self.entries]!r})"


class TransitionLaw:
    """Forward description of an inhomogeneous chain over horizon ``N``:
    an initial distribution plus step matrices ``P_1, ..., P_{N-1}``."""

    __slots__ = ("initial", "steps")

    def __init__(self, initial: ProbVector, steps: Sequence[StochasticMatrix]):
        steps = tuple(steps)
        if not steps:
            raise ValueError("a transition law needs at least one step matrix")
        n = len(initial)
        for p in steps:
            if p.dim != n:
                raise ValueError("all step matrices must match the state count")
        require_same_mode(initial.entries, *(p.entries for p in steps))
        self.initial = initial
        self.steps = steps

    @classmethod
    def from_arrays(cls, initial, steps, exact: bool = False, tol: Tolerance | None = None):
        return cls(
            ProbVector(initial, exact, tol),
            [StochasticMatrix(p, exact, tol) for p in steps],
        )

    @property
    def horizon(self) -> int:
        return len(self.steps) + 1

    @property
    def dim(self) -> int:
        return len(self.initial)

    @property
    def exact(self) -> bool:
        return self.initial.exact

    def __repr__(self) -> str:
        return f"TransitionLaw(N={self.horizon}, dim={self.dim})"


def marginal_at(law: TransitionLaw, k: int, tol: Tolerance | None = None) -> ProbVector:
    """Distribution of ``X_k`` under the law, for ``k`` in ``1..N``:
    the initial distribution propagated through the first ``k-1`` steps."""
    if not 1 <= k <= law.horizon:
        raise IndexError(f"step index {k} outside 1..{law.horizon}")
    v = law.initial.entries
    for i in range(k - 1):
        v = v @ law.steps[i].entries
    return ProbVector(v, law.exact, tol)


def _eliminate(a: np.ndarray, b: np.ndarray, exact: bool, pivot_tol) -> np.ndarray | None:
    """Solve the overdetermined consistent system ``a x = b`` by Gaussian
    elimination with partial pivoting; return None when rank-deficient."""
    a = a.copy()
    b = b.copy()
    rows, n = a.shape
    piv_rows = []
    r = 0
    for c in range(n):
        if exact:
            cand = [i for i in range(r, rows) if a[i, c] != 0]
            best = cand[0] if cand else None
        else:
            col = np.abs(a[r:, c].astype(float))
            best = r + int(np.argmax(col)) if col.size and col.max() > pivot_tol else None
        if best is None:
            return None
        if best != r:
            a[[r, best]] = a[[best, r]]
            b[[r, best]] = b[[best, r]]
        piv = a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c] / piv
                a[i] = a[i] - f * a[r]
                b[i] = b[i] - f * b[r]
        piv_rows.append((r, c))
        r += 1
        if r == rows:
            break
    x = np.zeros(n, dtype=a.dtype)
    for r, c in piv_rows:
        x[c] = b[r] / a[r, c]
    return x


def stationary_distribution(P: StochasticMatrix, tol: Tolerance | None = None) -> ProbVector:
    """Unique invariant distribution of ``P``, from the augmented linear
    system stacking ``(P - I)^T pi^T = 0`` with the normalization row.

    Raises NonUniqueStationary when the system is rank-deficient beyond the
    one degree of freedom removed by normalization, and NegativeSolution
    when the solved vector has a meaningfully negative entry.
    """
    exact = P.exact
    tol = tol if tol is not None else Tolerance.default(exact)
    n = P.dim
    eye = np.eye(n) if not exact else np.array(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object
    )
    a = np.vstack([(P.entries - eye).T, np.ones((1, n), dtype=P.entries.dtype)])
    b = np.zeros(n + 1, dtype=P.entries.dtype)
    b[n] = 1
    x = _eliminate(a, b, exact, pivot_tol=max(tol.eq, 1e-12))
    if x is None:
        raise NonUniqueStationary("stationary distribution is not unique")
    if exact:
        if (x < 0).any():
            raise NegativeSolution(f"stationary solve produced {list(x)!r}")
        return ProbVector(x, exact=True, tol=tol)
    if (x < -tol.eq).any():
        raise NegativeSolution(f"stationary solve produced {list(x)!r}")
    x = np.maximum(x, 0.0)
    return ProbVector(x / x.sum(), exact=False, tol=tol)


def _check_positive(v: np.ndarray, exact: bool, tol: Tolerance, what: str) -> None:
    bad = (v <= 0).any() if exact else (v <= tol.eq).any()
    if bad:
        raise ZeroMarginal(f"{what}: {_ZERO_TEXT}")


def q_reverse(
    P: StochasticMatrix, q: ProbVector, tol: Tolerance | None = None
) -> StochasticMatrix:
    """Backward transition matrix of a single step started at ``q``:
    ``diag(qP)^-1 P^T diag(q)``.  Requires ``q > 0`` and ``qP > 0``."""
    exact = require_same_mode(P.entries, q.entries)
    tol = tol if tol is not None else Tolerance.default(exact)
    _check_positive(q.entries, exact, tol, "q")
    r = q.entries @ P.entries
    _check_positive(r, exact, tol, "qP")
    rev = (P.entries.T * q.entries) / r[:, None]
    return StochasticMatrix(rev, exact, tol)


def reverse_law(law: TransitionLaw, tol: Tolerance | None = None) -> TransitionLaw:
    """Law of the reversed chain: terminal marginal plus the backward step
    matrices in reverse order.  All marginals must be strictly positive."""
    exact = law.exact
    tol = tol if tol is not None else Tolerance.default(exact)
    margs = [law.initial.entries]
    for p in law.steps:
        margs.append(margs[-1] @ p.entries)
    for k, m in enumerate(margs, start=1):
        _check_positive(m, exact, tol, f"marginal at step {k}")
    back = [
        q_reverse(p, ProbVector(m, exact, tol), tol)
        for p, m in zip(law.steps, margs[:-1])
    ]
    return TransitionLaw(ProbVector(margs[-1], exact, tol), back[::-1])


def path_probability(law: TransitionLaw, path: Sequence[int]):
    """Probability of observing the exact state sequence ``path``."""
    path = tuple(path)
    if len(path) != law.horizon:
        raise ValueError(f"path length {len(path)} != horizon {law.horizon}")
    n = law.dim
    if any(not 0 <= x < n for x in path):
        raise ValueError(f"path {path} has a state outside 0..{n - 1}")
    p = law.initial.entries[path[0]]
    for k, step in enumerate(law.steps):
        p = p * step.entries[path[k], path[k + 1]]
    return p


def detailed_balance_holds(
    P: StochasticMatrix, pi: ProbVector, tol: Tolerance | None = None
) -> bool:
    """Whether ``pi(x) P(x,y) == pi(y) P(y,x)`` for all pairs, within
    ``tol.eq`` (exactly in rational mode)."""
    exact = require_same_mode(P.entries, pi.entries)
    tol = tol if tol is not None else Tolerance.default(exact)
    flow = pi.entries[:, None] * P.entries
    return bool((abs(flow - flow.T) <= tol.eq).all())
