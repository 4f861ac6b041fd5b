"""Arithmetic-mode helpers: exact rationals vs. double precision.

Every value in the package lives in one of two arithmetic modes, fixed when
the value is constructed.  Float mode stores plain ``float64`` arrays and
compares with the tolerances below.  Exact mode stores ``fractions.Fraction``
entries in object arrays, all tolerances collapse to zero, and every
operation in the package is drift-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Tolerance",
    "to_number",
    "to_vector",
    "to_matrix",
    "to_tensor",
    "is_exact_array",
    "require_same_mode",
    "freeze",
]


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerances: ``sum`` for normalization checks, ``eq`` for
    entrywise equality, ``lp`` for LP feasibility and optimality."""

    sum: float = 1e-12
    eq: float = 1e-9
    lp: float = 1e-9

    def __post_init__(self):
        if self.sum < 0 or self.eq < 0 or self.lp < 0:
            raise ValueError("tolerances must be nonnegative")

    @classmethod
    def exact(cls) -> "Tolerance":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def default(cls, exact: bool) -> "Tolerance":
        return cls.exact() if exact else cls()


def to_number(value, exact: bool):
    """Coerce a scalar to the requested mode.

    Exact mode accepts ``Fraction``, integers, and strings (``"3/4"`` or
    ``"0.25"``); floats are converted through their shortest decimal
    representation, so ``0.2`` becomes ``1/5`` rather than the exact binary
    expansion of the double.
    """
    if exact:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, (float, np.floating)):
            if not math.isfinite(value):
                raise ValueError(f"cannot represent {value!r} exactly")
            return Fraction(str(float(value)))
        raise TypeError(f"cannot interpret {type(value).__name__} as a rational")
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


def _coerce(values, exact: bool, ndim: int) -> np.ndarray:
    arr = np.asarray(values, dtype=object)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    flat = [to_number(v, exact) for v in arr.ravel()]
    out = np.empty(arr.shape, dtype=object if exact else float)
    out.ravel()[:] = flat if exact else np.array(flat, dtype=float)
    return out


def to_vector(values, exact: bool = False) -> np.ndarray:
    if not exact and isinstance(values, np.ndarray) and values.dtype == float:
        return values.astype(float, copy=True)
    return _coerce(values, exact, ndim=1)


def to_matrix(values, exact: bool = False) -> np.ndarray:
    if not exact and isinstance(values, np.ndarray) and values.dtype == float:
        if values.ndim != 2:
            raise ValueError(f"expected a matrix, got shape {values.shape}")
        return values.astype(float, copy=True)
    return _coerce(values, exact, ndim=2)


def to_tensor(values, exact: bool = False) -> np.ndarray:
    """Coerce an array of any rank (used for gambles on longer paths)."""
    if not exact and isinstance(values, np.ndarray) and values.dtype == float:
        return values.astype(float, copy=True)
    arr = np.asarray(values, dtype=object)
    return _coerce(values, exact, ndim=arr.ndim)


def is_exact_array(arr: np.ndarray) -> bool:
    return arr.dtype == object


def require_same_mode(*arrays: np.ndarray) -> bool:
    """Check that all arrays share one arithmetic mode; return that mode."""
    modes = {is_exact_array(a) for a in arrays}
    if len(modes) > 1:
        raise ValueError("cannot mix exact-rational and float values in one operation")
    return modes.pop()


def freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr
