"""Bundled worked examples with exactly known results.

Four small scenarios exercise the whole library in exact arithmetic: the
two-state chain pair whose reversal escapes its own credal model, the pair
of joint matrices that no forward model can produce, the minimal symmetric
interval hull of two reversible chains, and the weight box whose walk
transition set is non-convex.  ``run_all`` recomputes every quantity and
compares against the expected values below; the expected table is kept as
plain data so a deliberately corrupted entry is reported rather than
silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    ProbVector,
    StochasticMatrix,
    TransitionLaw,
    marginal_at,
    q_reverse,
    stationary_distribution,
)
from .credal import (
    MatrixSet,
    check_invariant_hull,
    convex_hull_membership,
    is_symmetric_set,
    minimal_interval_hull,
)
from .jointrep import (
    JointMatrix,
    forward_pair_from,
    is_marginally_compatible,
    is_symmetric,
    joint_from,
)
from .randomwalk import WeightMatrix, walk_joint, walk_transition

__all__ = ["Record", "EXPECTED", "run_all"]


@dataclass(frozen=True)
class Record:
    section: str
    name: str
    passed: bool
    expected: str
    actual: str

    def to_dict(self) -> dict:
        return {
            "section": self.section,
            "name": self.name,
            "pass": self.passed,
            "expected": self.expected,
            "actual": self.actual,
        }


# Every expected value, as exact fraction strings (or booleans), keyed by
# assertion name.  Kept as data on purpose: tests corrupt single entries to
# prove the report catches a broken build.
EXPECTED: dict = {
    "stationary-p1": ["7/15", "8/15"],
    "stationary-p2": ["5/9", "4/9"],
    "pushforward-u": ["19/45", "26/45"],
    "backward-matrix": [["19/110", "91/110"], ["76/115", "39/115"]],
    "pushforward-w": ["22/45", "23/45"],
    "w-returns-to-u": ["19/45", "26/45"],
    "escape-coordinate-below-hull": True,
    "escaped-point-outside-hull": False,
    "hull-invariant-forward": True,
    "hull-not-invariant-with-backward": False,
    "row-normalize-q1": [["1/3", "2/3"], ["3/7", "4/7"]],
    "row-normalize-q2": [["1/2", "1/2"], ["1/2", "1/2"]],
    "left-marginals": [["3/10", "7/10"], ["2/5", "3/5"]],
    "right-marginals": [["2/5", "3/5"], ["1/2", "1/2"]],
    "pushforward-mismatch": ["41/105", "64/105"],
    "mismatch-outside-hull": False,
    "compatible-ordered": True,
    "incompatible-swapped": False,
    "joint-of-p1": [["7/75", "28/75"], ["28/75", "4/25"]],
    "joint-of-p2": [["1/3", "2/9"], ["2/9", "2/9"]],
    "hull-lower": [["7/75", "2/9"], ["2/9", "4/25"]],
    "hull-upper": [["1/3", "28/75"], ["28/75", "2/9"]],
    "hull-symmetric": True,
    "walk-transition-1": [["1/4", "3/4"], ["3/5", "2/5"]],
    "walk-transition-2": [["1/6", "5/6"], ["5/7", "2/7"]],
    "walk-transition-mid": [["1/5", "4/5"], ["2/3", "1/3"]],
    "transition-mid-outside-hull": False,
    "joint-mix-coefficients": ["9/22", "13/22"],
    "joint-mid-is-mixture": True,
    "joint-mid-inside-hull": True,
}


def _fracs(rows):
    if isinstance(rows[0], list):
        return np.array([[Fraction(v) for v in r] for r in rows], dtype=object)
    return np.array([Fraction(v) for v in rows], dtype=object)


def _show(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (ProbVector, StochasticMatrix, JointMatrix)):
        value = value.entries
    arr = np.asarray(value)
    if arr.ndim == 1:
        return "(" + ", ".join(str(v) for v in arr) + ")"
    return "[" + "; ".join(", ".join(str(v) for v in row) for row in arr) + "]"


def _record(out: list, section: str, name: str, actual) -> None:
    expected = EXPECTED[name]
    if isinstance(expected, bool):
        passed = actual is expected
        exp_text = str(expected)
    else:
        want = _fracs(expected)
        got = actual.entries if hasattr(actual, "entries") else np.asarray(actual)
        passed = want.shape == got.shape and bool((want == got).all())
        exp_text = _show(want)
    out.append(Record(section, name, passed, exp_text, _show(actual)))


def _two_state_reversal(out: list) -> None:
    sec = "two-state-reversal"
    p1 = StochasticMatrix([["1/5", "4/5"], ["7/10", "3/10"]], exact=True)
    p2 = StochasticMatrix([["3/5", "2/5"], ["1/2", "1/2"]], exact=True)
    pi1 = stationary_distribution(p1)
    pi2 = stationary_distribution(p2)
    _record(out, sec, "stationary-p1", pi1)
    _record(out, sec, "stationary-p2", pi2)
    u = marginal_at(TransitionLaw(pi2, [p1]), 2)
    _record(out, sec, "pushforward-u", u)
    back = q_reverse(p1, u)
    _record(out, sec, "backward-matrix", back)
    w = ProbVector(u.entries @ p1.entries, exact=True)
    _record(out, sec, "pushforward-w", w)
    _record(out, sec, "w-returns-to-u", ProbVector(w.entries @ back.entries, exact=True))
    v = pi2
    escaped = ProbVector(v.entries @ back.entries, exact=True)
    _record(
        out, sec, "escape-coordinate-below-hull",
        bool(escaped.entries[0] < u.entries[0]),
    )
    _record(
        out, sec, "escaped-point-outside-hull",
        convex_hull_membership(escaped, [u, v]),
    )
    ok, _ = check_invariant_hull([u, v], MatrixSet([p1, p2]))
    _record(out, sec, "hull-invariant-forward", ok)
    ok, _ = check_invariant_hull([u, v], MatrixSet([p1, p2, back]))
    _record(out, sec, "hull-not-invariant-with-backward", ok)


def _joint_forward_mismatch(out: list) -> None:
    sec = "joint-forward-mismatch"
    q1 = JointMatrix([["1/10", "1/5"], ["3/10", "2/5"]], exact=True)
    q2 = JointMatrix([["1/5", "1/5"], ["3/10", "3/10"]], exact=True)
    l1, p1 = forward_pair_from(q1)
    l2, p2 = forward_pair_from(q2)
    _record(out, sec, "row-normalize-q1", p1)
    _record(out, sec, "row-normalize-q2", p2)
    _record(out, sec, "left-marginals", np.vstack([l1.entries, l2.entries]))
    r1 = q1.right_marginal
    r2 = q2.right_marginal
    _record(out, sec, "right-marginals", np.vstack([r1, r2]))
    pushed = ProbVector(l2.entries @ p1.entries, exact=True)
    _record(out, sec, "pushforward-mismatch", pushed)
    hull = [ProbVector(r1, exact=True), ProbVector(r2, exact=True)]
    _record(out, sec, "mismatch-outside-hull", convex_hull_membership(pushed, hull))
    _record(out, sec, "compatible-ordered", is_marginally_compatible(q1, q2))
    _record(out, sec, "incompatible-swapped", is_marginally_compatible(q2, q1))


def _minimal_reversible_interval(out: list) -> None:
    sec = "minimal-reversible-interval"
    p1 = StochasticMatrix([["1/5", "4/5"], ["7/10", "3/10"]], exact=True)
    p2 = StochasticMatrix([["3/5", "2/5"], ["1/2", "1/2"]], exact=True)
    j1 = joint_from(stationary_distribution(p1), p1)
    j2 = joint_from(stationary_distribution(p2), p2)
    _record(out, sec, "joint-of-p1", j1)
    _record(out, sec, "joint-of-p2", j2)
    hull = minimal_interval_hull([j1, j2])
    _record(out, sec, "hull-lower", hull.lower)
    _record(out, sec, "hull-upper", hull.upper)
    _record(
        out, sec, "hull-symmetric",
        is_symmetric(j1) and is_symmetric(j2) and is_symmetric_set(hull),
    )


def _walk_nonconvexity(out: list) -> None:
    sec = "walk-nonconvexity"
    w1 = WeightMatrix([[1, 3], [3, 2]], exact=True)
    w2 = WeightMatrix([[1, 5], [5, 2]], exact=True)
    mid = WeightMatrix((w1.w + w2.w) / 2, exact=True)
    t1 = walk_transition(w1)
    t2 = walk_transition(w2)
    tmid = walk_transition(mid)
    _record(out, sec, "walk-transition-1", t1)
    _record(out, sec, "walk-transition-2", t2)
    _record(out, sec, "walk-transition-mid", tmid)
    _record(
        out, sec, "transition-mid-outside-hull",
        convex_hull_membership(tmid, [t1, t2]),
    )
    total1 = w1.total
    total2 = w2.total
    a = total1 / (total1 + total2)
    b = total2 / (total1 + total2)
    _record(out, sec, "joint-mix-coefficients", np.array([a, b], dtype=object))
    jmid = walk_joint(mid)
    mixture = a * walk_joint(w1).entries + b * walk_joint(w2).entries
    _record(out, sec, "joint-mid-is-mixture", bool((mixture == jmid.entries).all()))
    _record(
        out, sec, "joint-mid-inside-hull",
        convex_hull_membership(jmid, [walk_joint(w1), walk_joint(w2)]),
    )


def run_all() -> list[Record]:
    """Recompute all bundled examples in exact mode; one record each."""
    out: list[Record] = []
    _two_state_reversal(out)
    _joint_forward_mismatch(out)
    _minimal_reversible_interval(out)
    _walk_nonconvexity(out)
    return out
