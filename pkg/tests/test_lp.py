import math
from fractions import Fraction

import numpy as np
import pytest

import credalmc as cmc
from credalmc import (
    BudgetExceeded,
    Gamble2,
    IntervalJointSet,
    JointSequence,
    LinearProgram,
    build_nstep_program,
    joint_from,
    law_from_joint_sequence,
    law_expectation,
    lower_expectation_nstep,
    lower_expectation_two_step,
    reverse_gamble,
    solve,
    to_lp_text,
    upper_expectation_nstep,
    upper_expectation_two_step,
)
from credalmc.lp import INFEASIBLE, OPTIMAL, UNBOUNDED

from conftest import random_box


def _float_lp(c, a, b, lo, hi, sense="min"):
    return LinearProgram(
        np.asarray(c, float), np.asarray(a, float).reshape(len(b), len(c)),
        np.asarray(b, float), np.asarray(lo, float), np.asarray(hi, float), sense,
    )


@pytest.fixture
def example_box(p1, p2, pi1, pi2):
    from credalmc import minimal_interval_hull

    return minimal_interval_hull([joint_from(pi1, p1), joint_from(pi2, p2)])


class TestSolve:
    def test_pinned_variable(self):
        out = solve(_float_lp([1.0], [[1.0]], [1.0], [0.0], [math.inf]))
        assert out.status == OPTIMAL
        assert out.value == pytest.approx(1.0)

    def test_infeasible_toy(self):
        out = solve(_float_lp([0.0], [[1.0], [1.0]], [1.0, 2.0], [0.0], [math.inf]))
        assert out.status == INFEASIBLE
        assert out.value is None and out.solution is None

    def test_unbounded(self):
        out = solve(_float_lp([-1.0], np.zeros((0, 1)), [], [0.0], [math.inf]))
        assert out.status == UNBOUNDED
        out = solve(_float_lp([1.0], np.zeros((0, 1)), [], [0.0], [math.inf], "max"))
        assert out.status == UNBOUNDED

    def test_degenerate_box_trace_gamble(self, p1, pi1):
        q1 = joint_from(pi1, p1)
        iset = IntervalJointSet(q1.entries, q1.entries, exact=True)
        value = lower_expectation_two_step(iset, Gamble2([[1, 0], [0, 1]], exact=True))
        assert value == Fraction(19, 75)

    def test_malformed_program_rejected(self):
        with pytest.raises(ValueError):
            _float_lp([1.0, 2.0], [[1.0]], [1.0], [0.0], [1.0])
        with pytest.raises(ValueError):
            _float_lp([1.0], [[1.0]], [1.0], [2.0], [1.0])
        with pytest.raises(ValueError):
            LinearProgram(np.array([1.0]), np.zeros((0, 1)), np.zeros(0),
                          np.array([0.0]), np.array([1.0]), sense="argmin")

    def test_bounded_box_max(self):
        out = solve(_float_lp([1.0, 1.0], [[1.0, 2.0]], [2.0],
                              [0.0, 0.0], [1.5, 1.0], "max"))
        assert out.status == OPTIMAL
        assert out.value == pytest.approx(1.75)

    def test_solution_passes_external_feasibility_check(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            iset = random_box(rng, 2, width=0.2)
            f = Gamble2(rng.normal(size=(2, 2)))
            prog = LinearProgram(
                f.values.ravel(), np.ones((1, 4)), np.ones(1),
                iset.lower.ravel().copy(), iset.upper.ravel().copy(),
            )
            out = solve(prog)
            assert out.status == OPTIMAL
            x = out.solution
            assert abs(x.sum() - 1) <= 1e-9
            assert (x >= iset.lower.ravel() - 1e-9).all()
            assert (x <= iset.upper.ravel() + 1e-9).all()


class TestTwoStepExpectations:
    def test_degenerate_off_diagonal(self, p1, pi1):
        q1 = joint_from(pi1, p1)
        iset = IntervalJointSet(q1.entries, q1.entries, exact=True)
        value = lower_expectation_two_step(iset, Gamble2([[0, 1], [1, 0]], exact=True))
        assert value == Fraction(56, 75)

    def test_constant_gamble_is_normalized(self, example_box):
        c = Fraction(5, 7)
        g = Gamble2([[c, c], [c, c]], exact=True)
        assert lower_expectation_two_step(example_box, g) == c
        assert upper_expectation_two_step(example_box, g) == c

    def test_example_box_off_diagonal_exact(self, example_box):
        g = Gamble2([[0, 1], [1, 0]], exact=True)
        # minimum puts both off-diagonal entries at their lower bound 2/9,
        # maximum at 28/75; both remain feasible against the diagonal bounds
        assert lower_expectation_two_step(example_box, g) == Fraction(4, 9)
        assert upper_expectation_two_step(example_box, g) == Fraction(56, 75)

    def test_empty_set_raises(self):
        with pytest.raises(cmc.EmptyCredalSet):
            IntervalJointSet([[0.0, 0.0], [0.0, 0.0]],
                             [[0.1, 0.1], [0.1, 0.1]])

    def test_conjugacy(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            iset = random_box(rng, int(rng.integers(2, 4)), width=0.3)
            f = Gamble2(rng.normal(size=(iset.dim, iset.dim)))
            up = upper_expectation_two_step(iset, f)
            low_neg = lower_expectation_two_step(iset, Gamble2(-f.values))
            assert up == pytest.approx(-low_neg, abs=2e-9)

    def test_monotone_in_box_enlargement(self):
        rng = np.random.default_rng(7)
        for _ in range(15):
            iset = random_box(rng, 2, width=0.15)
            wider = IntervalJointSet(
                np.maximum(iset.lower - 0.05, 0.0), iset.upper + 0.05
            )
            f = Gamble2(rng.normal(size=(2, 2)))
            assert lower_expectation_two_step(wider, f) <= (
                lower_expectation_two_step(iset, f) + 1e-9
            )

    def test_reversal_duality_two_step(self):
        rng = np.random.default_rng(9)
        for _ in range(15):
            iset = random_box(rng, 2, width=0.25)
            f = Gamble2(rng.normal(size=(2, 2)))
            lhs = lower_expectation_two_step(iset, reverse_gamble(f))
            rhs = lower_expectation_two_step(iset.transpose(), f)
            assert lhs == pytest.approx(rhs, abs=2e-9)


class TestNStepPrograms:
    def test_horizon_two_matches_two_step(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            iset = random_box(rng, 2, width=0.2)
            f = rng.normal(size=(2, 2))
            direct = lower_expectation_two_step(iset, Gamble2(f))
            via_paths = lower_expectation_nstep(iset, f, 2)
            assert via_paths == pytest.approx(direct, abs=1e-9)

    def test_constant_gamble_any_horizon(self, example_box):
        box = IntervalJointSet(
            np.asarray(example_box.lower, float),
            np.asarray(example_box.upper, float),
        )
        for horizon in (2, 3, 4):
            f = np.full((2,) * horizon, 3.25)
            assert lower_expectation_nstep(box, f, horizon) == pytest.approx(3.25)

    def test_degenerate_symmetric_box_three_steps(self, p1, pi1):
        # symmetric joint matrix with equal marginals: the box {Q} admits
        # exactly one compatible law
        q = joint_from(pi1, p1)
        iset = IntervalJointSet(q.entries, q.entries, exact=True)
        law = law_from_joint_sequence(JointSequence([q, q]))

        pairwise = np.empty((2, 2, 2), dtype=object)
        g = np.array([[Fraction(1), Fraction(0)], [Fraction(2), Fraction(1, 3)]])
        for x in range(2):
            for y in range(2):
                for z in range(2):
                    pairwise[x, y, z] = g[x, y] + g[y, z]
        value = lower_expectation_nstep(iset, pairwise, 3)
        assert value == law_expectation(law, pairwise)

        spiky = np.empty((2, 2, 2), dtype=object)
        spiky.fill(Fraction(0))
        spiky[0, 1, 0] = Fraction(1)
        assert lower_expectation_nstep(iset, spiky, 3) <= law_expectation(law, spiky)
        assert upper_expectation_nstep(iset, spiky, 3) >= law_expectation(law, spiky)

    def test_budget_guard(self, example_box):
        with pytest.raises(BudgetExceeded):
            build_nstep_program(example_box, np.zeros((2,) * 21), 21, budget=10**6)

    def test_reversal_duality_three_steps(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            iset = random_box(rng, 2, width=0.4)
            sym = IntervalJointSet(
                np.minimum(iset.lower, iset.lower.T),
                np.maximum(iset.upper, iset.upper.T),
            )
            f = rng.normal(size=(2, 2, 2))
            lhs = lower_expectation_nstep(sym, reverse_gamble(f), 3)
            rhs = lower_expectation_nstep(sym.transpose(), f, 3)
            assert lhs == pytest.approx(rhs, abs=2e-9)

    def test_single_coordinate_gamble_reduces_to_two_step(self):
        # a transposition-closed box always admits a compatible follower
        # (the transpose), so constraining the first step costs nothing
        rng = np.random.default_rng(17)
        for _ in range(5):
            base = random_box(rng, 2, width=0.3)
            iset = IntervalJointSet(
                np.minimum(base.lower, base.lower.T),
                np.maximum(base.upper, base.upper.T),
            )
            fx = rng.normal(size=2)
            f3 = np.zeros((2, 2, 2))
            for x in range(2):
                f3[x, :, :] = fx[x]
            g = np.zeros((2, 2))
            for x in range(2):
                g[x, :] = fx[x]
            assert lower_expectation_nstep(iset, f3, 3) == pytest.approx(
                lower_expectation_two_step(iset, Gamble2(g)), abs=1e-9
            )


class TestLpText:
    def test_layout_and_determinism(self, example_box):
        prog = build_nstep_program(example_box, np.zeros((2, 2, 2), dtype=object), 3)
        text = to_lp_text(prog, name="three-step")
        assert text == to_lp_text(prog, name="three-step")
        assert text.splitlines()[0] == "\\ three-step"
        assert "Minimize" in text and "Subject To" in text and "Bounds" in text
        assert "= 1" in text  # total mass row
        assert "x0" in text

    def test_sense_rendered(self):
        prog = _float_lp([1.0], [[1.0]], [1.0], [0.0], [math.inf], "max")
        assert "Maximize" in to_lp_text(prog)
