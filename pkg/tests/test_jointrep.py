import itertools
from fractions import Fraction

import numpy as np
import pytest

from credalmc import (
    IncompatibleSequence,
    JointMatrix,
    JointSequence,
    ProbVector,
    StochasticMatrix,
    TransitionLaw,
    forward_pair_from,
    is_marginally_compatible,
    is_symmetric,
    joint_from,
    law_from_joint_sequence,
    marginal_at,
    path_probability,
    path_probability_joint,
    reverse_joint_sequence,
    stationary_distribution,
)

from conftest import exactly_equal, fracs, random_exact_matrix, random_exact_vector

Q1_MISMATCH = [["1/10", "1/5"], ["3/10", "2/5"]]
Q2_MISMATCH = [["1/5", "1/5"], ["3/10", "3/10"]]


def _exact_joint(rows):
    return JointMatrix(rows, exact=True)


class TestJointFrom:
    def test_stationary_joints(self, p1, p2, pi1, pi2):
        assert exactly_equal(
            joint_from(pi1, p1), fracs([["7/75", "28/75"], ["28/75", "4/25"]])
        )
        assert exactly_equal(
            joint_from(pi2, p2), fracs([["1/3", "2/9"], ["2/9", "2/9"]])
        )

    def test_identity_step_gives_diagonal(self):
        q = ProbVector(["1/4", "3/4"], exact=True)
        eye = StochasticMatrix([[1, 0], [0, 1]], exact=True)
        assert exactly_equal(joint_from(q, eye), fracs([["1/4", "0"], ["0", "3/4"]]))

    def test_marginals_match_construction(self, p1, pi1):
        q = joint_from(pi1, p1)
        assert (q.left_marginal == pi1.entries).all()
        assert (q.right_marginal == pi1.entries @ p1.entries).all()


class TestForwardPairFrom:
    def test_mismatch_example_rows(self):
        q, p = forward_pair_from(_exact_joint(Q1_MISMATCH))
        assert exactly_equal(q, fracs(["3/10", "7/10"]))
        assert exactly_equal(p, fracs([["1/3", "2/3"], ["3/7", "4/7"]]))

    def test_diagonal_recovers_identity(self):
        q, p = forward_pair_from(_exact_joint([["1/4", "0"], ["0", "3/4"]]))
        assert exactly_equal(q, fracs(["1/4", "3/4"]))
        assert exactly_equal(p, fracs([["1", "0"], ["0", "1"]]))

    def test_dead_row_filled_uniformly(self):
        q, p = forward_pair_from(_exact_joint([[0, 0], ["1/2", "1/2"]]))
        assert exactly_equal(q, fracs(["0", "1"]))
        assert exactly_equal(p, fracs([["1/2", "1/2"], ["1/2", "1/2"]]))

    def test_round_trip_with_positive_marginals(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            n = int(rng.integers(2, 5))
            q0 = random_exact_vector(rng, n)
            p0 = random_exact_matrix(rng, n)
            joint = joint_from(q0, p0)
            q, p = forward_pair_from(joint)
            assert exactly_equal(q, q0)
            assert exactly_equal(p, p0)
            assert exactly_equal(joint_from(q, p), joint)


class TestMarginalCompatibility:
    def test_symmetric_marginal_transpose(self):
        q = _exact_joint([["1/4", "1/4"], ["1/4", "1/4"]])
        assert is_marginally_compatible(q, q.transpose())

    def test_mismatch_pair_only_one_way(self):
        a = _exact_joint(Q1_MISMATCH)
        b = _exact_joint(Q2_MISMATCH)
        assert is_marginally_compatible(a, b)
        assert not is_marginally_compatible(b, a)

    def test_chained_construction_always_compatible(self):
        rng = np.random.default_rng(43)
        q0 = random_exact_vector(rng, 3)
        p = random_exact_matrix(rng, 3)
        p_next = random_exact_matrix(rng, 3)
        first = joint_from(q0, p)
        second = joint_from(ProbVector(q0.entries @ p.entries, exact=True), p_next)
        assert is_marginally_compatible(first, second)


class TestLawFromJointSequence:
    def test_single_matrix_round_trip(self):
        rng = np.random.default_rng(47)
        q0 = random_exact_vector(rng, 2)
        p0 = random_exact_matrix(rng, 2)
        law = law_from_joint_sequence(JointSequence([joint_from(q0, p0)]))
        assert exactly_equal(law.initial, q0)
        assert exactly_equal(law.steps[0], p0)

    def test_two_step_law_from_mismatch_matrix(self):
        first = _exact_joint(Q1_MISMATCH)
        follow = StochasticMatrix([["1/4", "3/4"], ["2/5", "3/5"]], exact=True)
        second = joint_from(ProbVector(first.right_marginal, exact=True), follow)
        law = law_from_joint_sequence(JointSequence([first, second]))
        assert exactly_equal(law.initial, fracs(["3/10", "7/10"]))
        assert law.horizon == 3
        assert exactly_equal(marginal_at(law, 2), fracs(["2/5", "3/5"]))
        assert exactly_equal(joint_from(marginal_at(law, 2), law.steps[1]), second)

    def test_constant_symmetric_matrix_gives_homogeneous_law(self):
        q = _exact_joint([["1/6", "1/3"], ["1/3", "1/6"]])
        law = law_from_joint_sequence(JointSequence([q, q, q]))
        for a, b in zip(law.steps, law.steps[1:]):
            assert exactly_equal(a, b)

    def test_incompatible_sequence_rejected(self):
        with pytest.raises(IncompatibleSequence):
            JointSequence([_exact_joint(Q2_MISMATCH), _exact_joint(Q1_MISMATCH)])


class TestPathProbabilityJoint:
    def test_single_matrix_is_entry(self):
        q = _exact_joint(Q1_MISMATCH)
        seq = JointSequence([q])
        for x, y in itertools.product(range(2), repeat=2):
            assert path_probability_joint(seq, (x, y)) == q.entries[x, y]

    def test_zero_interior_marginal_gives_zero(self):
        dead = _exact_joint([[0, 0], [0, 1]])
        seq = JointSequence([dead, dead])
        assert path_probability_joint(seq, (0, 0, 0)) == 0
        assert path_probability_joint(seq, (1, 1, 1)) == 1

    def test_agrees_with_forward_product_exhaustively(self):
        rng = np.random.default_rng(53)
        for _ in range(5):
            q0 = random_exact_vector(rng, 3)
            mats = []
            q = q0
            for _ in range(3):
                p = random_exact_matrix(rng, 3)
                mats.append(joint_from(q, p))
                q = ProbVector(q.entries @ p.entries, exact=True)
            seq = JointSequence(mats)
            law = law_from_joint_sequence(seq)
            for path in itertools.product(range(3), repeat=4):
                assert path_probability_joint(seq, path) == path_probability(
                    law, path
                )

    def test_total_mass_is_one(self):
        rng = np.random.default_rng(59)
        q0 = random_exact_vector(rng, 3)
        mats = []
        q = q0
        for _ in range(2):
            p = random_exact_matrix(rng, 3)
            mats.append(joint_from(q, p))
            q = ProbVector(q.entries @ p.entries, exact=True)
        seq = JointSequence(mats)
        total = sum(
            path_probability_joint(seq, path)
            for path in itertools.product(range(3), repeat=3)
        )
        assert total == 1


class TestReverseJointSequence:
    def test_symmetric_single_matrix_fixed(self):
        q = _exact_joint([["1/6", "1/3"], ["1/3", "1/6"]])
        rev = reverse_joint_sequence(JointSequence([q]))
        assert exactly_equal(rev.mats[0], q)

    def test_transposes_in_reverse_order(self):
        a = _exact_joint(Q1_MISMATCH)
        follow = StochasticMatrix([["1/4", "3/4"], ["2/5", "3/5"]], exact=True)
        b = joint_from(ProbVector(a.right_marginal, exact=True), follow)
        rev = reverse_joint_sequence(JointSequence([a, b]))
        assert exactly_equal(rev.mats[0], b.entries.T)
        assert exactly_equal(rev.mats[1], a.entries.T)

    def test_double_reverse_identity_and_path_symmetry(self):
        rng = np.random.default_rng(61)
        q0 = random_exact_vector(rng, 3)
        mats = []
        q = q0
        for _ in range(3):
            p = random_exact_matrix(rng, 3)
            mats.append(joint_from(q, p))
            q = ProbVector(q.entries @ p.entries, exact=True)
        seq = JointSequence(mats)
        rev = reverse_joint_sequence(seq)
        back = reverse_joint_sequence(rev)
        for got, want in zip(back.mats, seq.mats):
            assert exactly_equal(got, want)
        for path in itertools.product(range(3), repeat=4):
            assert path_probability_joint(seq, path) == path_probability_joint(
                rev, path[::-1]
            )

    def test_reversal_with_zero_marginals_keeps_path_symmetry(self):
        # no forward law exists here, yet the quotient convention still
        # reverses consistently
        dead = _exact_joint([[0, 0], [0, 1]])
        seq = JointSequence([dead, dead])
        rev = reverse_joint_sequence(seq)
        for path in itertools.product(range(2), repeat=3):
            assert path_probability_joint(seq, path) == path_probability_joint(
                rev, path[::-1]
            )


class TestIsSymmetric:
    def test_stationary_two_state_joint_is_symmetric(self, p1, pi1):
        assert is_symmetric(joint_from(pi1, p1))

    def test_asymmetric_matrix(self):
        assert not is_symmetric(_exact_joint(Q1_MISMATCH))

    def test_diagonal_matrix(self):
        assert is_symmetric(_exact_joint([["1/4", "0"], ["0", "3/4"]]))

    def test_matches_detailed_balance_at_stationarity(self, p1, p2, pi1, pi2):
        from credalmc import detailed_balance_holds

        for p, pi in ((p1, pi1), (p2, pi2)):
            assert is_symmetric(joint_from(pi, p)) == detailed_balance_holds(p, pi)


class TestMarginalIdentities:
    def test_joint_sequence_marginals_match_law(self):
        rng = np.random.default_rng(67)
        q0 = random_exact_vector(rng, 4)
        steps = [random_exact_matrix(rng, 4) for _ in range(3)]
        law = TransitionLaw(q0, steps)
        q = q0
        for k, p in enumerate(steps, start=1):
            joint = joint_from(q, p)
            assert (joint.left_marginal == marginal_at(law, k).entries).all()
            assert (joint.right_marginal == marginal_at(law, k + 1).entries).all()
            q = ProbVector(q.entries @ p.entries, exact=True)
