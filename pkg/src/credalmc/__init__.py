"""Precise and credal finite-state Markov chains.

The package models chains three ways and moves between them: forward
transition laws (initial distribution plus step matrices), sequences of
joint-distribution matrices over consecutive state pairs, and credal sets
of joint matrices given by vertices or entrywise interval bounds.  Time
reversal, reversibility checks, random walks on (interval-)weighted
graphs, and linear-programming bounds on path functionals are built on
top, in either exact rational or float arithmetic.
"""

from .core import (
    Path,
    ProbVector,
    StochasticMatrix,
    TransitionLaw,
    detailed_balance_holds,
    marginal_at,
    path_probability,
    q_reverse,
    reverse_law,
    stationary_distribution,
)
from .credal import (
    Gamble2,
    IntervalJointSet,
    MatrixSet,
    VertexCredalSet,
    check_invariant_hull,
    convex_hull_membership,
    forward_joint_set_vertices,
    is_symmetric_set,
    left_marginals,
    minimal_interval_hull,
    minimal_reversible_extension,
    reverse_gamble,
    right_marginals,
    tighten_bounds,
)
from .errors import (
    BudgetExceeded,
    CredalmcError,
    DegenerateWeights,
    DirectedUnsupported,
    EmptyCredalSet,
    IncompatibleSequence,
    IsolatedVertex,
    ModelFormatError,
    NegativeSolution,
    NoFeasibleGridPoint,
    NoFeasibleGridPointWarning,
    NonUniqueStationary,
    ZeroMarginal,
)
from .jointrep import (
    JointMatrix,
    JointSequence,
    forward_pair_from,
    is_marginally_compatible,
    is_symmetric,
    joint_from,
    law_from_joint_sequence,
    path_probability_joint,
    reverse_joint_sequence,
)
from .lp import (
    LinearProgram,
    LpOutcome,
    build_nstep_program,
    lower_expectation_nstep,
    lower_expectation_two_step,
    solve,
    to_lp_text,
    upper_expectation_nstep,
    upper_expectation_two_step,
)
from .numeric import Tolerance
from .oracle import (
    GridSpec,
    enumerate_compatible_laws,
    enumerate_compatible_sequences,
    enumerate_path_distribution,
    grid_members,
    grid_min_expectation,
    law_expectation,
)
from .randomwalk import (
    IntervalWeightSet,
    NonconvexityWitness,
    WeightMatrix,
    is_symmetric_weight_set,
    transition_set_nonconvexity_witness,
    walk_joint,
    walk_lower_expectation,
    walk_stationary,
    walk_transition,
    walk_upper_expectation,
)

__version__ = "0.1.0"
