"""Exception types shared across the package."""


class CredalmcError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroMarginal(CredalmcError):
    """A reversal was requested at a marginal with a zero (or numerically
    zero) entry, where the backward transition matrix is undefined."""


class NonUniqueStationary(CredalmcError):
    """The linear system for the stationary distribution is rank-deficient
    beyond the single degree of freedom fixed by normalization."""


class NegativeSolution(CredalmcError):
    """A linear solve returned a distribution with a negative entry."""


class IncompatibleSequence(CredalmcError):
    """Adjacent joint matrices in a sequence have mismatched marginals."""


class EmptyCredalSet(CredalmcError):
    """An interval credal set contains no probability distribution."""


class BudgetExceeded(CredalmcError):
    """An enumeration or program size exceeds the configured budget."""


class NoFeasibleGridPoint(CredalmcError):
    """A grid scan over a credal set found no feasible point."""


class IsolatedVertex(CredalmcError):
    """A random-walk weight matrix has a vertex with zero outgoing weight."""


class DirectedUnsupported(CredalmcError):
    """The requested quantity is only defined for undirected weights."""


class DegenerateWeights(CredalmcError):
    """All weight functions in the set have zero total weight."""


class ModelFormatError(CredalmcError):
    """A model or gamble document could not be parsed."""


class NoFeasibleGridPointWarning(UserWarning):
    """Grid enumeration over a credal set produced no members."""
