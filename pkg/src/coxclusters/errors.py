"""Exception hierarchy for domain errors.

Everything raised on bad input or exhausted search caps derives from
CoxeterError, so callers (and the command line front end) can catch one
type.  Genuine bugs keep raising plain exceptions.
"""


class CoxeterError(Exception):
    """Base class for all domain errors raised by this package."""


class GraphSpecError(CoxeterError, ValueError):
    """Malformed Coxeter graph description or unknown vertex label."""


class WordSpecError(CoxeterError, ValueError):
    """Malformed textual word description."""


class NotReducedError(CoxeterError, ValueError):
    """A word required to be reduced is not."""


class RootSequenceError(CoxeterError, ValueError):
    """A root list is not the root sequence of any reduced word."""


class NoBraidMoveError(CoxeterError, ValueError):
    """No braid move applies at the requested position."""


class CapExceededError(CoxeterError, RuntimeError):
    """A closure or enumeration outgrew its node cap before finishing."""


class NotBraidClusterError(CoxeterError, ValueError):
    """A word does not have the braid cluster shape."""


class NotMaximallyClusteredError(CoxeterError, ValueError):
    """An operation restricted to maximally clustered elements got one that is not."""


class NotContractedError(CoxeterError, ValueError):
    """A word did not parse as a contracted expression.

    Callers holding an arbitrary reduced word of a maximally clustered
    element should run find_contracted_expression first.
    """


class ScopeError(CoxeterError, ValueError):
    """The Coxeter graph lies outside the scope an operation supports."""


class ClusterIndexError(CoxeterError, IndexError):
    """Cluster index out of range for a contracted decomposition."""


class InvariantViolationError(CoxeterError, RuntimeError):
    """Internal consistency check failed; indicates an upstream bug."""


class NormalizationError(InvariantViolationError):
    """No normalized representative was found for a braid cluster."""
