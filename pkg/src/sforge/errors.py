"""Exception hierarchy shared across the library and the CLI.

The CLI maps ParseError to exit code 2 and PreconditionError (and its
subclasses) to exit code 3; everything else is a bug.
"""


class SforgeError(Exception):
    """Base class for all library errors."""


class ParseError(SforgeError):
    """Malformed graph or polynomial input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class PreconditionError(SforgeError):
    """The input is well-formed but outside an operation's domain."""


class SingularMatrixError(PreconditionError):
    """A nonsingular matrix was required."""


class NotNegativeDefiniteError(PreconditionError):
    """The intersection matrix is not negative definite."""


class NotQhsTreeError(PreconditionError):
    """Not a QHS tree: the graph has a cycle, positive genus, or an
    indefinite intersection matrix."""


class NoNodesError(PreconditionError):
    """Degenerate splice diagram without nodes (cyclic-quotient/smooth
    case); equation generation refuses these."""


class SemigroupConditionError(PreconditionError):
    """An operation requiring the semigroup condition was called on a
    diagram that fails it."""


class ConditionsNotMetError(PreconditionError):
    """Equation emission refused because the semigroup or congruence
    condition fails; carries the offending node/direction."""


class NonMinimalRepresentableError(PreconditionError):
    """Blow-down produced a weight >= 0 vertex that cannot be absorbed
    by (-1)-contractions alone."""
