"""Exception hierarchy shared by the library and the CLI."""


class MccacError(Exception):
    """Base class for every error raised by this package."""


class InvalidPatternError(MccacError, ValueError):
    """A scheduling pattern has duplicate entries or out-of-range indices."""


class ClassificationUnsupported(MccacError, ValueError):
    """Type classification is only defined for weights 3 and 4."""


class InvalidPairError(MccacError, ValueError):
    """Cross-correlation was requested for a codeword against itself."""


class BoundNotApplicable(MccacError, ValueError):
    """The parameters fall outside the range where the closed-form bound is proven."""


class NotPrimeError(MccacError, ValueError):
    pass


class HypothesisNotMet(MccacError, ValueError):
    """A construction was asked for parameters its existence result does not cover."""


class ShapeInfeasible(MccacError, ValueError):
    """The requested GBRD shape violates the divisibility condition."""


class ConstructionUnavailable(MccacError):
    """A construction ingredient could not be obtained.

    ``prerequisite`` names the missing ingredient.
    """

    def __init__(self, message, prerequisite=None):
        super().__init__(message)
        self.prerequisite = prerequisite


class BudgetExhausted(MccacError):
    """A backtracking search hit its node or time budget before finishing."""

    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


class InstanceTooLarge(MccacError, ValueError):
    pass


class CorruptedOutcome(MccacError, AssertionError):
    """A search result failed re-verification; this is always a bug."""


class UnknownCodeword(MccacError, ValueError):
    pass


class GuaranteeNotClaimed(MccacError):
    """More nodes are active than the code weight supports."""


class UnknownFixture(MccacError, KeyError):
    pass


class CodeFileError(MccacError):
    """Base for code-file problems."""


class ParseError(CodeFileError):
    """Malformed code file; the message carries line or field context."""


class ValidationError(CodeFileError):
    """Well-formed code file whose contents break a code invariant."""
