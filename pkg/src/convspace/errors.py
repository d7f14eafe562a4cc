"""Exception taxonomy shared by every module.

The CLI maps each class onto a fixed exit status, so new failure modes
should subclass one of these rather than raising bare ``ValueError``.
"""


class ConvexityError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ConvexityError, ValueError):
    """An input file or shorthand string does not match its schema."""


class CapExceededError(ConvexityError):
    """An exhaustive scan was requested on a space larger than the cap."""


class HypothesisViolation(ConvexityError):
    """A precondition of a lemma-style procedure does not hold.

    ``witness`` carries whatever object demonstrates the violation.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SeparationError(HypothesisViolation):
    """No halfspace separates a convex set from an outside point."""


class VerificationError(ConvexityError):
    """An internal cross-check failed. Always a bug or a broken premise."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
