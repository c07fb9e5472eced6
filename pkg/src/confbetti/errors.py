"""Exception hierarchy shared by the library and the CLI."""


class ConfBettiError(Exception):
    """Base class for all errors raised by confbetti."""


class ValidationError(ConfBettiError):
    """A manifold model violates one or more consistency rules.

    ``violations`` holds every problem found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class HypothesisError(ConfBettiError):
    """An operation was asked to run outside the hypotheses it needs."""


class UnknownGeneratorError(ConfBettiError, KeyError):
    pass


class InternalCheckError(ConfBettiError, AssertionError):
    """A self-consistency check failed (d^2 != 0, Euler mismatch, ...)."""
