"""Exception types shared across the package."""


class MfkError(Exception):
    """A domain error: the input is well-formed but the operation cannot proceed."""


class NotQuasiHomogeneous(MfkError):
    pass


class NonIsolatedSingularity(MfkError):
    pass


class ValidationError(MfkError):
    pass


class UngradedError(MfkError):
    pass


class WindowCapExceeded(MfkError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class VerificationFailed(MfkError):
    """A computed invariant disagreed with the expected value."""
