class VerifierError(Exception):
    """Base class for every error raised by the verifier services."""


class ParameterError(VerifierError, ValueError):
    """A precondition on an operation's arguments was violated."""


class VerificationError(VerifierError):
    """
    A mathematical claim failed to hold on exact data.

    Args:
        message (str): Human readable description of the failed claim
        details (dict, optional): Values that witness the failure
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = dict(details or {})
