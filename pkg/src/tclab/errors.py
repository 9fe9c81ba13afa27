"""Exception hierarchy shared across the toolkit."""


class TCLabError(Exception):
    """Base class for all toolkit errors."""


class NotOSequence(TCLabError):
    """A candidate Hilbert-function vector violates admissibility."""

    def __init__(self, reason, index):
        super().__init__(f"not an O-sequence at index {index}: {reason}")
        self.reason = reason
        self.index = index


class JumpTooLarge(TCLabError):
    """The maximal Hilbert-function jump exceeds what the operation supports."""


class NotCIAdmissible(TCLabError):
    """The O-sequence is not realizable by a complete intersection."""


class InvalidSequences(TCLabError):
    """A (c, e) sequence pair violates one of its defining conditions."""


class MonotonicityViolation(TCLabError):
    """A gcd-degree sequence fails to be strictly decreasing to zero."""


class MissingEntry(TCLabError):
    """Cancellation requested at a degree absent from the Betti table."""

    def __init__(self, position):
        super().__init__(f"no Betti entry at {position}")
        self.position = position


class NoSlot(TCLabError):
    """No matrix entry can realize the requested cancellation."""


class Unreachable(TCLabError):
    """No cancellation schedule attains the requested generator count."""


class TruncationTooSmall(TCLabError):
    """The working precision does not contain the socle of the quotient."""


class NotArtinian(TCLabError):
    """The quotient ring appears to have positive dimension."""


class SmallOrderWarning(UserWarning):
    """An input lies outside the square of the maximal ideal (order < 2)."""
