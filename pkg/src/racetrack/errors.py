"""Exception hierarchy shared by every racetrack module."""


class RacetrackError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(RacetrackError, ValueError):
    """An argument is outside the domain of the operation."""


class MembershipError(RacetrackError, ValueError):
    """A word is not a codeword of the requested code."""


class PatternError(RacetrackError, ValueError):
    """An error pattern is malformed or out of range for a head layout."""


class SamplingError(RacetrackError):
    """An error class admits no valid pattern for the given length and layout."""


class DecodeError(RacetrackError):
    """Decoding failed; the head outputs are inconsistent with the decoder's class."""


class ConstraintViolation(DecodeError):
    """The head outputs contradict the code constraint (e.g. no differing index)."""


class SyndromeError(DecodeError):
    """No single-deletion preimage has the requested checksum residue."""


class LengthError(DecodeError):
    """Head output lengths do not match any error count the decoder handles."""


class BudgetExceeded(RacetrackError):
    """An exhaustive check would exceed the configured enumeration budget."""
