"""Multi-head position-error-correcting codes for racetrack memories."""

from .bitword import Word
from .channel import DeletionBurst, ErrorClass, ErrorPattern, HeadLayout, ReadOut, StickyBurst, random_pattern, read
from .constraints import CodeSpec, count, is_member, rank, redundancy, unrank
from .decoders import DecodeResult, decode, select_decoder
from .errors import (
    BudgetExceeded,
    ConstraintViolation,
    DecodeError,
    LengthError,
    MembershipError,
    ParameterError,
    PatternError,
    RacetrackError,
    SamplingError,
    SyndromeError,
)

__version__ = "0.1.0"

__all__ = [
    "Word",
    "CodeSpec",
    "count",
    "is_member",
    "rank",
    "redundancy",
    "unrank",
    "DeletionBurst",
    "StickyBurst",
    "ErrorClass",
    "ErrorPattern",
    "HeadLayout",
    "ReadOut",
    "random_pattern",
    "read",
    "DecodeResult",
    "decode",
    "select_decoder",
    "RacetrackError",
    "ParameterError",
    "MembershipError",
    "PatternError",
    "SamplingError",
    "DecodeError",
    "ConstraintViolation",
    "SyndromeError",
    "LengthError",
    "BudgetExceeded",
]
