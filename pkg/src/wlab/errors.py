"""Exception types shared across the package."""


class WlabError(Exception):
    """Base class for all errors raised by wlab."""


class BadArgs(WlabError):
    """An argument is outside the documented domain of the operation."""


class NotPrime(WlabError):
    """A parameter that must be prime is composite (or below 2)."""


class EvenPrime(WlabError):
    """The prime 2 was supplied where an odd prime is required."""


class Overflow(WlabError):
    """A value or modulus would leave the unsigned 63-bit working range."""


class NonCoprimeModuli(WlabError):
    """Residue combination was attempted over moduli sharing a factor."""


class OracleBoundExceeded(WlabError):
    """The exact big-integer oracle was asked for an n above its cap."""


class RangeExceeded(WlabError):
    """A scan or sweep bound lies beyond the supported numeric range."""


class CheckpointCorrupt(WlabError):
    """A checkpoint file failed validation beyond its final line."""
