"""
Exceptions raised by the valuation library.
"""


class ValcalcError(Exception):
    """Base class for every error raised by the library."""
    pass


class ParseError(ValcalcError, ValueError):
    """Malformed external input (rationals, weights, JSON documents)."""
    pass


class InvalidClusterError(ValcalcError, ValueError):
    """Proximity data that does not describe a legal cluster."""
    pass


class BasisMismatchError(ValcalcError, ValueError):
    """Two divisors living on different clusters or fans were combined."""
    pass


class InvalidWeightsError(ValcalcError, ValueError):
    """Weight vector outside the domain of an operation."""
    pass


class InvalidIdealError(ValcalcError, ValueError):
    """Zero ideal, or unit ideal where a proper ideal is required."""
    pass


class DimensionNotSupportedError(ValcalcError, ValueError):
    """Polyhedral routines only run in a bounded number of variables."""
    pass


class RealizabilityError(ValcalcError, ValueError):
    """Multiplicities violating the proximity inequalities."""
    pass


class StreamExhaustedError(ValcalcError, ValueError):
    """A finite continued fraction was asked for more terms than it has."""
    pass


class IterationCapExceeded(ValcalcError):
    """An iterative computation hit its cap without a certified answer."""
    pass
