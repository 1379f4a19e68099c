"""Exception hierarchy shared by all modules."""


class AdoFramesError(Exception):
    """Base class for every error raised by the package."""


class InputError(AdoFramesError, ValueError):
    """Malformed input (shape mismatch, unparsable value, bad JSON)."""


class UnknownAlgebraError(InputError, KeyError):
    """Requested name is not a catalog key or alias."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ParameterRangeError(InputError):
    """A family parameter lies outside its admissible range."""


class NotFaithfulError(AdoFramesError):
    """The requested construction is not faithful for this algebra."""


class UnsupportedBasisError(AdoFramesError):
    """The ideal basis violates the straightening order contract."""


class UnsupportedStructureError(AdoFramesError):
    """No construction case applies to this algebra."""


class TerminationCapError(AdoFramesError):
    """A recursion exceeded its configured degree or round cap."""


class InternalConsistencyError(AdoFramesError):
    """A self-check of a constructed object failed (a bug guard)."""


class NumericFailure(AdoFramesError, ArithmeticError):
    """A floating point routine failed to converge or overflowed."""


class InterpolationError(NumericFailure):
    """The confluent interpolation system could not be solved."""


class LogDomainError(NumericFailure):
    """The principal logarithm is undefined or unreachable."""


class CoordinatesTooLargeError(NumericFailure):
    """The logarithm left the span of the representation."""


class ChartBoundaryError(NumericFailure):
    """A frame became singular, so the chart does not extend here."""
