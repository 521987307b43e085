"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/geometry/validation problems
exit 2, capacity limits exit 3, numerical and Fredholm failures exit 4.
"""


class QuasifractalError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(QuasifractalError, ValueError):
    """An argument is outside its documented domain."""


class CapacityError(QuasifractalError):
    """A requested depth exceeds the configured subdivision cap."""


class MalformedLoopError(QuasifractalError, ValueError):
    """A loop has too few vertices or is degenerate."""


class UnsupportedGeometryError(QuasifractalError, ValueError):
    """Input geometry is outside the supported class (e.g. not axis-parallel)."""


class IndeterminateWindingError(QuasifractalError, ValueError):
    """The query point lies on the loop, so the winding number is undefined."""


class NotFredholmError(QuasifractalError):
    """The symbol vanishes (or nearly vanishes) on the unit circle."""


class NumericalError(QuasifractalError):
    """A numerical routine failed to converge."""


class SamplingFailureError(NumericalError):
    """Argument sampling did not settle on an integer winding number."""
