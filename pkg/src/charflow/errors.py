"""Exception hierarchy shared by every charflow module."""


class CharflowError(Exception):
    """Base class for all library errors."""


class BackendMismatch(CharflowError):
    """Two scalars (or a scalar and an operation) disagree on the backend."""


class NonFiniteScalar(CharflowError, ValueError):
    """A float scalar is NaN or infinite."""


class ComponentMismatch(CharflowError):
    """An operation was applied to a character on the wrong component."""


class KindMismatch(CharflowError):
    """A conic-slice operation was applied to the wrong kind of slice."""


class NotHyperbolicSlice(CharflowError):
    """The point does not lie on a slice with |z| > 2."""


class DegenerateSlice(CharflowError):
    """The z-slice is empty, a point, or a pair of lines."""


class OutOfRange(CharflowError, ValueError):
    """A parameter lies outside the range an operation supports."""


class CoverFailure(CharflowError):
    """The greedy interval chain could not make progress."""


class PreconditionViolated(CharflowError):
    """Inputs violate the hypotheses under which a bound holds."""


class DepthCapExceeded(CharflowError):
    """An orbit enumeration was asked to go deeper than the configured cap."""


class EmptyRegion(CharflowError):
    """A sampling region has no points on the requested level set."""


class VerificationFailed(CharflowError):
    """An exact replay of a reduction witness diverged.

    ``step`` is the index of the first diverging point (``None`` when the
    replay matched but a terminator inequality failed).
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
