"""Exception types shared across the package."""


class NotChebyshevError(RuntimeError):
    """A construction failed in a way that indicates the input system is
    not actually a Chebyshev system on the given data, or is numerically
    degenerate there.

    Raised by the synthesis routines when a moment matrix loses rank,
    when extracted step heights fail the one-sign requirement, or when a
    post-verification of the constructed object does not hold.  The
    message names the failed invariant.
    """
