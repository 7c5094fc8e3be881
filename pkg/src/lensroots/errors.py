"""Exception types raised by the solver and its helpers."""


class LensRootsError(Exception):
    """Base class for every error raised by this package."""


class NonIsolatedZeroSet(LensRootsError):
    """The eliminant vanishes identically: f has a curve of zeros."""

    def __init__(self, message="non-isolated zero set (identically zero resultant)"):
        super().__init__(message)


class ConvergenceError(LensRootsError):
    """An iteration hit its cap without meeting the stopping rule."""


class SingularJacobianError(LensRootsError):
    """Newton met a (numerically) singular real Jacobian."""


class ZeroOnContourError(LensRootsError):
    """f vanishes (numerically) on a winding contour."""


class MalformedInput(LensRootsError, ValueError):
    """Input file or family spec could not be turned into a polynomial."""
