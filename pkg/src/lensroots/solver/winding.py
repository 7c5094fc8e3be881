"""Winding number of f along a circle, by adaptive argument tracking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ZeroOnContourError
from ..mixedpoly import MixedPolynomial, degrees, evaluate

ZERO_RTOL = 1e-9


@dataclass(frozen=True)
class Contour:
    """Circle ``|z - center| = radius`` traversed counterclockwise."""

    center: complex = 0j
    radius: float = 1.0
    max_arg_step: float = np.pi / 8
    max_refinement_depth: int = 24

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("contour radius must be positive")
        if not 0 < self.max_arg_step <= np.pi / 2:
            raise ValueError("max_arg_step must lie in (0, pi/2]")
        if self.max_refinement_depth < 1:
            raise ValueError("max_refinement_depth must be positive")

    def point(self, theta):
        return self.center + self.radius * np.exp(1j * np.asarray(theta))


def winding_number(f: MixedPolynomial, contour: Contour) -> int:
    """Number of turns of ``f`` around 0 along ``contour``.

    Intervals whose argument increment reaches ``max_arg_step`` are bisected
    until every increment is below it.

    Raises
    ------
    ZeroOnContourError
        If ``|f|`` is below ``1e-9`` of its term scale at a sample, or the
        increments cannot be resolved within ``max_refinement_depth`` bisections.
    """
    if f.is_zero():
        raise ZeroOnContourError("zero polynomial vanishes on every contour")
    d = degrees(f).mixed
    n0 = max(64, 16 * d)
    theta = 2 * np.pi * np.arange(n0 + 1) / n0
    vals = _checked(f, contour, theta)
    for _ in range(contour.max_refinement_depth + 1):
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.flatnonzero(np.abs(steps) >= contour.max_arg_step)
        if bad.size == 0:
            turns = steps.sum() / (2 * np.pi)
            return int(round(turns))
        mids = 0.5 * (theta[bad] + theta[bad + 1])
        mvals = _checked(f, contour, mids)
        theta = np.insert(theta, bad + 1, mids)
        vals = np.insert(vals, bad + 1, mvals)
    raise ZeroOnContourError(
        f"argument of f not resolved on circle |z-{contour.center}|={contour.radius}"
    )


def _checked(f, contour, theta):
    z = contour.point(theta)
    v = evaluate(f, z)
    small = np.abs(v) < ZERO_RTOL * f.magnitude_scale(z)
    if np.any(small):
        raise ZeroOnContourError(f"f vanishes on the contour near {z[np.argmax(small)]}")
    return v
