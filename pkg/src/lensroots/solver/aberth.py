"""Simultaneous root finding by Aberth-Ehrlich iteration."""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError
from .resultant import UnivariatePolynomial

MAX_SWEEPS = 200
STOP_RTOL = 1e-13
FAIL_RTOL = 1e-8


def cauchy_bound(coefficients) -> float:
    """``1 + max |c_j / c_d|``: every root lies in the closed disk of this radius."""
    c = np.asarray(coefficients, dtype=complex)
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1]))) if len(c) > 1 else 0.0


def start_points(c: np.ndarray) -> np.ndarray:
    """Initial guesses on circles read off the Newton polygon of ``log|c_j|``.

    Each edge of the upper convex hull from index ``i`` to ``k`` contributes
    ``k - i`` points on a circle of radius ``|c_i / c_k|^(1/(k-i))``.
    """
    d = len(c) - 1
    mag = np.abs(c)
    idx = np.flatnonzero(mag)
    logs = np.log(mag[idx])
    hull: list[int] = []
    for j in range(len(idx)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # drop b if it lies on or below the chord a -> j
            if (logs[b] - logs[a]) * (idx[j] - idx[a]) <= (logs[j] - logs[a]) * (idx[b] - idx[a]):
                hull.pop()
            else:
                break
        hull.append(j)
    z = []
    for e, (a, b) in enumerate(zip(hull[:-1], hull[1:])):
        k = idx[b] - idx[a]
        radius = np.exp((logs[a] - logs[b]) / k)
        # offset angle avoids symmetric starts that stall on real-coefficient input
        theta = 2 * np.pi * np.arange(k) / k + 2 * np.pi * e / d + 0.4
        z.append(radius * np.exp(1j * theta))
    return np.concatenate(z)


def _aberth(c: np.ndarray) -> np.ndarray:
    z = start_points(c)
    desc = c[::-1]
    ddesc = np.polyder(desc)
    adesc = np.abs(desc)
    eps = np.finfo(float).eps
    active = np.ones(len(z), dtype=bool)
    for _ in range(MAX_SWEEPS):
        rows = np.flatnonzero(active)
        za = z[rows]
        p = np.polyval(desc, za)
        dp = np.polyval(ddesc, za)
        diff = za[:, None] - z[None, :]
        # exclude self-interaction; the matching diagonal element is 0
        diff[np.arange(len(rows)), rows] = np.inf
        sigma = np.sum(1.0 / diff, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            w = ratio / (1.0 - ratio * sigma)
        w = np.where(np.isfinite(w), w, 0.0)
        w[p == 0] = 0.0
        z[rows] = za - w
        # converged: tiny relative step, or residual already at rounding level
        backward = np.abs(p) <= 8 * eps * np.polyval(adesc, np.abs(za))
        done = (np.abs(w) <= STOP_RTOL * np.abs(za)) | backward
        active[rows[done]] = False
        if not active.any():
            return z
    za = z[active]
    berr = np.abs(np.polyval(desc, za)) / np.polyval(adesc, np.abs(za))
    if berr.max() > FAIL_RTOL:
        raise ConvergenceError(f"no convergence: backward error {berr.max():.3g} after {MAX_SWEEPS} sweeps")
    return z


def univariate_roots(p: UnivariatePolynomial) -> np.ndarray:
    """All complex roots of ``p`` with multiplicity.

    Exact zero roots are deflated first; the rest come from Aberth-Ehrlich
    iteration started on the Newton-polygon circles.
    """
    c = np.asarray(p.coefficients, dtype=complex)
    if len(c) < 2:
        raise ValueError("univariate_roots needs degree >= 1")
    nz = np.flatnonzero(c)
    zeros = int(nz[0])
    c = c[zeros:]
    if len(c) == 1:
        roots = np.zeros(0, dtype=complex)
    elif len(c) == 2:
        roots = np.array([-c[0] / c[1]])
    else:
        roots = _aberth(c)
    return np.concatenate([np.zeros(zeros, dtype=complex), roots * p.scale])
