"""Newton's method on the real system (Re f, Im f) = 0 in (x, y)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceError, SingularJacobianError
from ..mixedpoly import MixedPolynomial, evaluate, wirtinger

MAX_STEPS = 100
RESIDUAL_RTOL = 1e-11
STEP_RTOL = 1e-14
SINGULAR_RTOL = 1e-12
DEGENERATE_RTOL = 1e-8


@dataclass(frozen=True)
class Root:
    """A located zero of ``f``.

    ``jacobian`` is ``det d(g, h)/d(x, y) = |f_z|^2 - |f_zbar|^2`` at
    ``location``; ``sign`` is ``"+"``, ``"-"`` or ``"0"`` (degenerate).
    """

    location: complex
    jacobian: float
    sign: str
    residual: float
    newton_iterations: int = 0

    @property
    def sign_value(self) -> int:
        return {"+": 1, "-": -1, "0": 0}[self.sign]


class Jet:
    """``f`` with its Wirtinger derivatives, evaluated together."""

    def __init__(self, f: MixedPolynomial):
        self.f = f
        self.fz, self.fzb = wirtinger(f)

    def __call__(self, z):
        return evaluate(self.f, z), evaluate(self.fz, z), evaluate(self.fzb, z)

    def jacobian(self, z):
        _, a, b = self(z)
        return np.abs(a) ** 2 - np.abs(b) ** 2

    def real_jacobian_matrix(self, z) -> np.ndarray:
        """``[[g_x, g_y], [h_x, h_y]]`` from ``f_x = f_z + f_zbar``, ``f_y = i (f_z - f_zbar)``."""
        _, a, b = self(z)
        fx = a + b
        fy = 1j * (a - b)
        return np.array([[fx.real, fy.real], [fx.imag, fy.imag]])


def newton_step(val, a, b):
    """Solve ``a d + b conj(d) = -val`` (the real 2x2 Newton system) for ``d``."""
    J = np.abs(a) ** 2 - np.abs(b) ** 2
    r = -val
    return (np.conj(a) * r - b * np.conj(r)) / J, J


def classify_sign(f: MixedPolynomial, z: complex, J: float) -> str:
    thresh = DEGENERATE_RTOL * f.derivative_scale(z) ** 2
    if J > thresh:
        return "+"
    if J < -thresh:
        return "-"
    return "0"


def newton_polish(f: MixedPolynomial, z0: complex, jet: Jet | None = None,
                  max_steps: int = MAX_STEPS) -> Root:
    """Polish ``z0`` to a root of ``f`` and classify its sign.

    Stops when ``|f| <= 1e-11 * sum |a||z|^(nu+mu)`` or when the step is
    below ``1e-14 * (1 + |z|)``.

    Raises
    ------
    ConvergenceError
        After ``max_steps`` steps without meeting either rule.
    SingularJacobianError
        If ``|J|`` drops below ``1e-12`` times the squared derivative scale.
    """
    jet = jet or Jet(f)
    z = complex(z0)
    for it in range(max_steps + 1):
        val, a, b = jet(z)
        if abs(val) <= RESIDUAL_RTOL * f.magnitude_scale(z):
            break
        if it == max_steps:
            raise ConvergenceError(f"diverged: Newton from {z0} did not converge in {max_steps} steps")
        with np.errstate(divide="ignore", invalid="ignore"):
            step, J = newton_step(val, a, b)
        if abs(J) < SINGULAR_RTOL * f.derivative_scale(z) ** 2 or not np.isfinite(step):
            raise SingularJacobianError(f"singular Jacobian near {z}")
        z = z + complex(step)
        if abs(step) < STEP_RTOL * (1 + abs(z)):
            it += 1
            break
    val, a, b = jet(z)
    J = float(abs(a) ** 2 - abs(b) ** 2)
    return Root(z, J, classify_sign(f, z, J), float(abs(val)), it)


def newton_batch(jet: Jet, z0: np.ndarray, max_steps: int = MAX_STEPS) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Newton from many starts; returns ``(points, converged_mask)``.

    Same update and stopping rules as :func:`newton_polish`; starts that hit a
    singular Jacobian or leave the finite range are marked not converged.
    """
    f = jet.f
    z = np.array(z0, dtype=complex).ravel()
    alive = np.ones(z.shape, dtype=bool)
    done = np.zeros(z.shape, dtype=bool)
    for _ in range(max_steps):
        idx = np.flatnonzero(alive & ~done)
        if idx.size == 0:
            break
        zi = z[idx]
        val, a, b = jet(zi)
        ok = np.abs(val) <= RESIDUAL_RTOL * f.magnitude_scale(zi)
        done[idx[ok]] = True
        idx, zi, val, a, b = idx[~ok], zi[~ok], val[~ok], a[~ok], b[~ok]
        with np.errstate(all="ignore"):
            step, J = newton_step(val, a, b)
            bad = (np.abs(J) < SINGULAR_RTOL * f.derivative_scale(zi) ** 2) | ~np.isfinite(step)
        alive[idx[bad]] = False
        idx, zi, step = idx[~bad], zi[~bad], step[~bad]
        znew = zi + step
        z[idx] = znew
        small = np.abs(step) < STEP_RTOL * (1 + np.abs(znew))
        done[idx[small]] = True
        alive[idx[np.abs(znew) > 1e12]] = False
    return z, done & alive
