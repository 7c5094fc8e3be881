"""Conjugate-pair elimination: f(z, zbar) = 0  ->  univariate eliminant R(z).

Writing ``w`` for ``zbar``, every root of ``f`` gives a solution ``(z, conj z)``
of the polynomial system

    F(z, w) = sum a[nu, mu] z^nu w^mu
    G(z, w) = sum conj(a[nu, mu]) w^nu z^mu

and the Sylvester resultant of ``F`` and ``G`` in ``w`` vanishes at its
``z``-coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NonIsolatedZeroSet
from ..mixedpoly import MixedPolynomial

COEF_TRIM_RTOL = 1e-10
# sampled determinants below this fraction of the Hadamard bound count as zero
ZERO_DET_RTOL = 1e-11


@dataclass(frozen=True)
class UnivariatePolynomial:
    """``p(z) = sum coefficients[j] * (z / scale)**j``.

    Keeping a scale lets the eliminant be stored in a balanced basis; with
    ``scale == 1`` the coefficients are the plain ascending ones.
    """

    coefficients: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coefficients, dtype=complex))
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        s = np.asarray(z, dtype=complex) / self.scale
        return np.polyval(self.coefficients[::-1], s)

    def unscaled(self) -> np.ndarray:
        """Plain ascending coefficients (may over/underflow for wild scales)."""
        return self.coefficients / self.scale ** np.arange(len(self.coefficients))


@dataclass(frozen=True)
class BivariatePolynomial:
    """Dense ``coef[i, j]`` of ``z^i w^j``."""

    coef: np.ndarray

    @property
    def deg_w(self) -> int:
        nz = np.flatnonzero(np.any(self.coef != 0, axis=0))
        return int(nz[-1]) if nz.size else 0

    @property
    def deg_z(self) -> int:
        nz = np.flatnonzero(np.any(self.coef != 0, axis=1))
        return int(nz[-1]) if nz.size else 0

    def w_coefficients(self, z) -> np.ndarray:
        """Coefficients in ``w`` (ascending) at each ``z``: shape ``z.shape + (deg_w+1,)``."""
        z = np.asarray(z, dtype=complex)
        c = self.coef[:, : self.deg_w + 1]
        out = np.zeros(z.shape + (c.shape[1],), dtype=complex)
        for i in range(c.shape[0] - 1, -1, -1):
            out = out * z[..., None] + c[i]
        return out

    def __call__(self, z, w):
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for j in range(self.coef.shape[1] - 1, -1, -1):
            inner = np.zeros_like(out)
            for i in range(self.coef.shape[0] - 1, -1, -1):
                inner = inner * z + self.coef[i, j]
            out = out * w + inner
        return out


def bivariate_pair(f: MixedPolynomial) -> tuple[BivariatePolynomial, BivariatePolynomial]:
    if f.is_zero():
        raise ValueError("bivariate_pair needs a nonzero polynomial")
    a = np.array(f.dense())
    return BivariatePolynomial(a), BivariatePolynomial(np.conj(a).T.copy())


def sylvester_matrices(F: BivariatePolynomial, G: BivariatePolynomial, z) -> np.ndarray:
    """Stack of Sylvester matrices (in ``w``) of ``F``, ``G`` at the points ``z``."""
    dF, dG = F.deg_w, G.deg_w
    size = dF + dG
    fc = F.w_coefficients(z)[..., ::-1]
    gc = G.w_coefficients(z)[..., ::-1]
    z = np.asarray(z)
    S = np.zeros(z.shape + (size, size), dtype=complex)
    for i in range(dG):
        S[..., i, i : i + dF + 1] = fc
    for i in range(dF):
        S[..., dG + i, i : i + dG + 1] = gc
    return S


def degree_bound(F: BivariatePolynomial, G: BivariatePolynomial) -> int:
    """Row-wise bound on deg_z of the resultant: deg_w G rows of degree deg_z F, and vice versa."""
    return G.deg_w * F.deg_z + F.deg_w * G.deg_z


def _sample(F, G, N, radius):
    nodes = radius * np.exp(2j * np.pi * np.arange(N) / N)
    S = sylvester_matrices(F, G, nodes)
    dets = np.linalg.det(S)
    hadamard = np.prod(np.linalg.norm(S, axis=-1), axis=-1)
    return dets, hadamard


def _scale_w(P: BivariatePolynomial, s: float) -> BivariatePolynomial:
    """``P(z, s w)`` normalized to unit max coefficient; same roots in ``z``."""
    c = P.coef * s ** np.arange(P.coef.shape[1])[None, :]
    return BivariatePolynomial(c / np.abs(c).max())


def sylvester_resultant(
    F: BivariatePolynomial,
    G: BivariatePolynomial,
    radius: float = 1.0,
    check_isolated: bool = True,
) -> UnivariatePolynomial:
    """Resultant of ``F`` and ``G`` with respect to ``w``, as a polynomial in ``z``.

    The determinant is sampled at ``D + 1`` equispaced nodes on ``|z| = radius``
    (``D`` the row-wise degree bound) and the coefficients are recovered with
    an FFT.  ``w`` is rescaled by ``radius`` first, which multiplies the
    resultant by a constant but keeps the Sylvester rows balanced for roots
    of modulus near ``radius`` (where ``|w| = |conj z|`` is the same size).
    The result is accurate for roots of modulus comparable to ``radius``.

    Raises
    ------
    NonIsolatedZeroSet
        If ``check_isolated`` and every sampled determinant is negligible
        against its Hadamard bound.  The ratio shrinks legitimately on large
        circles, so only a unit-radius pass makes this test meaningful.
    """
    dF, dG = F.deg_w, G.deg_w
    if dF == 0 and dG == 0:
        raise ValueError("resultant of two polynomials of w-degree 0 is undefined")
    r = float(radius)
    N = degree_bound(F, G) + 1
    dets, had = _sample(_scale_w(F, r), _scale_w(G, r), N, r)
    if check_isolated and np.all(np.abs(dets) <= ZERO_DET_RTOL * had):
        raise NonIsolatedZeroSet()
    c = np.fft.fft(dets) / N
    mags = np.abs(c)
    keep = np.flatnonzero(mags > COEF_TRIM_RTOL * mags.max())
    lo, hi = keep[0], keep[-1]
    c[:lo] = 0.0
    return UnivariatePolynomial(c[: hi + 1], scale=r)
