"""Constructors for the lens-type polynomial families.

Every constructor returns a :class:`~lensroots.mixedpoly.MixedPolynomial`.
Rational constants are converted once to double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .mixedpoly import ONE, Z, ZBAR, MixedPolynomial, holomorphic, monomial, power


@dataclass(frozen=True)
class LensSystem:
    """Point masses ``sigma_i`` at positions ``alpha_i`` for
    ``zbar = sum sigma_i / (z - alpha_i)``."""

    masses: tuple[complex, ...]
    positions: tuple[complex, ...]

    def __post_init__(self):
        masses = tuple(complex(s) for s in self.masses)
        positions = tuple(complex(a) for a in self.positions)
        if len(masses) != len(positions) or not masses:
            raise ValueError("masses and positions must be non-empty and of equal length")
        if any(s == 0 for s in masses):
            raise ValueError("masses must be nonzero")
        if len(set(positions)) != len(positions):
            raise ValueError("lens positions must be pairwise distinct")
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "positions", positions)

    @property
    def n(self) -> int:
        return len(self.masses)


@dataclass(frozen=True)
class BifurcationSpec:
    """Base lens polynomial ``zbar q(z) - p(z)`` deformed by ``phi_t`` or ``psi_t``."""

    base: MixedPolynomial
    m: int
    t: complex
    variant: str = "phi"

    def __post_init__(self):
        if self.variant not in ("phi", "psi"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        split_lens(self.base)

    @property
    def gamma(self) -> complex:
        q, _ = split_lens(self.base)
        return complex(q[-1])


def split_lens(base: MixedPolynomial) -> tuple[np.ndarray, np.ndarray]:
    """Return ascending ``(q, p)`` with ``base = zbar q(z) - p(z)``.

    Raises ``ValueError`` unless ``base`` has exactly that shape with
    ``deg q >= deg p``.
    """
    if any(mu > 1 for (_, mu) in base.terms) or not any(mu == 1 for (_, mu) in base.terms):
        raise ValueError("base must have the form zbar*q(z) - p(z)")
    q = np.trim_zeros(np.array(base.slice_zbar(1)), "b")
    p = -np.trim_zeros(np.array(base.slice_zbar(0)), "b")
    if len(p) > len(q):
        raise ValueError("base needs deg q >= deg p")
    if q[-1] == 0:
        raise ValueError("gamma is zero")
    return q, p


def lens_numerator(sys: LensSystem) -> MixedPolynomial:
    """``zbar prod (z - alpha_i) - sum sigma_i prod_{j != i} (z - alpha_j)``."""
    factors = [Z - a for a in sys.positions]
    full = ONE
    for fac in factors:
        full = full * fac
    out = ZBAR * full
    for i, s in enumerate(sys.masses):
        rest = ONE
        for j, fac in enumerate(factors):
            if j != i:
                rest = rest * fac
        out = out - s * rest
    return out


def rhie3() -> MixedPolynomial:
    """Three-mass Rhie-type lens polynomial with ten simple roots:

        (3/100) zbar (z^3 - 1/8) - 3 z^2/100 + 13/100000

    Its ``phi_t`` deformation with ``m = 3`` and ``t = gamma/100`` is exactly
    :func:`example_f`.  See :func:`rhie3_printed` for the variant carrying an
    extra ``-(z^3 - 1/8)``.
    """
    return (3 / 100) * ZBAR * (monomial(3, 0) - 1 / 8) - (3 / 100) * monomial(2, 0) + 13 / 100000


def rhie3_printed() -> MixedPolynomial:
    """``(3/100) zbar (z^3 - 1/8) - z^3 - 3 z^2/100 + 12513/100000``.

    Equals ``rhie3() - (z^3 - 1/8)``; this one has only four roots.
    """
    return (
        (3 / 100) * ZBAR * (monomial(3, 0) - 1 / 8)
        - monomial(3, 0)
        - (3 / 100) * monomial(2, 0)
        + 12513 / 100000
    )


def power_lens(n: int, m: int) -> MixedPolynomial:
    """``zbar^m z^n - 1``; its ``n - m`` roots are the ``(n-m)``-th roots of unity."""
    if not (isinstance(n, int) and isinstance(m, int)) or m < 0 or n <= m:
        raise ValueError("power_lens needs integers n > m >= 0")
    return monomial(n, m) - 1


def _prefactor(m: int, t: complex, gamma: complex) -> MixedPolynomial:
    # ((t zb + g)^m - g^m) / (g^(m-1) m t) = sum_j C(m,j)/m (t/g)^(j-1) zb^j
    ratio = t / gamma
    return MixedPolynomial({(0, j): comb(m, j) / m * ratio ** (j - 1) for j in range(1, m + 1)})


def phi_t(spec: BifurcationSpec) -> MixedPolynomial:
    """Generalized-lens deformation of ``spec.base = zbar q - p``:

        ((t zbar + gamma)^m - gamma^m) / (gamma^(m-1) m t) * q(z) - p(z)

    expanded term by term, so ``t = 0`` returns the base exactly.
    """
    q, p = split_lens(spec.base)
    gamma = complex(q[-1])
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    return _prefactor(spec.m, complex(spec.t), gamma) * holomorphic(q) - holomorphic(p)


def psi_t(spec: BifurcationSpec) -> MixedPolynomial:
    """``t zbar^m q(z) + base`` for ``base = zbar q - p``.

    Dividing by ``q`` gives the rational form ``t zbar^m + zbar - p/q``; the
    polynomial here is its numerator, so the result splits as
    ``(t zbar^m + zbar) q(z) - p(z)`` and lies in Lhs.  ``t = 0`` returns
    the base.
    """
    if spec.m < 2:
        raise ValueError("psi_t needs m >= 2")
    q, _ = split_lens(spec.base)
    return complex(spec.t) * monomial(0, spec.m) * holomorphic(q) + spec.base


def predict_infinity_roots(gamma: complex, m: int, t: complex) -> np.ndarray:
    """Leading-order positions of the ``m - 1`` roots of ``phi_t`` born at infinity.

    Near infinity ``phi_t = 0`` forces ``(t zbar + gamma)^m = gamma^m``, so
    ``zbar = gamma (zeta - 1) / t`` for a nontrivial m-th root of unity.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if t == 0 or gamma == 0:
        raise ValueError("t and gamma must be nonzero")
    zeta = np.exp(2j * np.pi * np.arange(1, m) / m)
    return np.conj(complex(gamma) * (zeta - 1) / complex(t))


def example_f() -> MixedPolynomial:
    """``(zbar/100 + 1)^3 (z^3 - 1/8) - z^3 - 3 z^2/100 + 12513/100000``."""
    return (
        power(ZBAR / 100 + 1, 3) * (monomial(3, 0) - 1 / 8)
        - monomial(3, 0)
        - (3 / 100) * monomial(2, 0)
        + 12513 / 100000
    )


def rhie_family(n: int, epsilon: float, a: float) -> MixedPolynomial:
    """Numerator of ``zbar = (1-eps) z^(n-2) / (z^(n-1) - a^(n-1)) + eps / z``.

    Masses ``(1-eps)/(n-1)`` on a regular (n-1)-gon of radius ``a`` plus
    ``eps`` at the origin.  No root count is implied; check with ``solve_all``.
    """
    if not isinstance(n, int) or n < 3:
        raise ValueError("rhie_family needs integer n >= 3")
    if not 0 <= epsilon < 1:
        raise ValueError("epsilon must lie in [0, 1)")
    if not a > 0:
        raise ValueError("a must be positive")
    ring = monomial(n - 1, 0) - a ** (n - 1)
    return ZBAR * Z * ring - (1 - epsilon) * monomial(n - 1, 0) - epsilon * ring


def polygon_lens(k: int, a: float, mass: float = 1.0) -> MixedPolynomial:
    """``zbar (z^k - a^k) - mass z^(k-1)``: ``k`` equal masses ``mass/k`` on a regular k-gon."""
    return ZBAR * (monomial(k, 0) - a**k) - mass * monomial(k - 1, 0)


def random_mixed(n: int, m: int, rng: np.random.Generator) -> MixedPolynomial:
    """Random member of M(n+m; n, m): top term ``e^{i theta} z^n zbar^m``, all
    other admissible coefficients uniform in the unit disk."""
    terms = {}
    for nu in range(n + 1):
        for mu in range(m + 1):
            if nu + mu < n + m:
                r = np.sqrt(rng.uniform())
                terms[(nu, mu)] = r * np.exp(2j * np.pi * rng.uniform())
    terms[(n, m)] = np.exp(2j * np.pi * rng.uniform())
    return MixedPolynomial(terms)


def as_complex(x) -> complex:
    """Accept ``[re, im]`` pairs, plain numbers or complex."""
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"complex pair must have two entries: {x!r}")
        return complex(float(x[0]), float(x[1]))
    return complex(x)


def lens_system(masses: Sequence, positions: Sequence) -> LensSystem:
    return LensSystem(tuple(as_complex(s) for s in masses), tuple(as_complex(a) for a in positions))
