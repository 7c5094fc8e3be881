"""The full pipeline: eliminate, find eliminant roots, filter, polish, certify."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from ..errors import ConvergenceError, SingularJacobianError, ZeroOnContourError
from ..mixedpoly import MixedPolynomial, degree_part, degrees, evaluate
from .aberth import univariate_roots
from .newton import Jet, Root, newton_batch, newton_polish
from .resultant import UnivariatePolynomial, bivariate_pair, sylvester_resultant
from .winding import Contour, winding_number

log = logging.getLogger(__name__)

CONJUGACY_RTOL = 1e-6
# eliminant roots inside a cluster of spurious ones are only accurate to ~1e-4;
# candidates this close are polished too and kept only if Newton converges
RESCUE_RTOL = 1e-2
DEDUPE_RTOL = 1e-6
MAX_RADIUS_PASSES = 12
RADIUS_STEP = 2.0


@dataclass(frozen=True)
class RootReport:
    """Every isolated root of ``polynomial`` with signed and unsigned counts.

    ``rho`` and ``beta`` are unreliable when ``degenerate_found`` is set.
    ``winding`` is the winding number of f on the certification circle
    (``None`` if it could not be computed).
    """

    polynomial: MixedPolynomial
    roots: tuple[Root, ...]
    rho: int
    beta: int
    winding_certified: bool
    degenerate_found: bool
    winding: int | None = None
    certification_radius: float | None = None
    eliminant_degree: int | None = field(default=None, compare=False)

    @property
    def n_positive(self) -> int:
        return sum(r.sign == "+" for r in self.roots)

    @property
    def n_negative(self) -> int:
        return sum(r.sign == "-" for r in self.roots)

    @property
    def locations(self) -> np.ndarray:
        return np.array([r.location for r in self.roots], dtype=complex)


def build_report(f: MixedPolynomial, roots: Sequence[Root], winding: int | None = None,
                 radius: float | None = None, eliminant_degree: int | None = None) -> RootReport:
    roots = tuple(sorted(roots, key=lambda r: (r.location.real, r.location.imag)))
    beta = sum(r.sign_value for r in roots)
    degenerate = any(r.sign == "0" for r in roots)
    certified = winding is not None and not degenerate and winding == beta
    return RootReport(f, roots, len(roots), beta, certified, degenerate, winding, radius,
                      eliminant_degree)


def cauchy_bound_mixed(f: MixedPolynomial, samples: int = 4096) -> float:
    """Radius outside which ``f`` has no zeros.

    With ``b_j = sum_{nu+mu=j} |a|`` and ``c = min_theta |f_d(e^{i theta})|``
    for the top-degree part, ``|f| > 0`` when ``|z| > 1 + max_j b_j / c``.
    ``c`` is sampled, so for non-monomial top forms this is approximate;
    it is ``inf`` when the top part (numerically) vanishes on some ray.
    """
    prof = degrees(f)
    d = prof.mixed
    if prof.top_is_monomial:
        c = abs(prof.top_coefficient)
    else:
        theta = 2 * np.pi * np.arange(samples) / samples
        c = float(np.min(np.abs(evaluate(degree_part(f, d), np.exp(1j * theta)))))
        if c <= 1e-12 * f.max_coefficient():
            return float("inf")
    b = np.zeros(d + 1)
    for (nu, mu), a in f.items():
        b[nu + mu] += abs(a)
    if d == 0:
        return 0.0
    return 1.0 + float(b[:d].max()) / c


def eliminant(f: MixedPolynomial, radius: float = 1.0, check_isolated: bool = True) -> UnivariatePolynomial:
    """Univariate polynomial whose roots contain every root of ``f``.

    Accurate for roots of modulus comparable to ``radius``.
    """
    F, G = bivariate_pair(f)
    # w-degree 0 on one side: the Sylvester determinant is a pure power of the
    # other side's coefficient, whose radical has the same roots
    if F.deg_w == 0:
        return UnivariatePolynomial(F.coef[:, 0])
    if G.deg_w == 0:
        return UnivariatePolynomial(G.coef[:, 0])
    return sylvester_resultant(F, G, radius, check_isolated=check_isolated)


def eliminant_candidates(f: MixedPolynomial, max_passes: int = MAX_RADIUS_PASSES) -> np.ndarray:
    """Roots of the eliminant, gathered over as many sampling radii as needed.

    The first pass samples on ``|z| = 1``.  Any root found with modulus more
    than a factor ``RADIUS_STEP`` away from every radius tried so far queues
    another pass on a circle of that modulus, so clusters of roots far from
    (or much closer to 0 than) the unit circle get a fit that resolves them.
    """
    prof = degrees(f)
    one_sided = min(prof.holo, prof.antiholo) == 0  # no resultant, radius irrelevant
    queue = [1.0]
    done: list[float] = []
    found = []
    while queue and len(done) < max_passes:
        r = queue.pop(0)
        R = eliminant(f, r, check_isolated=not done)
        done.append(r)
        if R.degree < 1:
            continue
        try:
            roots = univariate_roots(R)
        except ConvergenceError as exc:
            log.debug("eliminant pass at radius %g: %s", r, exc)
            continue
        found.append(roots)
        if one_sided:
            break
        for mod in np.abs(roots):
            if mod == 0:
                continue
            if all(not (1 / RADIUS_STEP < mod / q < RADIUS_STEP) for q in done + queue):
                queue.append(float(mod))
    return np.concatenate(found) if found else np.zeros(0, dtype=complex)


def conjugacy_filter(f: MixedPolynomial, candidates, rtol: float = CONJUGACY_RTOL) -> np.ndarray:
    """Keep candidates ``z`` with ``|f(z, conj z)| <= rtol * sum |a||z|^(nu+mu)``."""
    z = np.asarray(candidates, dtype=complex).ravel()
    if z.size == 0:
        return z
    keep = np.abs(evaluate(f, z)) <= rtol * f.magnitude_scale(z)
    return z[keep]


def dedupe(roots: Sequence[Root], rtol: float = DEDUPE_RTOL) -> list[Root]:
    """Merge roots closer than ``rtol * (1 + |z|)``, keeping the smaller residual."""
    kept: list[Root] = []
    for r in sorted(roots, key=lambda r: r.residual):
        z = r.location
        if all(abs(z - k.location) > rtol * (1 + max(abs(z), abs(k.location))) for k in kept):
            kept.append(r)
    return kept


def _polish_all(f, starts, jet):
    out = []
    for z0 in starts:
        try:
            out.append(newton_polish(f, z0, jet=jet))
        except (ConvergenceError, SingularJacobianError) as exc:
            log.debug("dropping candidate %s: %s", z0, exc)
    return out


def certify(f: MixedPolynomial, roots: Sequence[Root]) -> tuple[int | None, float]:
    """Winding number of f on ``|z| = 2 max|root| + 1``."""
    radius = 2 * max((abs(r.location) for r in roots), default=0.0) + 1
    try:
        return winding_number(f, Contour(0j, radius)), radius
    except ZeroOnContourError as exc:
        log.warning("winding certification failed: %s", exc)
        return None, radius


def solve_all(f: MixedPolynomial) -> RootReport:
    """Find, classify and count every root of ``f``.

    Raises
    ------
    NonIsolatedZeroSet
        If the eliminant vanishes identically (f has a curve of zeros).
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if degrees(f).mixed == 0:
        return build_report(f, [], winding=0, radius=1.0, eliminant_degree=0)
    cands = eliminant_candidates(f)
    kept = conjugacy_filter(f, cands)
    near = conjugacy_filter(f, cands, RESCUE_RTOL)
    log.debug("%d of %d eliminant roots pass conjugacy (%d within rescue band)",
              kept.size, cands.size, near.size)
    jet = Jet(f)
    roots = dedupe(_polish_all(f, near, jet))
    w, radius = certify(f, roots)
    return build_report(f, roots, w, radius, eliminant(f).degree)


def grid_newton_oracle(f: MixedPolynomial, window, grid_n: int) -> list[Root]:
    """Roots reached by Newton from every node of a ``grid_n x grid_n`` lattice.

    ``window`` is ``(x0, x1, y0, y1)``.  Independent of the elimination path
    and makes no completeness claim.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    x0, x1, y0, y1 = window
    xs = np.linspace(x0, x1, grid_n)
    ys = np.linspace(y0, y1, grid_n)
    starts = (xs[None, :] + 1j * ys[:, None]).ravel()
    jet = Jet(f)
    pts, ok = newton_batch(jet, starts)
    pts = pts[ok]
    # one representative per cluster before the scalar polish
    reps: list[complex] = []
    for z in pts[np.argsort(np.abs(pts), kind="stable")]:
        if all(abs(z - r) > 1e-4 * (1 + abs(z)) for r in reps):
            reps.append(complex(z))
    roots = dedupe(_polish_all(f, reps, jet))
    return sorted(roots, key=lambda r: (r.location.real, r.location.imag))


def flip_sign(report: RootReport, index: int = 0) -> RootReport:
    """Copy of ``report`` with one root's sign flipped (negative-control fixture)."""
    roots = list(report.roots)
    r = roots[index]
    roots[index] = replace(r, sign={"+": "-", "-": "+", "0": "0"}[r.sign], jacobian=-r.jacobian)
    return build_report(report.polynomial, roots, report.winding, report.certification_radius)
