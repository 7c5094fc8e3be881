"""Root finding for mixed polynomials."""

from .aberth import cauchy_bound, univariate_roots
from .core import (
    RootReport,
    build_report,
    cauchy_bound_mixed,
    conjugacy_filter,
    dedupe,
    eliminant,
    flip_sign,
    grid_newton_oracle,
    solve_all,
)
from .newton import Jet, Root, newton_polish
from .resultant import BivariatePolynomial, UnivariatePolynomial, bivariate_pair, sylvester_resultant
from .winding import Contour, winding_number

__all__ = [
    "BivariatePolynomial",
    "Contour",
    "Jet",
    "Root",
    "RootReport",
    "UnivariatePolynomial",
    "bivariate_pair",
    "build_report",
    "cauchy_bound",
    "cauchy_bound_mixed",
    "conjugacy_filter",
    "dedupe",
    "eliminant",
    "flip_sign",
    "grid_newton_oracle",
    "newton_polish",
    "solve_all",
    "sylvester_resultant",
    "univariate_roots",
    "winding_number",
]
