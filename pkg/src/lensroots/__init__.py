"""Roots of mixed polynomials ``f(z, zbar)`` with lens-type families.

The main entry point is :func:`lensroots.solver.solve_all`, which returns a
:class:`~lensroots.solver.RootReport` with every isolated root, its sign and
the counts ``rho`` (unsigned) and ``beta`` (signed).
"""

from .classify import ClassTag, classify_polynomial
from .errors import (
    ConvergenceError,
    LensRootsError,
    MalformedInput,
    NonIsolatedZeroSet,
    SingularJacobianError,
    ZeroOnContourError,
)
from .mixedpoly import ONE, Z, ZBAR, MixedPolynomial, evaluate, monomial
from .solver import RootReport, solve_all

__version__ = "0.1.0"

__all__ = [
    "ClassTag",
    "ConvergenceError",
    "LensRootsError",
    "MalformedInput",
    "MixedPolynomial",
    "NonIsolatedZeroSet",
    "ONE",
    "RootReport",
    "SingularJacobianError",
    "Z",
    "ZBAR",
    "ZeroOnContourError",
    "classify_polynomial",
    "evaluate",
    "monomial",
    "solve_all",
]
