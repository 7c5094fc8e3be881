"""Class membership (L, Lhs, M) and count-law checks on root reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mixedpoly import MixedPolynomial, degrees
from .solver.core import RootReport

RANK_RTOL = 1e-9


class NotApplicable(ValueError):
    """The check's hypotheses do not hold for this input."""


@dataclass(frozen=True)
class ClassTag:
    class_name: str
    n: int
    m: int

    def __str__(self):
        if self.class_name == "other":
            return f"other(n={self.n},m={self.m})"
        return f"{self.class_name}({self.n + self.m};{self.n},{self.m})"

    def to_dict(self) -> dict:
        return {"class": self.class_name, "n": self.n, "m": self.m}

    @classmethod
    def from_dict(cls, d: dict) -> "ClassTag":
        return cls(d["class"], int(d["n"]), int(d["m"]))

    def within(self, name: str) -> bool:
        """Membership respecting ``L <= Lhs <= M``."""
        order = {"L": 0, "Lhs": 1, "M": 2, "other": 3}
        return self.class_name != "other" and order[self.class_name] <= order[name]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def __bool__(self):
        return self.passed


def _is_lhs(a: np.ndarray, n: int) -> bool:
    block = a[:, 1:]
    if block.shape[1] == 0 or not np.any(block):
        return False
    u, s, _ = np.linalg.svd(block)
    if len(s) > 1 and s[1] > RANK_RTOL * s[0]:
        return False
    # q(z) is the left factor; it must carry the top holomorphic degree
    return abs(u[n, 0]) > RANK_RTOL


def classify_polynomial(f: MixedPolynomial) -> ClassTag:
    """Tag ``f`` with the smallest of L, Lhs, M containing it, in this chart.

    ``n`` and ``m`` are always the holomorphic and anti-holomorphic degrees.
    """
    prof = degrees(f)
    n, m = prof.holo, prof.antiholo
    a = f.dense()
    if m == 0:
        return ClassTag("L", n, 0)
    support = {mu for (_, mu) in f.terms}
    if support <= {0, m} and a[n, m] != 0:
        return ClassTag("L", n, m)
    if _is_lhs(a, n):
        return ClassTag("Lhs", n, m)
    if prof.mixed == n + m:
        return ClassTag("M", n, m)
    return ClassTag("other", n, m)


def assert_beta(report: RootReport) -> CheckResult:
    """``beta == n - m`` with matching large-circle winding number.

    Raises
    ------
    NotApplicable
        If the top-degree form is not a monomial or the report has
        degenerate roots.
    """
    prof = degrees(report.polynomial)
    if not prof.top_is_monomial:
        raise NotApplicable("not applicable: top-degree form is not a monomial")
    if report.degenerate_found:
        raise NotApplicable("not applicable: report has degenerate roots")
    n, m = prof.top_exponents
    want = n - m
    ok = report.beta == want and report.winding == want
    detail = f"beta={report.beta} winding={report.winding} expected n-m={want}"
    return CheckResult("beta", ok, detail)


def rho_range(n: int, m: int, bifurcation: bool = False) -> tuple[int, int] | None:
    """Admissible ``(low, high)`` for ``rho``, or ``None`` if no bound is known.

    ``m == 1``: the lens range ``n-1 .. 5n-5`` (``n >= 2``).  ``m >= 2`` and
    ``bifurcation``: the range ``n+m-2 .. 5n+m-6`` reached by the ``phi_t``
    family.  Parity is checked separately.
    """
    if m == 1 and n >= 2:
        return n - 1, 5 * n - 5
    if m >= 2 and bifurcation:
        return n + m - 2, 5 * n + m - 6
    return None


def check_rho(rho: int, n: int, m: int, bifurcation: bool = False) -> CheckResult:
    parity = (rho - (n - m)) % 2 == 0
    rng = rho_range(n, m, bifurcation)
    in_range = rng is None or rng[0] <= rho <= rng[1]
    where = "no range known" if rng is None else f"range {rng[0]}..{rng[1]}"
    return CheckResult(
        "rho-bounds",
        parity and in_range,
        f"rho={rho} ({where}; parity {'ok' if parity else 'violates rho = n-m mod 2'})",
    )


def assert_rho_bounds(report: RootReport, tag: ClassTag, bifurcation: bool = False) -> CheckResult:
    """Range and parity of ``rho`` for members of L (see :func:`rho_range`)."""
    if report.degenerate_found:
        raise NotApplicable("not applicable: report has degenerate roots")
    if tag.class_name != "L":
        return check_rho(report.rho, tag.n, tag.m, bifurcation=False)
    return check_rho(report.rho, tag.n, tag.m, bifurcation)
