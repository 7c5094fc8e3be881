"""Named verification suites run by ``lensroots verify``.

Each suite returns a list of :class:`~lensroots.classify.CheckResult`.
"""

from __future__ import annotations

import time
from typing import Callable
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from . import families as fam
from .classify import CheckResult, NotApplicable, assert_beta, assert_rho_bounds, check_rho, classify_polynomial
from .errors import NonIsolatedZeroSet
from .mixedpoly import ZBAR, Z, degrees, monomial
from .plotting import PlotSpec, curve_intersections, parse_svg_segments, render_svg
from .solver.core import RootReport, cauchy_bound_mixed, grid_newton_oracle, solve_all

RHIE3_GAMMA = 3 / 100
T_REL = 1e-3


def _ok(name: str, cond: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(cond), detail)


def _simple(report: RootReport) -> bool:
    return not report.degenerate_found


def _parity(name: str, report: RootReport) -> CheckResult:
    prof = degrees(report.polynomial)
    want = (prof.holo - prof.antiholo) % 2
    return _ok(name, _simple(report) and report.rho % 2 == want,
               f"rho={report.rho}, n-m={prof.holo - prof.antiholo}")


def report_checks(report: RootReport, bifurcation: bool = False) -> list[CheckResult]:
    """Count-law checks on a single report: beta law, parity and rho range."""
    out = []
    try:
        out.append(assert_beta(report))
    except NotApplicable as exc:
        out.append(CheckResult("beta", not report.degenerate_found, str(exc)))
    tag = classify_polynomial(report.polynomial)
    try:
        out.append(assert_rho_bounds(report, tag, bifurcation))
    except NotApplicable as exc:
        out.append(CheckResult("rho-bounds", False, str(exc)))
    out.append(_parity("parity", report))
    return out


def _infinity_errors(report: RootReport, gamma: complex, m: int, t: complex) -> list[float]:
    big = [r.location for r in report.roots if abs(r.location) > 50]
    pred = fam.predict_infinity_roots(gamma, m, t)
    if not big:
        return [float("inf")] * len(pred)
    return [min(abs(z - p) for z in big) / abs(p) for p in pred]


def goldens() -> list[CheckResult]:
    out = []
    r = solve_all(fam.rhie3())
    worst = max(x.residual for x in r.roots)
    out.append(_ok("rhie3 rho=10 beta=2", r.rho == 10 and r.beta == 2 and _simple(r), f"rho={r.rho} beta={r.beta}"))
    out.append(_ok("rhie3 residuals <= 1e-9", worst <= 1e-9, f"max residual {worst:.3g}"))
    out += [CheckResult(f"rhie3 {c.name}", c.passed, c.detail) for c in report_checks(r)]

    e = solve_all(fam.example_f())
    out.append(_ok("example rho=12 beta=0 (6+/6-)",
                   e.rho == 12 and e.beta == 0 and e.n_positive == 6 and e.n_negative == 6,
                   f"rho={e.rho} beta={e.beta} +{e.n_positive}/-{e.n_negative}"))
    big = sorted(e.roots, key=lambda x: -abs(x.location))[:2]
    targets = (-150 + 86.6j, -150 - 86.6j)
    near = all(min(abs(b.location - w) for b in big) <= 0.5 for w in targets)
    out.append(_ok("example big roots near -150+-86.6i, negative",
                   near and all(b.sign == "-" for b in big),
                   ", ".join(f"{b.location:.6g}({b.sign})" for b in big)))
    out += [CheckResult(f"example {c.name}", c.passed, c.detail) for c in report_checks(e, True)]
    same = fam.phi_t(fam.BifurcationSpec(fam.rhie3(), 3, RHIE3_GAMMA / 100))
    diff = max(abs(same.coefficient(*k) - c) for k, c in fam.example_f().items())
    out.append(_ok("example == phi_t(rhie3, m=3, t=gamma/100)", diff < 1e-15, f"max coefficient gap {diff:.2g}"))

    low = solve_all(fam.phi_t(fam.BifurcationSpec(ZBAR * monomial(3, 0) - 1, 2, 1e-3)))
    out.append(_ok("phi low end rho=3", low.rho == 3 and _simple(low), f"rho={low.rho}"))
    return out


def beta_random(draws: int = 100, shapes=((2, 1), (3, 1), (3, 2)), seed: int = 20240501) -> list[CheckResult]:
    """``draws`` random members of M(n+m;n,m) for each shape."""
    rng = np.random.default_rng(seed)
    out, degenerate = [], 0
    for n, m in shapes:
        bad = []
        for i in range(draws):
            r = solve_all(fam.random_mixed(n, m, rng))
            if r.degenerate_found:
                degenerate += 1
            elif not (r.beta == n - m and r.winding == n - m):
                bad.append(i)
        out.append(_ok(f"beta = winding = {n - m} on random M({n + m};{n},{m})", not bad,
                       f"{draws} draws, failures at {bad[:5]}"))
    total = draws * len(shapes)
    out.append(_ok("degenerate draws < 5%", degenerate < 0.05 * total, f"{degenerate}/{total}"))
    return out


def phi_bifurcation(ms=(2, 3, 4), t_rel: float = T_REL) -> list[CheckResult]:
    out = []
    base = fam.rhie3()
    b = solve_all(base)
    for m in ms:
        t = t_rel * RHIE3_GAMMA
        r = solve_all(fam.phi_t(fam.BifurcationSpec(base, m, t)))
        out.append(_ok(f"phi m={m}: rho = {9 + m}", r.rho == 9 + m and _simple(r), f"rho={r.rho} beta={r.beta}"))
        big = [x for x in r.roots if abs(x.location) > 50]
        out.append(_ok(f"phi m={m}: {m - 1} negative roots beyond 50",
                       len(big) == m - 1 and all(x.sign == "-" for x in big),
                       f"{len(big)} found, signs {[x.sign for x in big]}"))
        small = [x for x in r.roots if abs(x.location) <= 50]
        matched = all(
            any(abs(x.location - y.location) <= 0.05 and x.sign == y.sign for x in small) for y in b.roots
        )
        out.append(_ok(f"phi m={m}: base roots persist with their signs", matched and len(small) == b.rho,
                       f"{len(small)} small roots"))
        e1 = _infinity_errors(r, RHIE3_GAMMA, m, t)
        out.append(_ok(f"phi m={m}: predictor relative error < 0.1", max(e1) < 0.1, f"max {max(e1):.3g}"))
        r2 = solve_all(fam.phi_t(fam.BifurcationSpec(base, m, t / 2)))
        e2 = _infinity_errors(r2, RHIE3_GAMMA, m, t / 2)
        ratios = [a / c for a, c in zip(e1, e2)]
        # halving t should halve the error, within a factor of 2 either way
        out.append(_ok(f"phi m={m}: halving t halves the error (ratio in [1, 4])",
                       all(1 <= q <= 4 for q in ratios), "ratios " + ", ".join(f"{q:.7g}" for q in ratios)))
        rng = check_rho(r.rho, 3, m, bifurcation=True)
        out.append(CheckResult(f"phi m={m}: rho range and parity", rng.passed, rng.detail))
    return out


def psi_bifurcation(ms=(2, 3), t: float = 1e-3) -> list[CheckResult]:
    out = []
    base = fam.rhie3()
    b = solve_all(base)
    for m in ms:
        f = fam.psi_t(fam.BifurcationSpec(base, m, t, "psi"))
        r = solve_all(f)
        new = [x for x in r.roots if min(abs(x.location - y.location) for y in b.roots) > 0.05]
        out.append(_ok(f"psi m={m}: rho = {9 + m}", r.rho == 9 + m and _simple(r), f"rho={r.rho}"))
        out.append(_ok(f"psi m={m}: {m - 1} new roots, all negative",
                       len(new) == m - 1 and all(x.sign == "-" for x in new),
                       ", ".join(f"{x.location:.6g}({x.sign})" for x in new)))
        tag = classify_polynomial(f)
        out.append(_ok(f"psi m={m}: class Lhs", tag.class_name == "Lhs", str(tag)))
    return out


def oracle(draws: int = 50, grid: int = 60, seed: int = 7) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    shapes = [(n, m) for n in range(0, 6) for m in range(0, 6) if 1 <= n + m <= 5]
    bad = []
    for i in range(draws):
        n, m = shapes[i % len(shapes)]
        f = fam.random_mixed(n, m, rng)
        r = solve_all(f)
        R = 2 * cauchy_bound_mixed(f)
        o = grid_newton_oracle(f, (-R, R, -R, R), grid)
        if not _same_roots(r.roots, o):
            bad.append((i, n, m))
    return [_ok(f"solve_all == grid oracle on {draws} draws", not bad, f"mismatches {bad[:5]}")]


def _same_roots(a, b, tol: float = 1e-6) -> bool:
    if len(a) != len(b):
        return False
    used = set()
    for x in a:
        hit = [j for j, y in enumerate(b)
               if j not in used and abs(x.location - y.location) <= tol * (1 + abs(x.location)) and x.sign == y.sign]
        if not hit:
            return False
        used.add(hit[0])
    return True


def errors() -> list[CheckResult]:
    out = []
    for label, f in (("z zbar - 1", Z * ZBAR - 1), ("zbar - z", ZBAR - Z)):
        try:
            solve_all(f)
            out.append(_ok(f"{label}: non-isolated error", False, "returned a root list"))
        except NonIsolatedZeroSet as exc:
            out.append(_ok(f"{label}: non-isolated error", True, str(exc)))
    return out


def zero_curves_figure(samples: int = 600) -> list[CheckResult]:
    f = fam.example_f()
    r = solve_all(f)
    spec = PlotSpec((-1.2, 1.2, -1.2, 1.2), samples, True)
    green, red = parse_svg_segments(render_svg(f, spec, r.roots), spec)
    d = spec.cell_diagonal
    pts = curve_intersections(green, red, d, tol=1e-4)
    inside = [x.location for x in r.roots if abs(x.location.real) <= 1.2 and abs(x.location.imag) <= 1.2]
    roots_hit = all(pts.size and np.min(np.abs(pts - z)) <= d for z in inside)
    pts_hit = all(min(abs(p - z) for z in inside) <= d for p in pts) if inside else not pts.size
    return [_ok("curve intersections match the small roots",
                len(inside) == 10 and len(pts) == 10 and roots_hit and pts_hit,
                f"{len(pts)} intersections, {len(inside)} roots in window")]


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "goldens": goldens,
    "beta-random": beta_random,
    "bifurcation-phi": phi_bifurcation,
    "bifurcation-psi": psi_bifurcation,
    "oracle": oracle,
    "errors": errors,
    "figure": zero_curves_figure,
}


def run_suite(name: str) -> list[tuple[str, CheckResult, float]]:
    """Run one suite (or ``all``); returns ``(suite, check, seconds)`` triples."""
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all")
    out = []
    for n in names:
        start = time.perf_counter()
        checks = SUITES[n]()
        dt = (time.perf_counter() - start) / max(len(checks), 1)
        out += [(n, c, dt) for c in checks]
    return out


def junit_xml(results: list[tuple[str, CheckResult, float]], name: str) -> str:
    fails = sum(not c.passed for _, c, _ in results)
    lines = [f'<testsuite name={quoteattr(name)} tests="{len(results)}" failures="{fails}">']
    for suite, c, dt in results:
        lines.append(f'  <testcase classname={quoteattr(suite)} name={quoteattr(c.name)} time="{dt:.3f}">')
        if not c.passed:
            lines.append(f"    <failure message={quoteattr(c.detail)}/>")
        else:
            lines.append(f"    <system-out>{escape(c.detail)}</system-out>")
        lines.append("  </testcase>")
    lines.append("</testsuite>")
    return "\n".join(lines) + "\n"

