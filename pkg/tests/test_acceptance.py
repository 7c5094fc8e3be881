"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear even
without ``-s``.
"""

from functools import lru_cache

import numpy as np
import pytest

from lensroots import cli
from lensroots.errors import NonIsolatedZeroSet
from lensroots.families import BifurcationSpec, example_f, phi_t, predict_infinity_roots, psi_t, random_mixed, rhie3
from lensroots.mixedpoly import Z, ZBAR, degrees, monomial
from lensroots.plotting import PlotSpec, curve_intersections, parse_svg_segments
from lensroots.solver import cauchy_bound_mixed, grid_newton_oracle, solve_all

GAMMA = 3 / 100


@pytest.fixture
def verdict(capsys):
    def emit(label, passed, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if passed else 'FAIL'} criterion {label}: {detail}")
        assert passed, detail

    return emit


@lru_cache(maxsize=None)
def phi_report(m, t):
    return solve_all(phi_t(BifurcationSpec(rhie3(), m, t)))


@lru_cache(maxsize=None)
def psi_report(m):
    return solve_all(psi_t(BifurcationSpec(rhie3(), m, 1e-3, "psi")))


@lru_cache(maxsize=None)
def low_end_report():
    return solve_all(phi_t(BifurcationSpec(ZBAR * monomial(3, 0) - 1, 2, 1e-3)))


@lru_cache(maxsize=None)
def random_reports():
    rng = np.random.default_rng(20240501)
    return tuple((n, m, solve_all(random_mixed(n, m, rng))) for n, m in ((2, 1), (3, 1), (3, 2)) for _ in range(100))


def infinity_errors(report, m, t):
    big = [r.location for r in report.roots if abs(r.location) > 50]
    return [min(abs(z - p) for z in big) / abs(p) for p in predict_infinity_roots(GAMMA, m, t)]


def test_criterion_1_golden_rhie3(verdict):
    r = solve_all(rhie3())
    worst = max(x.residual for x in r.roots)
    ok = r.rho == 10 and r.beta == 2 and not r.degenerate_found and worst <= 1e-9
    verdict("1", ok, f"rho={r.rho} beta={r.beta} simple={not r.degenerate_found} max|residual|={worst:.3g}")


def test_criterion_2_golden_example(verdict):
    r = solve_all(example_f())
    big = sorted(r.roots, key=lambda x: -abs(x.location))[:2]
    near = all(min(abs(b.location - w) for b in big) <= 0.5 for w in (-150 + 86.6j, -150 - 86.6j))
    ok = (r.rho, r.beta, r.n_positive, r.n_negative) == (12, 0, 6, 6) and near and all(b.sign == "-" for b in big)
    locs = ", ".join(f"{b.location:.6g}({b.sign})" for b in big)
    verdict("2", ok, f"rho={r.rho} beta={r.beta} +{r.n_positive}/-{r.n_negative}; largest {locs}")


@pytest.mark.parametrize("m", [2, 3, 4])
def test_criterion_3a_phi_counts_and_predictor(verdict, m):
    t = 1e-3 * GAMMA
    r = phi_report(m, t)
    big = [x for x in r.roots if abs(x.location) > 50]
    err = infinity_errors(r, m, t)
    ok = (r.rho == 9 + m and not r.degenerate_found and len(big) == m - 1
          and all(x.sign == "-" for x in big) and max(err) <= 0.1)
    verdict(f"3a (m={m})", ok, f"rho={r.rho} (want {9 + m}), {len(big)} big negative roots, "
                               f"max relative predictor error {max(err):.3g}")


@pytest.mark.parametrize("m", [2, 3, 4])
def test_criterion_3b_halving_t_halves_error(verdict, m):
    t = 1e-3 * GAMMA
    e1 = infinity_errors(phi_report(m, t), m, t)
    e2 = infinity_errors(phi_report(m, t / 2), m, t / 2)
    ratios = [a / b for a, b in zip(e1, e2)]
    # "halves within a factor of 2": error ratio in [1, 4]
    ok = all(1 <= q <= 4 for q in ratios)
    verdict(f"3b (m={m})", ok, "error ratios " + ", ".join(f"{q:.7g}" for q in ratios) + " (band [1, 4])")


@pytest.mark.parametrize("m", [2, 3])
def test_criterion_4_psi(verdict, m):
    base = solve_all(rhie3())
    r = psi_report(m)
    new = [x for x in r.roots if min(abs(x.location - y.location) for y in base.roots) > 0.05]
    ok = r.rho == 9 + m and not r.degenerate_found and len(new) == m - 1 and all(x.sign == "-" for x in new)
    verdict(f"4 (m={m})", ok, f"rho={r.rho} (want {9 + m}), new roots "
                              + ", ".join(f"{x.location:.6g}({x.sign})" for x in new))


def test_criterion_5_low_end(verdict):
    base = solve_all(ZBAR * monomial(3, 0) - 1)
    r = low_end_report()
    ok = base.rho == 2 and r.rho == 3 and not r.degenerate_found
    verdict("5", ok, f"base k={base.rho}, rho(phi_t)={r.rho} (want n+m-2=3)")


def test_criterion_6_beta_law(verdict):
    reps = random_reports()
    clean = [(n, m, r) for n, m, r in reps if not r.degenerate_found]
    bad = [(n, m) for n, m, r in clean if not (r.beta == n - m and r.winding == n - m)]
    frac = 1 - len(clean) / len(reps)
    ok = not bad and frac < 0.05
    verdict("6", ok, f"{len(reps)} draws, {len(reps) - len(clean)} degenerate ({frac:.1%}), {len(bad)} violations")


def test_criterion_7_parity(verdict):
    reps = [solve_all(rhie3()), solve_all(example_f()), low_end_report()]
    reps += [phi_report(m, t) for m in (2, 3, 4) for t in (1e-3 * GAMMA, 5e-4 * GAMMA)]
    reps += [psi_report(m) for m in (2, 3)]
    reps += [r for _, _, r in random_reports()]
    bad = 0
    for r in reps:
        if r.degenerate_found:
            continue
        p = degrees(r.polynomial)
        bad += (r.rho - (p.holo - p.antiholo)) % 2 != 0
    verdict("7", bad == 0, f"{len(reps)} reports, {bad} parity violations")


def same_root_sets(a, b, tol=1e-6):
    if len(a) != len(b):
        return False
    rest = list(b)
    for x in a:
        hit = [y for y in rest if abs(x.location - y.location) <= tol and x.sign == y.sign]
        if not hit:
            return False
        rest.remove(hit[0])
    return True


def test_criterion_8_oracle(verdict):
    rng = np.random.default_rng(7)
    shapes = [(n, m) for n in range(6) for m in range(6) if 1 <= n + m <= 5]
    bad = []
    for i in range(50):
        n, m = shapes[i % len(shapes)]
        f = random_mixed(n, m, rng)
        R = 2 * cauchy_bound_mixed(f)
        if not same_root_sets(solve_all(f).roots, grid_newton_oracle(f, (-R, R, -R, R), 60)):
            bad.append((n, m))
    verdict("8", not bad, f"50 draws over {len(shapes)} shapes, mismatches {bad}")


def test_criterion_9_error_paths(verdict):
    msgs = []
    for f in (Z * ZBAR - 1, ZBAR - Z):
        try:
            solve_all(f)
            msgs.append("returned roots")
        except NonIsolatedZeroSet as exc:
            msgs.append(str(exc))
    ok = all("non-isolated zero set" in s for s in msgs)
    verdict("9", ok, "; ".join(msgs))


def test_criterion_10_figure(verdict, tmp_path):
    src = tmp_path / "example.json"
    src.write_text('{"family": "example"}')
    svg = tmp_path / "example.svg"
    code = cli.main(["plot", str(src), "--window", "-1.2,1.2,-1.2,1.2", "--samples", "600",
                     "--out", str(svg)])
    spec = PlotSpec((-1.2, 1.2, -1.2, 1.2), 600)
    green, red = parse_svg_segments(svg.read_text(), spec)
    d = spec.cell_diagonal
    pts = curve_intersections(green, red, d, tol=1e-4)
    small = [r.location for r in solve_all(example_f()).roots if abs(r.location) <= 50]
    matched = all(pts.size and np.min(np.abs(pts - z)) <= d for z in small)
    ok = code == 0 and len(small) == 10 and len(pts) == 10 and matched
    verdict("10", ok, f"{len(pts)} curve intersections, {len(small)} small roots, all within one cell: {matched}")
