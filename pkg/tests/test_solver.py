"""End-to-end behaviour of solve_all and the grid oracle."""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from lensroots.errors import NonIsolatedZeroSet
from lensroots.families import example_f, random_mixed, rhie3
from lensroots.mixedpoly import Z, ZBAR, monomial
from lensroots.solver import (
    Contour,
    build_report,
    cauchy_bound_mixed,
    conjugacy_filter,
    dedupe,
    eliminant,
    flip_sign,
    grid_newton_oracle,
    newton_polish,
    solve_all,
    univariate_roots,
    winding_number,
)
from lensroots.solver.newton import Root


def test_newton_examples():
    r = newton_polish(Z, 0.3 + 0.2j)
    assert abs(r.location) < 1e-12 and r.sign == "+" and r.jacobian == pytest.approx(1)
    r = newton_polish(ZBAR, 0.3)
    assert abs(r.location) < 1e-12 and r.sign == "-" and r.jacobian == pytest.approx(-1)


def test_conjugacy_filter_examples():
    f = Z**2 - ZBAR
    cands = [0, 1, np.exp(2j * np.pi / 3), np.exp(-2j * np.pi / 3)]
    assert len(conjugacy_filter(f, cands)) == 4
    assert conjugacy_filter(f, []).size == 0
    g = ZBAR * Z**2 - 1
    kept = conjugacy_filter(g, univariate_roots(eliminant(g)))
    assert len(kept) == 1 and kept[0] == pytest.approx(1)


def test_z_squared_minus_zbar():
    rep = solve_all(Z**2 - ZBAR)
    assert rep.rho == 4 and rep.beta == 2
    assert rep.n_positive == 3 and rep.n_negative == 1
    assert rep.winding_certified


def test_polar_form_examples():
    rep = solve_all(ZBAR * Z**3 - 1)
    assert rep.rho == 2 and rep.beta == 2
    assert np.allclose(sorted(rep.locations.real), [-1, 1])
    rep = solve_all(monomial(5, 2) - 1)
    assert rep.rho == 3 and rep.beta == 3


def test_rhie3_and_example():
    r = solve_all(rhie3())
    assert (r.rho, r.beta, r.n_positive, r.n_negative) == (10, 2, 6, 4)
    e = solve_all(example_f())
    assert (e.rho, e.beta, e.n_positive, e.n_negative) == (12, 0, 6, 6)
    assert winding_number(example_f(), Contour(0j, 500.0)) == 0


def test_report_is_sorted_and_deterministic():
    a = solve_all(rhie3())
    b = solve_all(rhie3())
    assert a == b
    z = a.locations
    assert all((z[i].real, z[i].imag) <= (z[i + 1].real, z[i + 1].imag) for i in range(len(z) - 1))


def test_constant_and_zero_polynomials():
    rep = solve_all(Z * 0 + 2)
    assert rep.rho == 0 and rep.winding_certified
    with pytest.raises(ValueError):
        solve_all(Z - Z)


@pytest.mark.parametrize("f", [Z * ZBAR - 1, ZBAR - Z], ids=["circle", "real-axis"])
def test_non_isolated_zero_sets(f):
    with pytest.raises(NonIsolatedZeroSet):
        solve_all(f)


def test_dedupe_keeps_best_residual():
    a = Root(1.0 + 0j, 1.0, "+", 1e-12)
    b = Root(1.0 + 1e-9j, 1.0, "+", 1e-15)
    c = Root(2.0 + 0j, -1.0, "-", 0.0)
    kept = dedupe([a, b, c])
    assert len(kept) == 2 and b in kept


def test_dedupe_is_relative_far_out():
    # roots near |z| = 173 that are 1e-3 apart must survive
    a = Root(-150 + 86.6j, -1.0, "-", 0.0)
    b = Root(-150 + 86.601j, -1.0, "-", 0.0)
    assert len(dedupe([a, b])) == 2


def test_flip_sign_breaks_certification():
    rep = solve_all(rhie3())
    bad = flip_sign(rep)
    assert bad.beta == rep.beta - 2 * rep.roots[0].sign_value
    assert not bad.winding_certified


def test_build_report_flags_degenerate():
    rep = build_report(Z, [Root(0j, 0.0, "0", 0.0)], winding=1)
    assert rep.degenerate_found and not rep.winding_certified and rep.beta == 0


def test_degenerate_fold_root_is_flagged():
    x = (Z + ZBAR) / 2
    y = (Z - ZBAR) / 2j
    rep = solve_all(x * x - y + 1j * y)
    assert rep.degenerate_found
    assert [r.sign for r in rep.roots] == ["0"]


def test_cauchy_bound_mixed():
    f = ZBAR * Z**3 - 1
    assert cauchy_bound_mixed(f) == pytest.approx(2.0)
    assert cauchy_bound_mixed(Z * ZBAR + Z - ZBAR) < np.inf
    # top form z^2 zbar - z zbar^2 vanishes on the real axis
    assert cauchy_bound_mixed(Z**2 * ZBAR - Z * ZBAR**2 + 1) == np.inf


def test_grid_oracle_examples():
    f = Z**2 - ZBAR
    o = grid_newton_oracle(f, (-2, 2, -2, 2), 40)
    assert np.allclose(sorted(r.location.real for r in o), sorted(solve_all(f).locations.real), atol=1e-9)
    assert len(o) == 4
    assert [r.location for r in grid_newton_oracle(Z, (-1, 1, -1, 1), 8)] == [0j]
    with pytest.raises(ValueError):
        grid_newton_oracle(Z, (-1, 1, -1, 1), 1)


def test_grid_oracle_agrees_on_rhie3():
    o = grid_newton_oracle(rhie3(), (-2, 2, -2, 2), 80)
    r = solve_all(rhie3())
    assert len(o) == 10
    assert np.allclose(sorted(x.location.real for x in o), sorted(r.locations.real), atol=1e-9)
    assert sorted(x.sign for x in o) == sorted(x.sign for x in r.roots)


def test_local_winding_matches_sign():
    rep = solve_all(example_f())
    for r in rep.roots:
        c = Contour(r.location, 1e-3 * (1 + abs(r.location)))
        assert winding_number(example_f(), c) == r.sign_value


def test_conjugate_symmetry_for_real_coefficients():
    rep = solve_all(example_f())
    for r in rep.roots:
        partner = [s for s in rep.roots if abs(s.location - np.conj(r.location)) <= 1e-8 * (1 + abs(r.location))]
        assert len(partner) == 1 and partner[0].sign == r.sign


shapes = st.sampled_from([(n, m) for n in range(6) for m in range(6) if 1 <= n + m <= 5])


@given(shapes, st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_parity_and_beta_law(shape, seed):
    n, m = shape
    rep = solve_all(random_mixed(n, m, np.random.default_rng(seed)))
    if rep.degenerate_found:
        return
    assert rep.rho % 2 == (n - m) % 2
    assert rep.beta == n - m == rep.winding
    assert (rep.rho - rep.beta) % 2 == 0
