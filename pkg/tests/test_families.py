import numpy as np
import pytest

from lensroots.classify import classify_polynomial
from lensroots.families import (
    BifurcationSpec,
    LensSystem,
    as_complex,
    example_f,
    lens_numerator,
    lens_system,
    phi_t,
    polygon_lens,
    power_lens,
    predict_infinity_roots,
    psi_t,
    random_mixed,
    rhie3,
    rhie3_printed,
    rhie_family,
    split_lens,
)
from lensroots.errors import NonIsolatedZeroSet
from lensroots.mixedpoly import Z, ZBAR, degrees, evaluate, monomial
from lensroots.solver import newton_polish, solve_all

GAMMA = 3 / 100


def coefficient_gap(f, g):
    keys = set(f.terms) | set(g.terms)
    return max(abs(f.coefficient(*k) - g.coefficient(*k)) for k in keys)


def test_lens_numerator_two_masses():
    f = lens_numerator(LensSystem((1, 1), (1, -1)))
    assert coefficient_gap(f, ZBAR * (Z**2 - 1) - 2 * Z) == 0
    tag = classify_polynomial(f)
    assert (tag.class_name, tag.n, tag.m) == ("L", 2, 1)


def test_single_mass_is_non_isolated():
    f = lens_numerator(lens_system([[1, 0]], [[0, 0]]))
    assert f == Z * ZBAR - 1
    with pytest.raises(NonIsolatedZeroSet):
        solve_all(f)


def test_lens_system_validation():
    with pytest.raises(ValueError):
        LensSystem((1, 1), (0, 0))
    with pytest.raises(ValueError):
        LensSystem((1,), (0, 1))
    with pytest.raises(ValueError):
        LensSystem((0,), (0,))
    assert as_complex([1, -2]) == 1 - 2j
    assert as_complex(3) == 3
    with pytest.raises(ValueError):
        as_complex([1, 2, 3])


def test_rhie3_shape():
    f = rhie3()
    prof = degrees(f)
    assert (prof.holo, prof.antiholo, prof.mixed) == (3, 1, 4)
    assert prof.top_is_monomial and prof.top_coefficient == pytest.approx(GAMMA)
    q, p = split_lens(f)
    assert np.allclose(q, [-GAMMA / 8, 0, 0, GAMMA])
    assert np.allclose(p, [-13e-5, 0, 0.03])


def test_rhie3_printed_variant():
    f = rhie3_printed()
    assert evaluate(f, 0) == pytest.approx(12513 / 100000, abs=1e-17)
    assert coefficient_gap(f, rhie3() - (monomial(3, 0) - 1 / 8)) < 1e-17
    assert solve_all(f).rho == 4


def test_example_is_phi_of_rhie3():
    g = phi_t(BifurcationSpec(rhie3(), 3, GAMMA / 100))
    assert coefficient_gap(g, example_f()) < 1e-16
    prof = degrees(example_f())
    assert (prof.holo, prof.antiholo, prof.mixed) == (3, 3, 6)


def test_example_top_coefficient_literal():
    assert degrees(example_f()).top_coefficient == pytest.approx(1e-6)


def test_power_lens():
    rep = solve_all(power_lens(3, 1))
    assert rep.rho == 2 and np.allclose(sorted(rep.locations.real), [-1, 1])
    rep = solve_all(power_lens(2, 0))
    assert np.allclose(sorted(rep.locations.real), [-1, 1])
    rep = solve_all(power_lens(5, 2))
    assert (rep.rho, rep.beta) == (3, 3)
    with pytest.raises(ValueError):
        power_lens(2, 2)


def test_phi_m1_and_t0_return_base():
    b = rhie3()
    assert coefficient_gap(phi_t(BifurcationSpec(b, 1, 0.37)), b) < 1e-17
    assert coefficient_gap(phi_t(BifurcationSpec(b, 3, 0.0)), b) < 1e-17
    assert psi_t(BifurcationSpec(b, 2, 0.0, "psi")) == b


@pytest.mark.parametrize("k", [2, 3, 4])
def test_phi_converges_linearly_to_base(k):
    b = rhie3()
    t = 10.0**-k
    gap = coefficient_gap(phi_t(BifurcationSpec(b, 3, t)), b)
    gap10 = coefficient_gap(phi_t(BifurcationSpec(b, 3, t / 10)), b)
    assert gap / gap10 == pytest.approx(10, rel=0.05)


def test_phi_counts():
    b = rhie3()
    for m, rho, beta in [(2, 11, 1), (3, 12, 0)]:
        rep = solve_all(phi_t(BifurcationSpec(b, m, 1e-3 * GAMMA)))
        assert (rep.rho, rep.beta) == (rho, beta)


def test_psi_is_harmonically_splitting():
    f = psi_t(BifurcationSpec(rhie3(), 3, 1e-3, "psi"))
    assert classify_polynomial(f).class_name == "Lhs"
    q, _ = split_lens(rhie3())
    # the zbar^3 slice is t * q(z)
    assert np.allclose(f.slice_zbar(3), 1e-3 * q)
    with pytest.raises(ValueError):
        psi_t(BifurcationSpec(rhie3(), 1, 1e-3, "psi"))


def test_psi_new_root_negative():
    b = solve_all(rhie3())
    rep = solve_all(psi_t(BifurcationSpec(rhie3(), 2, 1e-3, "psi")))
    assert rep.rho == 11
    new = [r for r in rep.roots if min(abs(r.location - s.location) for s in b.roots) > 0.05]
    assert len(new) == 1 and new[0].sign == "-"


def test_bifurcation_spec_validation():
    with pytest.raises(ValueError):
        BifurcationSpec(rhie3(), 0, 1e-3)
    with pytest.raises(ValueError):
        BifurcationSpec(rhie3(), 2, 1e-3, "chi")
    with pytest.raises(ValueError):
        BifurcationSpec(Z**2 * ZBAR**2 - 1, 2, 1e-3)
    assert BifurcationSpec(rhie3(), 2, 1e-3).gamma == pytest.approx(GAMMA)


def test_predictor_closed_forms():
    assert predict_infinity_roots(GAMMA, 2, 1e-3)[0] == pytest.approx(-2 * GAMMA / 1e-3)
    w = predict_infinity_roots(1.0, 3, 0.01)
    assert sorted(w, key=lambda z: z.imag) == pytest.approx([-150 - 50 * np.sqrt(3) * 1j,
                                                              -150 + 50 * np.sqrt(3) * 1j])
    with pytest.raises(ValueError):
        predict_infinity_roots(GAMMA, 1, 1e-3)


def test_predictor_for_complex_ratio():
    # (t zbar + gamma)^m = gamma^m must hold at the prediction
    gamma, t, m = 0.5 + 0.2j, 1e-3 * (1 - 1j), 4
    for z in predict_infinity_roots(gamma, m, t):
        assert abs((t * np.conj(z) + gamma) ** m - gamma**m) < 1e-12


@pytest.mark.parametrize("m", [2, 3, 4])
def test_newton_from_prediction_finds_negative_root(m):
    t = 1e-3 * GAMMA
    f = phi_t(BifurcationSpec(rhie3(), m, t))
    for z0 in predict_infinity_roots(GAMMA, m, t):
        r = newton_polish(f, z0)
        assert r.sign == "-"
        assert abs(r.location - z0) < 0.1 * abs(z0)


def test_rhie_family_basics():
    f = rhie_family(4, 0.0, 0.7)
    ring = polygon_lens(3, 0.7)
    assert coefficient_gap(f, Z * ring) < 1e-15
    tag = classify_polynomial(rhie_family(3, 0.05, 0.8))
    assert (tag.class_name, tag.n, tag.m) == ("L", 3, 1)
    with pytest.raises(ValueError):
        rhie_family(2, 0.1, 1.0)
    with pytest.raises(ValueError):
        rhie_family(3, 1.0, 1.0)
    with pytest.raises(ValueError):
        rhie_family(3, 0.1, -1.0)


def test_rhie_family_n3_window_peaks_at_six():
    # collinear configuration: the (eps, a) window never exceeds six images
    best = max(
        solve_all(rhie_family(3, eps, a)).rho
        for eps in (0.01, 0.05, 0.1)
        for a in (0.6, 0.8, 1.0)
    )
    assert best == 6


def test_rhie_family_n4_reaches_the_bound():
    rep = solve_all(rhie_family(4, 0.0017, 0.65))
    assert rep.rho == 15 and not rep.degenerate_found


def test_random_mixed_profile():
    rng = np.random.default_rng(0)
    f = random_mixed(3, 2, rng)
    prof = degrees(f)
    assert (prof.holo, prof.antiholo, prof.mixed) == (3, 2, 5)
    assert prof.top_is_monomial and abs(abs(prof.top_coefficient) - 1) < 1e-12
    assert all(abs(c) <= 1 for k, c in f.items())
