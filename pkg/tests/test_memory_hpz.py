"""Thermal model: short-time polynomial coefficients and their horizon.

The closed forms here are short-time truncations, so two kinds of checks
appear: exact ones (algebraic identities, the discriminant closed form,
flow polynomials) and two-route ones against the quadrature oracle whose
integrands are NOT truncated, with the measured truncation gap pinned.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wmem.memory_coeffs import (
    Model,
    ModelParams,
    characteristic_map,
    gaussian_params,
    hpz_ABC,
    hpz_memory,
    hpz_tilde,
    tilde_discriminant,
    validity_horizon,
)
from wmem.reference_oracle import QuadratureSpec, derivative_at, quad_coefficient

PARAMS = ModelParams(model=Model.HPZ, cutoff=0.1, beta=0.5, omega=0.05, delta=1.0)
T_STAR = validity_horizon(PARAMS)[0]


def chi_normalizer(t: float, p: ModelParams) -> float:
    """Independent transcription of the squared cubic normalizer."""
    q = p.delta * math.pi * p.cutoff**2
    return (1.0 + (q / 12.0) * t**3 * (2.0 - p.cutoff * t)) ** 2


def test_all_coefficients_vanish_at_time_zero():
    assert hpz_memory(0.0, PARAMS) == (0.0, 0.0, 0.0, 0.0)
    assert hpz_ABC(0.0, PARAMS) == (0.0, 0.0, 0.0)
    assert hpz_tilde(0.0, PARAMS) == (0.0, 0.0, 0.0)


def test_frequency_shift_slope_at_zero():
    """The frequency shift starts with slope delta*pi*cutoff^2/2."""
    slope = PARAMS.delta * math.pi * PARAMS.cutoff**2 / 2.0
    t = 1e-8
    assert hpz_memory(t, PARAMS)[0] / t == pytest.approx(slope, rel=1e-7)
    # and the finite-difference oracle confirms the polynomial away from 0
    probe = 0.5
    fd = derivative_at(lambda s: hpz_memory(s, PARAMS)[0], 1, t0=probe, h0=0.05)
    assert fd == pytest.approx(slope * (1.0 - PARAMS.cutoff * probe), rel=1e-9)


def test_momentum_diffusion_curvature_at_zero():
    """The third running integral starts quadratically with the bath rate."""
    t = 1e-6
    curvature = PARAMS.delta * math.pi * PARAMS.cutoff / PARAMS.beta
    assert 2.0 * hpz_ABC(t, PARAMS)[2] / t**2 == pytest.approx(curvature, rel=1e-5)


@pytest.mark.parametrize("which,gap", [("a", 3e-3), ("b", 5e-3),
                                       ("c", 3e-5), ("d", 1.5e-4)])
def test_memory_polynomials_track_bath_correlations(which, gap):
    """Short-time polynomials match the exp/trig bath integrals to their order.

    The quadrature integrands keep the full exponential and trigonometric
    bath correlations, so the discrepancy measures the truncation error of
    the polynomial forms at t=1; the pinned gaps are about twice the
    measured values.
    """
    closed = dict(zip("abcd", hpz_memory(1.0, PARAMS)))[which]
    quad = quad_coefficient(Model.HPZ, which, 1.0, PARAMS, QuadratureSpec())
    assert closed == pytest.approx(quad, rel=gap), (
        f"memory {which}: closed {closed!r} vs bath quadrature {quad!r}")


@pytest.mark.parametrize("frac", np.linspace(0.2, 1.0, 5).tolist())
def test_running_integrals_match_quadrature(frac):
    """Closed A, B, C agree with quadrature of their flow integrals."""
    t = frac * T_STAR
    closed = hpz_ABC(t, PARAMS)
    spec = QuadratureSpec()
    for which, value in zip(("A", "B", "C"), closed):
        quad = quad_coefficient(Model.HPZ, which, t, PARAMS, spec)
        assert value == pytest.approx(quad, rel=2e-3), (
            f"{which} at t={t:.3f}: closed {value!r} vs quadrature {quad!r}")


@pytest.mark.parametrize("frac", [0.3, 0.6, 1.0])
def test_sheared_forms_match_rational_composition(frac):
    """The sheared closed forms track the rational composition of A, B, C.

    The composition route divides by (f^2 - f_t*g)^2 using the flow
    polynomials; both routes are truncations of the same order, and their
    measured disagreement stays under 3e-3 across the horizon.
    """
    t = frac * T_STAR
    a, b, c = hpz_ABC(t, PARAMS)
    cmap = characteristic_map(t, PARAMS)
    f, g, ft = cmap.f, cmap.g, cmap.f_t
    den = (f * f - ft * g) ** 2
    composed = ((f * f * a - f * g * b + g * g * c) / den,
                (-2.0 * f * ft * a + (f * f + ft * g) * b - 2.0 * f * g * c) / den,
                (ft * ft * a - f * ft * b + f * f * c) / den)
    for closed, comp in zip(hpz_tilde(t, PARAMS), composed):
        assert closed == pytest.approx(comp, rel=3e-3)


def test_discriminant_closed_form_identity():
    """The stable discriminant equals its power-law-over-chi closed form."""
    p = PARAMS
    for frac in np.linspace(0.2, 1.0, 5):
        t = frac * T_STAR
        expected = (p.delta**2 * math.pi**2 * p.cutoff**3 * t**7
                    / (60.0 * p.beta**2 * chi_normalizer(t, p)))
        assert tilde_discriminant(t, p) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("frac", [0.3, 0.6, 1.0])
def test_naive_product_understates_discriminant(frac):
    """4*At*Ct - Bt^2 from the truncated tildes is NOT the discriminant.

    The truncations interfere at leading order: the product route falls
    short of the consistent closed form by a factor of about
    (3/4)*cutoff*t, which is why tilde_discriminant exists as its own
    entry point and the kernel scalars are built from it.
    """
    t = frac * T_STAR
    at, bt, ct = hpz_tilde(t, PARAMS)
    disc = tilde_discriminant(t, PARAMS)
    defect = (4.0 * at * ct - bt * bt) / disc - 1.0
    assert defect == pytest.approx(-0.75 * PARAMS.cutoff * t, rel=0.12)


def test_validity_horizon_closed_form():
    """t_star solves the frequency/coupling balance; the outer horizon is sqrt(3) further."""
    p = ModelParams(model=Model.HPZ, cutoff=0.5, beta=1.0, omega=0.0, delta=2.0 / math.pi)
    t_star, outer = validity_horizon(p)
    assert t_star == pytest.approx(1.0, rel=1e-15)
    assert outer == pytest.approx(math.sqrt(3.0), rel=1e-15)
    # a positive trap frequency shortens the horizon
    assert validity_horizon(PARAMS)[0] < (PARAMS.delta * math.pi * PARAMS.cutoff) ** -0.25


def test_characteristic_map_polynomials():
    """Flow entries match their quartic/quintic polynomials at a spot time."""
    p = PARAMS
    q = p.delta * math.pi * p.cutoff**2
    w2 = p.omega**2
    t = 0.7
    cmap = characteristic_map(t, p)
    kappa = 1.0 - w2 * t**2 / 2.0 + q * t**3 / 6.0 - q * p.cutoff * t**4 / 24.0
    kappa_t = t * (-w2 + q * t / 2.0 - q * p.cutoff * t**2 / 6.0)
    nu = t * (1.0 - w2 * t**2 / 6.0 + q * t**3 / 24.0 - q * p.cutoff * t**4 / 120.0)
    assert cmap.kappa == pytest.approx(kappa, rel=1e-14)
    assert cmap.kappa_t == pytest.approx(kappa_t, rel=1e-14)
    assert cmap.nu == pytest.approx(nu, rel=1e-14)
    assert cmap.nu_t == cmap.kappa
    assert cmap.g_t == cmap.f
    assert cmap.lam == pytest.approx(1.0 - cmap.nu * cmap.kappa_t / cmap.kappa**2,
                                     rel=1e-14)
    cmap0 = characteristic_map(0.0, p)
    assert (cmap0.kappa, cmap0.nu, cmap0.kappa_t, cmap0.nu_t) == (1.0, 0.0, 0.0, 1.0)


@given(frac=st.floats(min_value=1e-3, max_value=1.0))
@settings(max_examples=200, deadline=None)
def test_flow_invertibility_inside_horizon(frac):
    """The flow determinant and margin stay positive up to t_star."""
    t = frac * T_STAR
    cmap = characteristic_map(t, PARAMS)
    assert cmap.det > 0.0
    assert 0.9 < cmap.lam < 1.001


@given(frac=st.floats(min_value=1e-4, max_value=1.0))
@settings(max_examples=200, deadline=None)
def test_positivity_inside_horizon(frac):
    """Diagonal sheared coefficients and discriminant are positive."""
    t = frac * T_STAR
    at, _, ct = hpz_tilde(t, PARAMS)
    assert at > 0.0
    assert ct > 0.0
    assert tilde_discriminant(t, PARAMS) > 0.0


def test_kernel_momentum_width_limit():
    """g_c*t^3 approaches 15*beta/(2*delta*pi*cutoff^2) as t -> 0."""
    limit = 15.0 * PARAMS.beta / (2.0 * PARAMS.delta * math.pi * PARAMS.cutoff**2)
    t = 1e-5
    co = gaussian_params(t, PARAMS, dim=3)
    assert co.g_c * t**3 == pytest.approx(limit, rel=1e-5)


def test_horizon_flags():
    """Evaluations past twice the horizon are flagged, earlier ones are not."""
    assert not gaussian_params(1.9 * T_STAR, PARAMS).beyond_horizon
    assert gaussian_params(2.1 * T_STAR, PARAMS).beyond_horizon
    assert not characteristic_map(1.9 * T_STAR, PARAMS).beyond_horizon
    assert characteristic_map(2.1 * T_STAR, PARAMS).beyond_horizon


def test_kernel_scalars_satisfy_their_defining_relations():
    """g-parameters encode the sheared coefficients through their product.

    The Fourier/real-space pair is self-consistent only when the
    normalization uses the exact product 4*At*Ct - Bt^2 of the truncated
    tildes (not the consistent discriminant closed form, which differs at
    the truncation order); the kernel scalars are built that way.
    """
    t = 0.8 * T_STAR
    at, bt, ct = hpz_tilde(t, PARAMS)
    product = 4.0 * at * ct - bt * bt
    for dim in (1, 2, 3):
        co = gaussian_params(t, PARAMS, dim=dim)
        assert co.g_d == pytest.approx((2.0 * math.pi) ** -dim
                                       * product ** (-dim / 2.0), rel=1e-10)
        assert co.g_a == pytest.approx(ct / product, rel=1e-10)
        assert co.g_b == pytest.approx(bt / product, rel=1e-10)
        assert co.g_c == pytest.approx(at / product, rel=1e-10)


def test_model_parameter_validation():
    with pytest.raises(ValueError, match="must be positive"):
        ModelParams(model=Model.HPZ, cutoff=0.0, beta=0.5)
    with pytest.raises(ValueError, match="omega"):
        ModelParams(model=Model.HPZ, cutoff=0.1, beta=0.5, omega=-1.0)
