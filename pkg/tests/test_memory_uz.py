"""Zero-temperature model: memory coefficients, running integrals, kernel scalars.

Closed forms are validated against the quadrature oracle, against their
small-time derivatives through the finite-difference oracle, and against
exact algebraic identities between the sheared and unsheared families.
Expected constants were frozen from the oracles first.
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
    tilde_discriminant,
    uz_ABC,
    uz_memory,
    uz_tilde,
    validity_horizon,
)
from wmem.reference_oracle import QuadratureSpec, derivative_at, quad_coefficient

PARAMS = ModelParams(model=Model.UZ, gamma=0.5, cutoff=0.2)
I1P0 = 0.5 * math.log1p((PARAMS.cutoff / (2.0 * PARAMS.gamma)) ** 2)

# First positive roots (in u = gamma*t) of the sheared discriminant and of
# the first sheared integral: the truncated coefficient family loses
# positivity past these points and the real-space kernel ceases to exist.
# Both frozen from bracketed root solves; both are independent of gamma.
DISCRIMINANT_ROOT_U = 0.9634310960228077
AT_ROOT_U = 0.9889953566729267


def test_all_coefficients_vanish_at_time_zero():
    """Memory coefficients and running integrals start from zero."""
    assert uz_memory(0.0, PARAMS) == (0.0, 0.0)
    assert uz_ABC(0.0, PARAMS) == (0.0, 0.0, 0.0)
    assert uz_tilde(0.0, PARAMS) == (0.0, 0.0, 0.0)


def test_negative_time_rejected():
    with pytest.raises(ValueError, match="nonnegative"):
        uz_memory(-0.1, PARAMS)


def test_memory_coefficients_against_quadrature():
    """Frozen values at t=1 and agreement with the bath-frequency quadrature."""
    mem_c, mem_d = uz_memory(1.0, PARAMS)
    assert mem_c == pytest.approx(0.007891608445091536, rel=1e-15)
    assert mem_d == pytest.approx(0.004592732294776538, rel=1e-15)
    spec = QuadratureSpec()
    quad_c = quad_coefficient(Model.UZ, "c", 1.0, PARAMS, spec)
    quad_d = quad_coefficient(Model.UZ, "d", 1.0, PARAMS, spec)
    assert mem_c == pytest.approx(quad_c, rel=1e-12)
    assert mem_d == pytest.approx(quad_d, rel=1e-12)


def test_momentum_diffusion_saturates():
    """The momentum-diffusion coefficient levels off at its large-time value."""
    mem_c, _ = uz_memory(40.0 / PARAMS.gamma, PARAMS)
    plateau = (8.0 * PARAMS.gamma**2 / math.pi) * I1P0
    assert mem_c == pytest.approx(plateau, rel=1e-12)


@pytest.mark.parametrize("which", ["A", "B", "C", "At", "Bt", "Ct"])
@pytest.mark.parametrize("u", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_running_integrals_match_quadrature(which, u):
    """Each closed form reproduces the quadrature of its defining integral."""
    t = u / PARAMS.gamma
    closed = dict(zip(("A", "B", "C"), uz_ABC(t, PARAMS)))
    closed.update(zip(("At", "Bt", "Ct"), uz_tilde(t, PARAMS)))
    quad = quad_coefficient(Model.UZ, which, t, PARAMS, QuadratureSpec())
    assert closed[which] == pytest.approx(quad, rel=1e-10), (
        f"{which} at u={u}: closed {closed[which]!r} vs quadrature {quad!r}")


def test_shear_composition_identity():
    """The sheared integrals are the shear composition of the plain ones."""
    for t in (0.3, 0.9, 2.0):
        a, b, c = uz_ABC(t, PARAMS)
        at, bt, ct = uz_tilde(t, PARAMS)
        cmap = characteristic_map(t, PARAMS)
        m1, m2 = cmap.m1, cmap.m2
        assert at == pytest.approx(a + m1 * b + m1 * m1 * c, rel=1e-11)
        assert bt == pytest.approx(m2 * (b + 2.0 * m1 * c), rel=1e-11)
        assert ct == pytest.approx(m2 * m2 * c, rel=1e-12)


def test_series_and_closed_branches_agree_at_the_seam():
    """Values are continuous across the series/closed-form switch.

    The probe offset is small enough that the smooth drift of each
    coefficient over 2*delta stays near 2e-11 relative, so a branch
    mismatch above the 1e-10 tolerance cannot hide behind it.
    """
    u_switch = 0.5
    delta = 1e-12
    below = u_switch - delta
    above = u_switch + delta
    for fn in (uz_ABC, uz_tilde):
        lo = fn(below / PARAMS.gamma, PARAMS)
        hi = fn(above / PARAMS.gamma, PARAMS)
        for a, b in zip(lo, hi):
            assert a == pytest.approx(b, rel=1e-10, abs=1e-18)
    assert tilde_discriminant(below / PARAMS.gamma, PARAMS) == pytest.approx(
        tilde_discriminant(above / PARAMS.gamma, PARAMS), rel=1e-10)


def test_first_sheared_integral_spot_value():
    """At u = 1/2 the first sheared integral evaluates in closed form.

    The scaled value pi*At/(2*I) at t = 1/(2 gamma) equals
    (1/4 gamma)(16/e + 1/e^2 - 6); the quadrature oracle confirms this
    constant (the nearby value with trailing -5 fails it by half a unit).
    """
    g = PARAMS.gamma
    t = 1.0 / (2.0 * g)
    at = uz_tilde(t, PARAMS)[0]
    scaled = math.pi * at / (2.0 * I1P0)
    expected = (1.0 / (4.0 * g)) * (16.0 / math.e + math.exp(-2.0) - 6.0)
    assert scaled == pytest.approx(expected, rel=1e-12)
    wrong = (1.0 / (4.0 * g)) * (16.0 / math.e + math.exp(-2.0) - 5.0)
    assert abs(scaled - wrong) > 0.4


def test_discriminant_spot_value():
    """At u = 1/2 the scaled discriminant evaluates in closed form."""
    g = PARAMS.gamma
    t = 1.0 / (2.0 * g)
    disc = tilde_discriminant(t, PARAMS)
    scaled = math.pi**2 * math.exp(4.0 * g * t) * disc / (16.0 * I1P0**2)
    expected = -0.5 * (5.0 * math.e**2 + 29.0) + 12.0 * math.e + 1.0 / math.e
    assert scaled == pytest.approx(expected, rel=1e-12)


def test_discriminant_changes_sign_at_frozen_root():
    """Positivity of the truncated family ends at a finite time.

    The sheared quadratic form stays positive definite only up to
    u = DISCRIMINANT_ROOT_U; just beyond it the discriminant is negative
    while both diagonal coefficients are still positive, and the kernel
    scalars degenerate to NaN. The first sheared integral itself changes
    sign a little later, at AT_ROOT_U.
    """
    g = PARAMS.gamma
    eps = 1e-6
    assert tilde_discriminant((DISCRIMINANT_ROOT_U - eps) / g, PARAMS) > 0.0
    assert tilde_discriminant((DISCRIMINANT_ROOT_U + eps) / g, PARAMS) < 0.0
    at, _, ct = uz_tilde((DISCRIMINANT_ROOT_U + 0.01) / g, PARAMS)
    assert at > 0.0 and ct > 0.0
    coeffs = gaussian_params((DISCRIMINANT_ROOT_U + 0.01) / g, PARAMS, dim=1)
    assert math.isnan(coeffs.g_d)
    assert uz_tilde((AT_ROOT_U - 1e-6) / g, PARAMS)[0] > 0.0
    assert uz_tilde((AT_ROOT_U + 1e-6) / g, PARAMS)[0] < 0.0


@given(u=st.floats(min_value=1e-6, max_value=DISCRIMINANT_ROOT_U - 1e-3))
@settings(max_examples=200, deadline=None)
def test_positivity_inside_the_admissible_window(u):
    """Diagonal coefficients and discriminant are positive before the root."""
    t = u / PARAMS.gamma
    at, _, ct = uz_tilde(t, PARAMS)
    assert at > 0.0
    assert ct > 0.0
    assert tilde_discriminant(t, PARAMS) > 0.0


@given(u=st.floats(min_value=1e-4, max_value=0.9))
@settings(max_examples=100, deadline=None)
def test_discriminant_identity_against_product(u):
    """The stable closed form equals 4*At*Ct - Bt^2 where both are healthy."""
    t = u / PARAMS.gamma
    at, bt, ct = uz_tilde(t, PARAMS)
    assert tilde_discriminant(t, PARAMS) == pytest.approx(
        4.0 * at * ct - bt * bt, rel=1e-9)


def test_fourth_derivative_of_first_running_integral():
    """A starts quartically with the predicted fourth derivative at zero.

    The central-difference oracle evaluates at negative offsets, where the
    public entry point refuses; the series branch is an entire function,
    so it provides the analytic continuation directly.
    """
    from wmem.memory_coeffs import _uz_sa

    g = PARAMS.gamma

    def first_integral(t: float) -> float:
        return I1P0 / (2.0 * g * math.pi) * _uz_sa(g * t)

    value = derivative_at(first_integral, 4, h0=0.02)
    assert value == pytest.approx(144.0 * g**3 * I1P0 / math.pi, rel=1e-7)


def test_characteristic_map_closed_forms():
    """The shear map matches its exponential closed forms and is identity at 0."""
    g = PARAMS.gamma
    cmap0 = characteristic_map(0.0, PARAMS)
    assert (cmap0.kappa, cmap0.nu, cmap0.kappa_t, cmap0.nu_t) == (1.0, 0.0, 0.0, 1.0)
    assert cmap0.det == 1.0
    t = 1.7
    cmap = characteristic_map(t, PARAMS)
    assert cmap.kappa == 1.0
    assert cmap.kappa_t == 0.0
    assert cmap.nu == pytest.approx(-math.expm1(-2.0 * g * t) / (2.0 * g), rel=1e-14)
    assert cmap.nu_t == pytest.approx(math.exp(-2.0 * g * t), rel=1e-14)
    assert cmap.lam == 1.0
    # frequency-side generators: forward flow is the inverse shear
    assert cmap.f == pytest.approx(math.exp(2.0 * g * t), rel=1e-14)
    assert cmap.g == pytest.approx(-math.expm1(2.0 * g * t) / (2.0 * g), rel=1e-14)
    assert (cmap.f_t, cmap.g_t) == (0.0, 1.0)


def test_validity_horizon_is_unbounded():
    """The exact-coefficient model has no short-time expansion horizon."""
    assert validity_horizon(PARAMS) == (math.inf, math.inf)


def test_kernel_scalars_satisfy_their_defining_relations():
    """g-parameters reproduce the sheared coefficients they encode."""
    for dim in (1, 2, 3):
        t = 1.2
        co = gaussian_params(t, PARAMS, dim=dim)
        at, bt, ct = uz_tilde(t, PARAMS)
        prod = tilde_discriminant(t, PARAMS)
        assert co.dim == dim
        assert co.g_d == pytest.approx((2.0 * math.pi) ** -dim * prod ** (-dim / 2.0),
                                       rel=1e-13)
        assert co.g_a == pytest.approx(ct / prod, rel=1e-13)
        assert co.g_b == pytest.approx(bt / prod, rel=1e-13)
        assert co.g_c == pytest.approx(at / prod, rel=1e-13)
        # cross identity: 4 g_a g_c - g_b^2 equals 1/prod
        assert 4.0 * co.g_a * co.g_c - co.g_b**2 == pytest.approx(1.0 / prod, rel=1e-12)


def test_kernel_scalars_rejected_at_time_zero():
    with pytest.raises(ValueError, match="singular at initial time"):
        gaussian_params(0.0, PARAMS, dim=1)
    with pytest.raises(ValueError, match="dim"):
        gaussian_params(1.0, PARAMS, dim=4)
