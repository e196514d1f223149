"""Closed-form time coefficients of the two linear phase-space flows.

Two bath models are supported. The UZ model (zero-temperature bath,
exponential relaxation; damping rate ``gamma``, spectral cutoff ``cutoff``)
has exponential-polynomial coefficients valid for all t >= 0. The HPZ model
(thermal oscillator bath; cutoff ``cutoff``, inverse temperature ``beta``,
oscillator frequency ``omega``, coupling strength ``delta``) has short-time
polynomial coefficients valid up to a finite horizon t_star.

Conventions. In Fourier variables (y, eta) the linear flow acts by
resampling along an affine characteristic map followed by multiplication
with exp(-At|y|^2 - Bt y.eta - Ct|eta|^2). The real-space kernel of that
multiplier is g_d exp(-g_a|x|^2 + g_b x.xi - g_c|xi|^2). The closed forms
of the UZ coefficients are O(u^3..u^6) residues of O(1) exponentials in
u = gamma*t, so below u = 0.5 evaluation switches to the frozen Taylor
series of ``_series`` (both routes agree to ~1e-13 relative at the switch).
The HPZ forms are plain polynomials and evaluate stably as written; the
discriminant-type combinations that do cancel are expanded once
symbolically and evaluated from their explicit coefficients.
"""

import enum
import math
from dataclasses import dataclass

from . import _series

__all__ = [
    "Model",
    "ModelParams",
    "I1Data",
    "KernelCoeffs",
    "CharacteristicMap",
    "uz_memory",
    "uz_ABC",
    "uz_tilde",
    "hpz_memory",
    "hpz_ABC",
    "hpz_tilde",
    "tilde_discriminant",
    "gaussian_params",
    "characteristic_map",
    "validity_horizon",
]


class Model(enum.Enum):
    """Bath model selector."""

    UZ = "uz"
    HPZ = "hpz"


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of a bath model.

    The UZ model reads ``gamma`` (damping rate) and ``cutoff`` (bath
    spectral cutoff) and ignores the rest; the HPZ model reads ``cutoff``,
    ``beta`` (inverse bath temperature), ``omega`` (oscillator frequency)
    and ``delta`` (coupling strength) and ignores ``gamma``.
    """

    model: Model
    gamma: float = 1.0
    cutoff: float = 1.0
    beta: float = 1.0
    omega: float = 0.0
    delta: float = 1.0

    def __post_init__(self) -> None:
        for name in ("gamma", "cutoff", "beta", "delta"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.omega < 0.0:
            raise ValueError("omega must be nonnegative")


@dataclass(frozen=True)
class I1Data:
    """Bath-integral constant of the UZ model.

    ``i1p0`` is the t=0 slope of the bath memory integral,
    (1/2) log(1 + cutoff^2 / (4 gamma^2)); it is positive and multiplies
    every UZ coefficient.
    """

    i1p0: float

    @classmethod
    def from_params(cls, p: ModelParams) -> "I1Data":
        r = p.cutoff / (2.0 * p.gamma)
        return cls(i1p0=0.5 * math.log1p(r * r))


@dataclass(frozen=True)
class KernelCoeffs:
    """All time-dependent scalars of the propagator at one time.

    ``mem_a`` .. ``mem_d`` are the memory coefficients of the master
    equation (frequency shift, damping, momentum diffusion, cross
    diffusion); for UZ the first two are the constants 0 and 2*gamma.
    ``A``, ``B``, ``C`` are their running integrals against the
    characteristic flow, ``At``, ``Bt``, ``Ct`` the sheared variants that
    enter the Fourier multiplier, and ``D = 4AC - B^2``. ``g_a`` .. ``g_d``
    parameterize the real-space kernel
    g_d exp(-g_a|x|^2 + g_b x.xi - g_c|xi|^2) in ``dim`` dimensions, with
    g_d = (2 pi)^{-dim} (4 At Ct - Bt^2)^{-dim/2}. ``beyond_horizon`` is
    set when an HPZ evaluation lies past twice the validity horizon.
    """

    t: float
    dim: int
    mem_a: float
    mem_b: float
    mem_c: float
    mem_d: float
    A: float
    B: float
    C: float
    At: float
    Bt: float
    Ct: float
    D: float
    g_a: float
    g_b: float
    g_c: float
    g_d: float
    beyond_horizon: bool = False


@dataclass(frozen=True)
class CharacteristicMap:
    """Affine phase-space flow coefficients at one time.

    The Fourier transform of the propagated state samples the transform of
    the input at (kappa*y + kappa_t*eta, nu*y + nu_t*eta). ``f``, ``g``,
    ``f_t``, ``g_t`` solve the frequency-side linear system generating the
    flow, and ``lam = 1 - nu*kappa_t/kappa^2`` is the invertibility margin
    tracked by the step-size analysis. For UZ the map is a shear with
    kappa = 1 and kappa_t = 0; ``m1`` (position shift per velocity) and
    ``m2`` (velocity scale) name its two nontrivial entries.
    """

    model: Model
    t: float
    nu: float
    kappa: float
    nu_t: float
    kappa_t: float
    f: float
    g: float
    f_t: float
    g_t: float
    lam: float
    beyond_horizon: bool = False

    @property
    def m1(self) -> float:
        return self.nu

    @property
    def m2(self) -> float:
        return self.nu_t

    @property
    def det(self) -> float:
        return self.kappa * self.nu_t - self.nu * self.kappa_t


def _check_time(t: float) -> None:
    if t < 0.0:
        raise ValueError("time must be nonnegative")


# ---------------------------------------------------------------------------
# UZ model: exponential forms in u = gamma*t, all proportional to i1p0.

def _uz_sa(u: float) -> float:
    if u < _series.U_SWITCH:
        return _series.horner(_series.SERIES_A, u)
    e2 = math.exp(2.0 * u)
    return 4.0 / e2 + (4.0 * u - 10.0) * e2 + e2 * e2 + 20.0 * u - 4.0 * u * u + 5.0


def _uz_sb(u: float) -> float:
    if u < _series.U_SWITCH:
        return _series.horner(_series.SERIES_B, u)
    e2 = math.exp(2.0 * u)
    return (2.0 * u - 6.0) * e2 + e2 * e2 + 6.0 * u + 5.0


def _uz_sat(u: float) -> float:
    if u < _series.U_SWITCH:
        return _series.horner(_series.SERIES_AT, u)
    em2 = math.exp(-2.0 * u)
    return 10.0 * em2 + em2 * em2 - 11.0 + 4.0 * u * (3.0 * em2 + 3.0 - u)


def _uz_sbt(u: float) -> float:
    if u < _series.U_SWITCH:
        return _series.horner(_series.SERIES_BT, u)
    em2 = math.exp(-2.0 * u)
    return 2.0 * em2 + em2 * em2 - 3.0 + 2.0 * u * (3.0 * em2 + 1.0)


def _uz_sh(u: float) -> float:
    if u < _series.U_SWITCH:
        return _series.horner(_series.SERIES_H, u)
    e2 = math.exp(2.0 * u)
    em2 = 1.0 / e2
    return ((6.0 * u - 2.0 * u * u - 5.0) * e2 * e2
            + (4.0 * u - 4.0 * u * u + 11.0) * e2
            + em2 - 10.0 * u * (1.0 + u) - 7.0)


def uz_memory(t: float, p: ModelParams) -> tuple[float, float]:
    """Momentum- and cross-diffusion memory coefficients of the UZ flow.

    Returns (mem_c, mem_d) with
    mem_c = (8 gamma^2/pi) i1p0 (1 - e^{-2 gamma t}) and
    mem_d = (4 gamma/pi) i1p0 (e^{-2 gamma t} + 2 gamma t - 1). The second
    form cancels catastrophically near t = 0 and switches to its series.
    """
    _check_time(t)
    g = p.gamma
    i1 = I1Data.from_params(p).i1p0
    u = g * t
    mem_c = (8.0 * g * g / math.pi) * i1 * -math.expm1(-2.0 * u)
    if u < _series.U_SWITCH:
        smd = _series.horner(_series.SERIES_MD, u)
    else:
        smd = math.exp(-2.0 * u) + 2.0 * u - 1.0
    mem_d = (4.0 * g / math.pi) * i1 * smd
    return mem_c, mem_d


def uz_ABC(t: float, p: ModelParams) -> tuple[float, float, float]:
    """Running coefficient integrals (A, B, C) of the UZ flow.

    A and B are O(u^4) and O(u^3) residues of exponentials and switch to
    their series below u = 0.5; C = (2 gamma/pi) i1p0 (e^{2 gamma t} - 1)^2
    is cancellation-free as written.
    """
    _check_time(t)
    g = p.gamma
    i1 = I1Data.from_params(p).i1p0
    u = g * t
    a = i1 / (2.0 * g * math.pi) * _uz_sa(u)
    b = -(2.0 * i1 / math.pi) * _uz_sb(u)
    c = (2.0 * g / math.pi) * i1 * math.expm1(2.0 * u) ** 2
    return a, b, c


def uz_tilde(t: float, p: ModelParams) -> tuple[float, float, float]:
    """Sheared coefficient integrals (At, Bt, Ct) of the UZ flow.

    These are the untilded integrals composed with the shear that removes
    the velocity drift: At = A + m1 B + m1^2 C, Bt = m2 (B + 2 m1 C),
    Ct = m2^2 C, evaluated in closed form (series below u = 0.5).
    """
    _check_time(t)
    g = p.gamma
    i1 = I1Data.from_params(p).i1p0
    u = g * t
    at = i1 / (2.0 * g * math.pi) * _uz_sat(u)
    bt = -(2.0 * i1 / math.pi) * _uz_sbt(u)
    ct = (2.0 * g / math.pi) * i1 * math.expm1(-2.0 * u) ** 2
    return at, bt, ct


def _uz_tilde_product(t: float, p: ModelParams) -> float:
    """4 At Ct - Bt^2 for UZ through its cancellation-free expansion."""
    u = p.gamma * t
    i1 = I1Data.from_params(p).i1p0
    return (16.0 / math.pi**2) * i1 * i1 * math.exp(-4.0 * u) * _uz_sh(u)


def _uz_discriminant(t: float, p: ModelParams) -> float:
    """D = 4AC - B^2 for UZ; equals e^{4 gamma t} (4 At Ct - Bt^2)."""
    u = p.gamma * t
    i1 = I1Data.from_params(p).i1p0
    return (16.0 / math.pi**2) * i1 * i1 * _uz_sh(u)


# ---------------------------------------------------------------------------
# HPZ model: polynomial forms in t, valid on a finite horizon.

def hpz_memory(t: float, p: ModelParams) -> tuple[float, float, float, float]:
    """Memory coefficients (a, b, c, d) of the HPZ flow.

    Short-time polynomials: a is the frequency shift, b the damping, c the
    momentum diffusion and d the cross diffusion produced by the thermal
    oscillator bath.
    """
    _check_time(t)
    ga, w, dl, be = p.cutoff, p.omega, p.delta, p.beta
    pref = dl * math.pi * ga
    a = (pref * ga / 4.0) * t * (2.0 - ga * t)
    b = (pref * ga / 12.0) * t * t * (3.0 - 2.0 * ga * t)
    c = (pref / (6.0 * be)) * t * (6.0 - 3.0 * ga * t + (ga * ga - w * w) * t * t)
    d = -(pref / (24.0 * be)) * t * t * (12.0 - 8.0 * ga * t + (3.0 * ga * ga - w * w) * t * t)
    return a, b, c, d


def hpz_ABC(t: float, p: ModelParams) -> tuple[float, float, float]:
    """Running coefficient integrals (A, B, C) of the HPZ flow."""
    _check_time(t)
    ga, w, dl, be = p.cutoff, p.omega, p.delta, p.beta
    pp = dl * math.pi * ga / (2.0 * be)
    q = dl * math.pi * ga * ga
    g_a = 0.25 - ga * t / 15.0 + (ga * ga - 3.0 * w * w) * t * t / 72.0 + q * t**3 / 24.0
    g_b = -1.0 + ga * t / 3.0 - (ga * ga - 3.0 * w * w) * t * t / 12.0 - q * t**3 / 6.0
    g_c = 1.0 - ga * t / 3.0 + (ga * ga - 4.0 * w * w) * t * t / 12.0 + q * t**3 / 6.0
    return pp * t**4 * g_a, pp * t**3 * g_b, pp * t**2 * g_c


def _hpz_chi(t: float, p: ModelParams) -> float:
    """Normalization chi(t) = (1 + (delta pi cutoff^2/12) t^3 (2 - cutoff t))^2."""
    q = p.delta * math.pi * p.cutoff * p.cutoff
    inner = 1.0 + (q / 12.0) * t**3 * (2.0 - p.cutoff * t)
    return inner * inner


def hpz_tilde(t: float, p: ModelParams) -> tuple[float, float, float]:
    """Sheared coefficient integrals (At, Bt, Ct) of the HPZ flow.

    Short-time forms (delta pi cutoff / 2 beta) t^k F(t) / chi(t) with
    polynomial numerators F. Their pairwise discriminant combination is
    exposed separately as ``tilde_discriminant``, which evaluates the
    consistent closed form rather than the product of these truncations.
    """
    _check_time(t)
    ga, w, dl, be = p.cutoff, p.omega, p.delta, p.beta
    pp = dl * math.pi * ga / (2.0 * be)
    q = dl * math.pi * ga * ga
    f_a = 0.25 - ga * t / 15.0 + (ga * ga - 3.0 * w * w) * t * t / 72.0 + q * t**3 / 12.0
    f_b = 1.0 - ga * t / 3.0 + (ga * ga - 3.0 * w * w) * t * t / 12.0 + q * t**3 / 3.0
    f_c = 1.0 - ga * t / 3.0 + (ga * ga - 4.0 * w * w) * t * t / 12.0 + q * t**3 / 3.0
    chi = _hpz_chi(t, p)
    return pp * t**4 * f_a / chi, pp * t**3 * f_b / chi, pp * t**2 * f_c / chi


def _hpz_discriminant(t: float, p: ModelParams) -> float:
    """D = 4AC - B^2 for HPZ via its exact symbolic expansion.

    The direct product cancels its first six Taylor orders; the expanded
    degree-5 polynomial below is exact and keeps full precision at small t.
    """
    ga, w, dl, be = p.cutoff, p.omega, p.delta, p.beta
    pp = dl * math.pi * ga / (2.0 * be)
    pd = math.pi * dl
    poly = (ga / 15.0
            + t * (-ga * ga / 20.0
                   + t * (2.0 * ga**3 / 135.0 - ga * w * w / 45.0
                          + t * (-ga**4 / 432.0 + pd * ga**3 / 90.0
                                 + ga * ga * w * w / 108.0 - w**4 / 144.0
                                 + t * (-pd * ga**4 / 216.0)))))
    return pp * pp * t**7 * poly


def _hpz_tilde_product(t: float, p: ModelParams) -> float:
    """4 At Ct - Bt^2 for HPZ via its exact symbolic expansion."""
    ga, w, dl, be = p.cutoff, p.omega, p.delta, p.beta
    pp = dl * math.pi * ga / (2.0 * be)
    pd = math.pi * dl
    poly = (ga / 15.0
            + t * (-ga * ga / 20.0
                   + t * (2.0 * ga**3 / 135.0 - ga * w * w / 45.0
                          + t * (-ga**4 / 432.0 + pd * ga**3 / 45.0
                                 + ga * ga * w * w / 108.0 - w**4 / 144.0
                                 + t * (-pd * ga**4 / 108.0)))))
    chi = _hpz_chi(t, p)
    return pp * pp * t**7 * poly / (chi * chi)


def tilde_discriminant(t: float, p: ModelParams) -> float:
    """Stable closed form of the discriminant 4 At Ct - Bt^2.

    For UZ this equals the product of the tilde coefficients identically:
    (16/pi^2) i1p0^2 e^{-4 gamma t} H(u) with H the sixth-order residue
    polynomial. For HPZ the coefficients are short-time truncations and
    their literal product is not itself truncation-consistent; the
    consistent value, which all reciprocal scalings and the kernel
    normalization track, is
    delta^2 pi^2 cutoff^3 t^7 / (60 beta^2 chi(t)). The literal product
    differs from it by a relative O(cutoff*t); see the tests.
    """
    _check_time(t)
    if p.model is Model.UZ:
        return _uz_tilde_product(t, p)
    ga, dl, be = p.cutoff, p.delta, p.beta
    return (dl * dl * math.pi**2 * ga**3) * t**7 / (60.0 * be * be * _hpz_chi(t, p))


# ---------------------------------------------------------------------------
# Assembled per-time structures.

def gaussian_params(t: float, p: ModelParams, dim: int = 3) -> KernelCoeffs:
    """All propagator scalars at time t in ``dim`` spatial dimensions.

    Raises ValueError at t = 0, where the kernel degenerates to a point
    mass and the Gaussian parameterization is singular. For HPZ, times past
    twice the validity horizon set ``beyond_horizon`` instead of raising.

    The real-space parameters (g_a, g_b, g_c, g_d) exist only while the
    sheared quadratic form is positive definite; the zero-temperature model
    leaves that regime at gamma t ~ 0.963, after which they are NaN.  The
    Fourier-side coefficients remain valid for all t.
    """
    _check_time(t)
    if t == 0.0:
        raise ValueError("propagator singular at initial time")
    if dim not in (1, 2, 3):
        raise ValueError("dim must be 1, 2, or 3")
    beyond = False
    if p.model is Model.UZ:
        mem_c, mem_d = uz_memory(t, p)
        mem_a, mem_b = 0.0, 2.0 * p.gamma
        a, b, c = uz_ABC(t, p)
        at, bt, ct = uz_tilde(t, p)
        disc = _uz_discriminant(t, p)
        tilde_prod = _uz_tilde_product(t, p)
    else:
        mem_a, mem_b, mem_c, mem_d = hpz_memory(t, p)
        a, b, c = hpz_ABC(t, p)
        at, bt, ct = hpz_tilde(t, p)
        disc = _hpz_discriminant(t, p)
        tilde_prod = _hpz_tilde_product(t, p)
        t_star, _ = validity_horizon(p)
        beyond = t > 2.0 * t_star
    if tilde_prod > 0.0:
        g_d = (2.0 * math.pi) ** (-dim) * tilde_prod ** (-0.5 * dim)
        g_a, g_b, g_c = ct / tilde_prod, bt / tilde_prod, at / tilde_prod
    else:
        g_a = g_b = g_c = g_d = math.nan
    return KernelCoeffs(
        t=t, dim=dim,
        mem_a=mem_a, mem_b=mem_b, mem_c=mem_c, mem_d=mem_d,
        A=a, B=b, C=c, At=at, Bt=bt, Ct=ct, D=disc,
        g_a=g_a, g_b=g_b, g_c=g_c, g_d=g_d, beyond_horizon=beyond,
    )


def characteristic_map(t: float, p: ModelParams) -> CharacteristicMap:
    """Affine characteristic flow at time t (identity at t = 0)."""
    _check_time(t)
    if p.model is Model.UZ:
        g = p.gamma
        u = g * t
        m2 = math.exp(-2.0 * u)
        m1 = -math.expm1(-2.0 * u) / (2.0 * g)
        return CharacteristicMap(
            model=p.model, t=t,
            nu=m1, kappa=1.0, nu_t=m2, kappa_t=0.0,
            f=math.exp(2.0 * u), g=-math.expm1(2.0 * u) / (2.0 * g),
            f_t=0.0, g_t=1.0, lam=1.0,
        )
    ga, w, dl = p.cutoff, p.omega, p.delta
    q = dl * math.pi * ga * ga
    w2 = w * w
    nu = t * (1.0 - w2 * t * t / 6.0 + q * t**3 / 24.0 - q * ga * t**4 / 120.0)
    kappa = 1.0 - w2 * t * t / 2.0 + q * t**3 / 6.0 - q * ga * t**4 / 24.0
    kappa_t = t * (-w2 + q * t / 2.0 - q * ga * t * t / 6.0)
    f = 1.0 - w2 * t * t / 2.0 + q * t**3 / 3.0 - q * ga * t**4 / 8.0
    g = t * (-1.0 + w2 * t * t / 6.0 - 5.0 * q * t**3 / 24.0 + 11.0 * q * ga * t**4 / 120.0)
    f_t = t * (w2 - q * t / 2.0 + q * ga * t * t / 6.0)
    lam = 1.0 - nu * kappa_t / (kappa * kappa)
    t_star, _ = validity_horizon(p)
    return CharacteristicMap(
        model=p.model, t=t,
        nu=nu, kappa=kappa, nu_t=kappa, kappa_t=kappa_t,
        f=f, g=g, f_t=f_t, g_t=f, lam=lam,
        beyond_horizon=t > 2.0 * t_star,
    )


def validity_horizon(p: ModelParams) -> tuple[float, float]:
    """Times (t_star, sqrt(3)*t_star) bounding the short-time expansions.

    UZ coefficients are exact at all times, so both entries are +inf. For
    HPZ, t_star solves the quadratic balance of the frequency and coupling
    terms in the flow invertibility margin.
    """
    if p.model is Model.UZ:
        return math.inf, math.inf
    r = p.delta * math.pi * p.cutoff
    w2 = p.omega * p.omega
    t_star = math.sqrt((math.sqrt(w2 + r) - p.omega) / r)
    return t_star, math.sqrt(3.0) * t_star
