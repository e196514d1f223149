"""Observables, conservation-law residuals, and a-priori-bound monitors
recorded along trajectories.

All quantities are plain grid quadratures of the fields supplied; nothing
here mutates state.  The growth envelope calibrates its unknown constant
empirically on the first accepted steps of a run and then holds it fixed,
so later records can be compared against a frozen bound.
"""

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.fft

from . import phase_grid
from .hartree import Potential
from .phase_grid import PhaseField

__all__ = [
    "DiagnosticsRecord",
    "record",
    "continuity_residual",
    "lieb_thirring_ratio",
    "EnergyWindowEntry",
    "EnergyIdentityResiduals",
    "energy_identity_check",
    "gronwall_envelope",
    "GronwallTracker",
    "write_csv",
    "CSV_HEADER",
]

CSV_HEADER = ("t,Q,E,l11,l12,linf,grad_v_l2,continuity_residual,"
              "lt_ratio_p2,picard_iters,envelope,flags")


@dataclass(frozen=True)
class DiagnosticsRecord:
    t: float
    Q: float
    E: float
    l11: float
    l12: float
    linf: float
    grad_v_l2: float
    continuity_residual: float
    lt_ratio_p2: float
    picard_iters: int
    envelope_value: float
    flags: tuple[str, ...] = ()


def lieb_thirring_ratio(n: np.ndarray, Q: float, E: float, p: float,
                        dx: float = 1.0) -> float:
    """Ratio ||n||_p / (Q^r E^{1-r}) with r = (3-p)/(2p).

    ``dx`` is the grid spacing entering the L^p quadrature.  The estimate
    bounds the density by mass and kinetic energy with an unknown constant,
    so the ratio is monitored for boundedness rather than asserted against
    a value.  Requires 1 <= p <= 3 and E > 0.
    """
    if not 1.0 <= p <= 3.0:
        raise ValueError("exponent p must lie in [1, 3]")
    if E <= 0.0:
        raise ValueError("kinetic energy must be positive")
    n = np.asarray(n, dtype=float)
    r = (3.0 - p) / (2.0 * p)
    norm_p = (float((np.abs(n) ** p).sum()) * dx ** n.ndim) ** (1.0 / p)
    return norm_p / (Q ** r * E ** (1.0 - r))


def _lt_ratio_scaled(field: PhaseField, Q: float, E: float) -> float:
    return lieb_thirring_ratio(phase_grid.density(field), Q, E, 2.0,
                               dx=field.dx)


def record(field: PhaseField, t: float,
           aux: Mapping[str, object] | None = None) -> DiagnosticsRecord:
    """Assemble one diagnostics record from a field and step metadata.

    ``aux`` may carry: potential (Potential), picard_iters (int),
    continuity_residual (float), envelope_value (float), flags (iterable of
    str).  A vanishing mass or energy makes the density ratio undefined;
    the record then stores 0 and carries the ``lt-undefined`` flag.
    """
    aux = dict(aux or {})
    Q = phase_grid.mass(field)
    E = phase_grid.kinetic_energy(field)
    flags = list(aux.get("flags", ()))
    if Q > 0.0 and E > 0.0:
        lt = _lt_ratio_scaled(field, Q, E)
    else:
        lt = 0.0
        flags.append("lt-undefined")
    potential = aux.get("potential")
    grad_l2 = potential.grad_l2 if isinstance(potential, Potential) else 0.0
    return DiagnosticsRecord(
        t=float(t),
        Q=Q,
        E=E,
        l11=phase_grid.lqp_norm(field, 1, 1),
        l12=phase_grid.lqp_norm(field, 1, 2),
        linf=float(np.abs(field.values).max()),
        grad_v_l2=grad_l2,
        continuity_residual=float(aux.get("continuity_residual", 0.0)),
        lt_ratio_p2=lt,
        picard_iters=int(aux.get("picard_iters", 0)),
        envelope_value=float(aux.get("envelope_value", 0.0)),
        flags=tuple(flags),
    )


def _divergence(j: np.ndarray, Lx: float) -> np.ndarray:
    """Spectral divergence of a vector field, components on the leading
    axis over a periodic position grid of half-width Lx."""
    dim = j.shape[0]
    out = np.zeros(j.shape[1:], dtype=complex)
    for axis in range(dim):
        n = j.shape[1 + axis]
        k = 2.0 * math.pi * scipy.fft.fftfreq(n, d=2.0 * Lx / n)
        shape = [1] * dim
        shape[axis] = n
        out = out + scipy.fft.ifftn(
            1j * k.reshape(shape) * scipy.fft.fftn(j[axis]))
    return out.real


def continuity_residual(n_old: np.ndarray, n_new: np.ndarray,
                        j_old: np.ndarray, j_new: np.ndarray,
                        dt: float, Lx: float) -> float:
    """L2 norm of (n(t+dt) - n(t))/dt + div (j(t) + j(t+dt))/2.

    The discrete shadow of the continuity equation; vanishes under joint
    time-step and grid refinement for transport that conserves mass.
    """
    rate = (np.asarray(n_new, float) - np.asarray(n_old, float)) / dt
    div = _divergence(0.5 * (np.asarray(j_old, float)
                             + np.asarray(j_new, float)), Lx)
    resid = rate + div
    dim = resid.ndim
    n = resid.shape[0]
    dxv = (2.0 * Lx / n) ** dim
    return math.sqrt(float((resid ** 2).sum()) * dxv)


@dataclass(frozen=True)
class EnergyWindowEntry:
    """Per-step data needed by the energy-exchange identities."""

    t: float
    density: np.ndarray
    current: np.ndarray  # shape (dim,) + position grid
    potential: Potential
    Lx: float


@dataclass(frozen=True)
class EnergyIdentityResiduals:
    exchange: np.ndarray  # centered-difference residuals, one per interior entry
    virial: np.ndarray  # static-identity residuals, one per entry


def energy_identity_check(window: Sequence[EnergyWindowEntry]) -> EnergyIdentityResiduals:
    """Residuals of the two potential-energy identities along a window.

    Exchange: integral of grad V . j plus half the centered time derivative
    of ||grad V||^2 (zero in the continuum).  Virial: integral of
    n (x . grad V) minus half ||grad V||^2, evaluated per record (exact for
    decaying data in three dimensions; a static identity of the Poisson
    coupling).  Requires at least three entries for the centered stencil.
    """
    if len(window) < 3:
        raise ValueError("need at least three consecutive records")
    exchange = []
    for prev, mid, nxt in zip(window, window[1:], window[2:]):
        dim = mid.current.shape[0]
        n = mid.current.shape[1]
        dxv = (2.0 * mid.Lx / n) ** dim
        flux = float((mid.potential.gradient * mid.current).sum()) * dxv
        ddt = (nxt.potential.grad_l2 ** 2 - prev.potential.grad_l2 ** 2) \
            / (nxt.t - prev.t)
        exchange.append(flux + 0.5 * ddt)
    virial = []
    for entry in window:
        dim = entry.density.ndim
        n = entry.density.shape[0]
        dxv = (2.0 * entry.Lx / n) ** dim
        axis_vals = -entry.Lx + (2.0 * entry.Lx / n) * np.arange(n)
        xdotgrad = np.zeros(entry.density.shape)
        for axis in range(dim):
            shape = [1] * dim
            shape[axis] = n
            xdotgrad = xdotgrad + axis_vals.reshape(shape) \
                * entry.potential.gradient[axis]
        lhs = float((entry.density * xdotgrad).sum()) * dxv
        virial.append(lhs - 0.5 * entry.potential.grad_l2 ** 2)
    return EnergyIdentityResiduals(exchange=np.array(exchange),
                                   virial=np.array(virial))


def gronwall_envelope(initial_norm_sum: float, lam_hat: float) -> float:
    """Envelope value (||w0||_{1,1} + ||w0||_{1,2}) e^{lam_hat} for an
    accumulated growth exponent lam_hat (clipped to avoid overflow)."""
    return initial_norm_sum * math.exp(min(lam_hat, 500.0))


class GronwallTracker:
    """Running growth bound for the L^{1,1} + L^{1,2} norm sum.

    The growth functional integrates Q + Q^{1/4} E^{3/4} (the density-norm
    bound with p = 2 drives the nonlinear term), and the unknown
    multiplicative constant is calibrated to dominate the observed growth
    over the first ``calibration_steps`` accepted steps with a safety
    margin, then frozen.  Symmetric initial data start with second-order
    norm growth, which makes the early-window estimate of the constant
    low by roughly t_end/t_window; the default margin absorbs that.
    """

    def __init__(self, initial_norm_sum: float, calibration_steps: int = 10,
                 margin: float = 12.0) -> None:
        self.initial = float(initial_norm_sum)
        self.calibration_steps = calibration_steps
        self.margin = margin
        self.constant = 0.0
        self._steps_seen = 0
        self._integral = 0.0
        self._prev_t: float | None = None
        self._prev_rate: float | None = None

    def update(self, t: float, Q: float, E: float, norm_sum: float) -> float:
        """Advance the accumulated functional to time t and return the
        envelope value there; calibration happens on the early steps."""
        rate = max(Q, 0.0) + max(Q, 0.0) ** 0.25 * max(E, 0.0) ** 0.75
        if self._prev_t is not None:
            self._integral += 0.5 * (rate + self._prev_rate) * (t - self._prev_t)
            self._steps_seen += 1
        self._prev_t = t
        self._prev_rate = rate
        if (self._steps_seen <= self.calibration_steps
                and self._integral > 0.0 and self.initial > 0.0
                and norm_sum > self.initial):
            needed = math.log(norm_sum / self.initial) / self._integral
            self.constant = max(self.constant, self.margin * needed)
        return gronwall_envelope(self.initial, self.constant * self._integral)


def _format_value(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(records: Sequence[DiagnosticsRecord], path: str) -> None:
    """Write records in the documented schema (17 significant digits,
    flags joined with '|'); deterministic byte output for identical runs."""
    lines = [CSV_HEADER]
    for rec in records:
        lines.append(",".join([
            _format_value(rec.t),
            _format_value(rec.Q),
            _format_value(rec.E),
            _format_value(rec.l11),
            _format_value(rec.l12),
            _format_value(rec.linf),
            _format_value(rec.grad_v_l2),
            _format_value(rec.continuity_residual),
            _format_value(rec.lt_ratio_p2),
            str(int(rec.picard_iters)),
            _format_value(rec.envelope_value),
            "|".join(rec.flags),
        ]))
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
