"""Self-consistent potential: periodic Poisson solve from the density and
the pseudo-differential coupling operator applied to a phase-space field.

Sign conventions: the potential solves Delta V = n with the zero mode
removed (neutralizing background on the torus), so Vhat(k) = -nhat(k)/|k|^2
for k != 0 and Vhat(0) = 0.  The coupling operator acts in the velocity
Fourier variable eta as multiplication by

    i (V(x + eta/2) - V(x - eta/2)),

with the shifted potential values obtained from spectral phases, which is
exact for the periodic trigonometric interpolant of V.  One and two
dimensional runs keep the same |k|^{-2} multiplier (a modeling choice for
desk-scale runs, not the free-space Green function of those dimensions).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .phase_grid import PhaseField

__all__ = [
    "Potential",
    "AliasingWarning",
    "solve_poisson",
    "apply_theta",
    "h_kernel",
]


class AliasingWarning(UserWarning):
    """Velocity-frequency shifts wrap the full periodic position cell."""


@dataclass(frozen=True)
class Potential:
    """Zero-mean potential with its spectral gradient on the same grid."""

    values: np.ndarray
    gradient: np.ndarray  # shape (dim,) + position grid
    grad_l2: float


def _wavenumbers(shape: tuple[int, ...], Lx: float) -> list[np.ndarray]:
    return [2.0 * math.pi * scipy.fft.fftfreq(n, d=2.0 * Lx / n)
            for n in shape]


def solve_poisson(n: np.ndarray, Lx: float, attractive: bool = False) -> Potential:
    """Potential of a density on the periodic cell [-Lx, Lx)^d.

    Solves Delta V = n with the mean of n carried by the neutralizing
    background; the gradient comes from the ik multiplier.  ``attractive``
    flips the sign of the source (untested exploratory variant).
    """
    n = np.asarray(n, dtype=float)
    dim = n.ndim
    ks = _wavenumbers(n.shape, Lx)
    k2 = np.zeros(n.shape)
    for axis, k in enumerate(ks):
        shape = [1] * dim
        shape[axis] = n.shape[axis]
        k2 = k2 + (k ** 2).reshape(shape)
    nhat = scipy.fft.fftn(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        vhat = np.where(k2 > 0.0, -nhat / k2, 0.0)
    if attractive:
        vhat = -vhat
    values = scipy.fft.ifftn(vhat).real
    grads = []
    for axis, k in enumerate(ks):
        shape = [1] * dim
        shape[axis] = n.shape[axis]
        grads.append(scipy.fft.ifftn(1j * k.reshape(shape) * vhat).real)
    gradient = np.stack(grads)
    dxv = (2.0 * Lx / n.shape[0]) ** dim
    grad_l2 = math.sqrt(float((gradient ** 2).sum()) * dxv)
    return Potential(values=values, gradient=gradient, grad_l2=grad_l2)


def _shifted_potential(field: PhaseField, vhat: np.ndarray,
                       sign: float) -> np.ndarray:
    """V(x + sign*eta/2) on the phase-space grid from the position-space
    spectrum ``vhat`` (plain fftn of the values), exact for the periodic
    interpolant."""
    d = field.dim
    eta = 2.0 * math.pi * scipy.fft.fftfreq(field.nxi, d=field.dxi)
    k = 2.0 * math.pi * scipy.fft.fftfreq(field.nx, d=field.dx)
    spec = vhat.reshape((1,) * d + vhat.shape).astype(complex)
    for pair in range(d):
        shape = [1] * (2 * d)
        shape[pair] = field.nxi
        shape[d + pair] = field.nx
        spec = spec * np.exp(0.5j * sign * np.outer(eta, k)).reshape(shape)
    return scipy.fft.ifftn(spec, axes=tuple(range(d, 2 * d)))


def _theta_complex(field: PhaseField, V: Potential) -> np.ndarray:
    """Coupling operator before the final real projection."""
    d = field.dim
    xi_axes = tuple(range(d))
    vhat = scipy.fft.fftn(np.asarray(V.values, dtype=float))
    v_plus = _shifted_potential(field, vhat, +1.0)
    v_minus = _shifted_potential(field, vhat, -1.0)
    factor = 1j * (v_plus - v_minus)
    w_eta = scipy.fft.fftn(field.values.astype(complex), axes=xi_axes)
    return scipy.fft.ifftn(factor * w_eta, axes=xi_axes)


def apply_theta(field: PhaseField, V: Potential) -> PhaseField:
    """Apply the nonlinear coupling operator to ``field``.

    The result of the exact operator is real; the grid realization keeps an
    imaginary residue at the roundoff floor, which is dropped.  A warning is
    issued when the largest half-shift eta/2 wraps the full position cell,
    since the shifted-potential evaluation then folds through the periodic
    images.
    """
    eta_max = math.pi / field.dxi
    if 0.5 * eta_max > 2.0 * field.Lx:
        warnings.warn("velocity-frequency shift wraps the position cell",
                      AliasingWarning, stacklevel=2)
    return field.with_values(_theta_complex(field, V).real)


def h_kernel(field: PhaseField, V: Potential) -> np.ndarray:
    """Convolution kernel of the coupling operator on the grid of ``field``
    (whose values are ignored): the inverse velocity-frequency transform of
    i (V(x + eta/2) - V(x - eta/2)), so that apply_theta equals the
    xi-convolution of this kernel with the field.  Diagnostic path for
    cross-validation on tiny grids."""
    d = field.dim
    vhat = scipy.fft.fftn(np.asarray(V.values, dtype=float))
    factor = 1j * (_shifted_potential(field, vhat, +1.0)
                   - _shifted_potential(field, vhat, -1.0))
    # inverse continuum transform (1/2pi)^d integral e^{i xi.eta} ... d eta
    # on the periodic grid: ifftn over the eta axes times (n_eta * d_eta
    # / 2 pi)^d = 1/dxi^d, with the xi-origin phases restored.
    xi_axes = tuple(range(d))
    eta = 2.0 * math.pi * scipy.fft.fftfreq(field.nxi, d=field.dxi)
    xi0 = float(field.xi_axis()[0])
    work = factor.astype(complex)
    for axis in range(d):
        shape = [1] * (2 * d)
        shape[axis] = field.nxi
        work = work * np.exp(1j * eta * xi0).reshape(shape)
    out = scipy.fft.ifftn(work, axes=xi_axes) / field.dxi ** d
    return out.real
