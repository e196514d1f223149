"""Phase-space relaxation dynamics with memory-driven Gaussian smoothing
and self-consistent Poisson coupling.

The package splits into closed-form coefficient evaluation
(:mod:`wmem.memory_coeffs`), the exact spectral propagator
(:mod:`wmem.propagator`), grid bookkeeping (:mod:`wmem.phase_grid`), the
Poisson force term (:mod:`wmem.hartree`), fixed-point time stepping
(:mod:`wmem.stepper`), run instrumentation (:mod:`wmem.diagnostics`),
slow independent checks (:mod:`wmem.reference_oracle`), and the batch
front end (:mod:`wmem.cli`).
"""

from .memory_coeffs import (
    CharacteristicMap,
    KernelCoeffs,
    Model,
    ModelParams,
    characteristic_map,
    gaussian_params,
    hpz_ABC,
    hpz_memory,
    hpz_tilde,
    tilde_discriminant,
    uz_ABC,
    uz_memory,
    uz_tilde,
    validity_horizon,
)
from .phase_grid import PhaseField
from .propagator import apply_propagator, eval_G0, propagated_moments
from .hartree import Potential, apply_theta, solve_poisson
from .stepper import RunResult, StepConfig, StepResult, run, step
from .diagnostics import DiagnosticsRecord

__all__ = [
    "CharacteristicMap",
    "KernelCoeffs",
    "Model",
    "ModelParams",
    "characteristic_map",
    "gaussian_params",
    "hpz_ABC",
    "hpz_memory",
    "hpz_tilde",
    "tilde_discriminant",
    "uz_ABC",
    "uz_memory",
    "uz_tilde",
    "validity_horizon",
    "PhaseField",
    "apply_propagator",
    "eval_G0",
    "propagated_moments",
    "Potential",
    "apply_theta",
    "solve_poisson",
    "RunResult",
    "StepConfig",
    "StepResult",
    "run",
    "step",
    "DiagnosticsRecord",
]
