"""Batch front end: config parsing, presets, run orchestration, and the
CSV/snapshot output artifacts.

Config sources layer as preset < file < command-line flags, expanded before
validation.  Config files hold ``key=value`` pairs (one or more per line,
``#`` starts a comment).  Identical configs produce byte-identical CSV
output; the worker count only parallelizes transforms and never changes
reduction order.
"""

import argparse
import math
import os
import struct
import sys
from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.fft

from . import diagnostics, stepper
from .memory_coeffs import Model, ModelParams
from .phase_grid import PhaseField

__all__ = [
    "RunConfig",
    "parse_config",
    "build_initial_field",
    "write_snapshot",
    "read_snapshot",
    "main",
]

_MAGIC = b"WMEM"
_HEADER = "<4sIIIIddd"  # magic, version, dim, nx, nxi, Lx, Lxi, t


@dataclass(frozen=True)
class RunConfig:
    model: Model
    params: ModelParams
    dim: int
    nx: int
    nxi: int
    Lx: float
    Lxi: float
    dt: float
    t_end: float
    picard_tol: float
    picard_max: int
    quad_nodes: int
    nonlinear: bool
    sigma_x: float
    sigma_xi: float
    mass: float
    csv: str | None
    snapshot: str | None
    snapshot_stride: int
    threads: int
    preset: str | None


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


_SCHEMA: dict[str, type | object] = {
    "model": str,
    "gamma": float,
    "cutoff": float,
    "beta": float,
    "omega": float,
    "delta": float,
    "dim": int,
    "nx": int,
    "nxi": int,
    "Lx": float,
    "Lxi": float,
    "dt": float,
    "t_end": float,
    "picard_tol": float,
    "picard_max": int,
    "quad_nodes": int,
    "nonlinear": _parse_bool,
    "sigma_x": float,
    "sigma_xi": float,
    "mass": float,
    "csv": str,
    "snapshot": str,
    "snapshot_stride": int,
    "threads": int,
}

_DEFAULTS: dict[str, object] = {
    "omega": 0.0,
    "delta": 1.0,
    "dim": 1,
    "nx": 64,
    "nxi": 64,
    "Lx": 8.0,
    "Lxi": 8.0,
    "dt": 0.015625,
    "t_end": 1.0,
    "picard_tol": 1e-10,
    "picard_max": 25,
    "quad_nodes": 2,
    "nonlinear": True,
    "sigma_x": 1.0,
    "sigma_xi": 1.0,
    "mass": 1.0,
    "snapshot_stride": 0,
}

PRESETS: dict[str, dict[str, object]] = {
    "uz-linear-gaussian": {
        "model": "uz", "gamma": 0.5, "cutoff": 0.2, "dim": 1,
        "nx": 128, "nxi": 128, "Lx": 8.0, "Lxi": 8.0,
        "dt": 0.015625, "t_end": 1.0, "nonlinear": False,
        "sigma_x": 1.0, "sigma_xi": 1.0, "mass": 1.0,
    },
    "uz-hartree-gaussian": {
        "model": "uz", "gamma": 0.5, "cutoff": 0.2, "dim": 1,
        "nx": 128, "nxi": 128, "Lx": 8.0, "Lxi": 8.0,
        "dt": 0.015625, "t_end": 1.0, "nonlinear": True,
        "sigma_x": 1.0, "sigma_xi": 1.0, "mass": 1.0,
    },
    "hpz-linear-gaussian": {
        "model": "hpz", "cutoff": 0.1, "beta": 0.5, "delta": 1.0,
        "omega": 0.05, "dim": 1, "nx": 64, "nxi": 64, "Lx": 8.0,
        "Lxi": 8.0, "dt": 0.015625, "t_end": 1.0, "nonlinear": False,
        "sigma_x": 1.0, "sigma_xi": 1.0, "mass": 1.0,
    },
}


def _read_config_file(path: str) -> dict[str, object]:
    values: dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            for token in line.split():
                if "=" not in token:
                    raise ValueError(
                        f"{path}:{lineno}: expected key=value, got {token!r}")
                key, text = token.split("=", 1)
                key = key.strip()
                if key not in _SCHEMA:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    values[key] = _SCHEMA[key](text.strip())
                except ValueError as exc:
                    raise ValueError(
                        f"{path}:{lineno}: invalid value for {key!r}: "
                        f"{text.strip()!r}") from exc
    return values


def _default_threads() -> int:
    env = os.environ.get("WMEM_THREADS")
    if env is not None:
        return max(1, int(env))
    return os.cpu_count() or 1


def parse_config(file: str | None = None,
                 overrides: Mapping[str, object] | None = None,
                 preset: str | None = None) -> RunConfig:
    """Assemble and validate a run configuration.

    Layering: preset values, then the config file, then explicit overrides
    (already-typed values, e.g. from command-line flags).
    """
    values: dict[str, object] = dict(_DEFAULTS)
    if preset is not None:
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; available: "
                             + ", ".join(sorted(PRESETS)))
        values.update(PRESETS[preset])
    if file is not None:
        values.update(_read_config_file(file))
    for key, val in (overrides or {}).items():
        if key not in _SCHEMA:
            raise ValueError(f"unknown key {key!r}")
        if val is not None:
            values[key] = val

    if "model" not in values:
        raise ValueError("missing required key 'model'")
    model = Model(str(values["model"]).lower())
    required = {Model.UZ: ("gamma", "cutoff"),
                Model.HPZ: ("cutoff", "beta")}[model]
    for key in required:
        if key not in values:
            raise ValueError(
                f"model={model.value} requires key {key!r}")
    params = ModelParams(
        model=model,
        gamma=float(values.get("gamma", 1.0)),
        cutoff=float(values["cutoff"]),
        beta=float(values.get("beta", 1.0)),
        omega=float(values.get("omega", 0.0)),
        delta=float(values.get("delta", 1.0)),
    )
    for key in ("dt", "t_end", "Lx", "Lxi", "sigma_x", "sigma_xi",
                "picard_tol"):
        if float(values[key]) <= 0.0:
            raise ValueError(f"key {key!r} must be positive")
    for key in ("nx", "nxi", "picard_max", "quad_nodes"):
        if int(values[key]) < 1:
            raise ValueError(f"key {key!r} must be at least 1")
    if float(values["mass"]) < 0.0:
        raise ValueError("key 'mass' must be nonnegative")
    if int(values.get("snapshot_stride", 0)) < 0:
        raise ValueError("key 'snapshot_stride' must be nonnegative")
    dim = int(values["dim"])
    if dim not in (1, 2, 3):
        raise ValueError("key 'dim' must be 1, 2, or 3")
    return RunConfig(
        model=model,
        params=params,
        dim=dim,
        nx=int(values["nx"]),
        nxi=int(values["nxi"]),
        Lx=float(values["Lx"]),
        Lxi=float(values["Lxi"]),
        dt=float(values["dt"]),
        t_end=float(values["t_end"]),
        picard_tol=float(values["picard_tol"]),
        picard_max=int(values["picard_max"]),
        quad_nodes=int(values["quad_nodes"]),
        nonlinear=bool(values["nonlinear"]),
        sigma_x=float(values["sigma_x"]),
        sigma_xi=float(values["sigma_xi"]),
        mass=float(values["mass"]),
        csv=values.get("csv"),
        snapshot=values.get("snapshot"),
        snapshot_stride=int(values.get("snapshot_stride", 0)),
        threads=int(values.get("threads", _default_threads())),
        preset=preset,
    )


def build_initial_field(config: RunConfig) -> PhaseField:
    """Centered Gaussian initial state of total mass ``config.mass`` with
    the configured position/velocity widths."""
    sx, sxi = config.sigma_x, config.sigma_xi
    amp = config.mass / (2.0 * math.pi * sx * sxi) ** config.dim

    def gauss(x, xi):
        if config.dim == 1:
            q = x ** 2 / sx ** 2 + xi ** 2 / sxi ** 2
        else:
            q = (x ** 2).sum(axis=0) / sx ** 2 + (xi ** 2).sum(axis=0) / sxi ** 2
        return amp * np.exp(-0.5 * q)

    return PhaseField.from_function(gauss, config.dim, config.nx, config.nxi,
                                    config.Lx, config.Lxi)


def write_snapshot(field: PhaseField, path: str) -> None:
    """Binary state dump: magic "WMEM", u32 version=1, u32 dim, u32 nx,
    u32 nxi, f64 Lx, f64 Lxi, f64 t, then the values in storage order as
    little-endian f64."""
    header = struct.pack(_HEADER, _MAGIC, 1, field.dim, field.nx, field.nxi,
                         field.Lx, field.Lxi, field.time)
    with open(path, "wb") as handle:
        handle.write(header)
        handle.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())


def read_snapshot(path: str) -> PhaseField:
    """Inverse of write_snapshot."""
    with open(path, "rb") as handle:
        head = handle.read(struct.calcsize(_HEADER))
        magic, version, dim, nx, nxi, Lx, Lxi, t = struct.unpack(_HEADER, head)
        if magic != _MAGIC or version != 1:
            raise ValueError(f"{path}: not a version-1 snapshot")
        count = nxi ** dim * nx ** dim
        data = np.frombuffer(handle.read(8 * count), dtype="<f8")
    values = data.reshape((nxi,) * dim + (nx,) * dim).astype(float)
    return PhaseField(dim=dim, nx=nx, nxi=nxi, Lx=Lx, Lxi=Lxi,
                      values=values, time=t)


def _snapshot_path(base: str, index: int) -> str:
    root, ext = os.path.splitext(base)
    return f"{root}_{index:04d}{ext}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wmem",
        description="Phase-space relaxation runs with Poisson coupling")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--preset", help="named scenario: "
                        + ", ".join(sorted(PRESETS)))
    for key in _SCHEMA:
        parser.add_argument(f"--{key}", type=str, default=None,
                            help=f"override config key {key}")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Entry point; exit status 0 on completion, 2 on horizon clamp,
    3 on divergence, 1 on configuration or I/O errors."""
    args = _build_parser().parse_args(argv)
    overrides: dict[str, object] = {}
    for key, caster in _SCHEMA.items():
        raw = getattr(args, key)
        if raw is not None:
            try:
                overrides[key] = caster(raw)
            except ValueError as exc:
                print(f"error: flag --{key}: {exc}", file=sys.stderr)
                return 1
    try:
        config = parse_config(args.config, overrides, args.preset)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    initial = build_initial_field(config)
    cfg = stepper.StepConfig(dt=config.dt, picard_tol=config.picard_tol,
                             picard_max=config.picard_max,
                             quad_nodes=config.quad_nodes,
                             nonlinear=config.nonlinear)
    with scipy.fft.set_workers(config.threads):
        result = stepper.run(initial, config.params, cfg, config.t_end,
                             snapshot_stride=config.snapshot_stride)

    try:
        if config.csv:
            diagnostics.write_csv(result.records, config.csv)
        if config.snapshot:
            if result.snapshots:
                for idx, snap in enumerate(result.snapshots):
                    write_snapshot(snap, _snapshot_path(config.snapshot, idx))
            else:
                write_snapshot(result.final, config.snapshot)
    except OSError as exc:
        print(f"error: writing output failed: {exc}", file=sys.stderr)
        return 1

    print(f"status={result.status} steps={len(result.records) - 1}"
          + (f" reason={result.reason}" if result.reason else ""))
    if result.status == "horizon-clamped":
        return 2
    if result.status == "diverged":
        return 3
    return 0
