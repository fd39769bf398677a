"""CSV serialization of spectra and rate sweeps.

Files start with ``# key=value`` metadata lines, then a header row and data
rows.  Parameters are written with ``repr`` so they round-trip exactly;
data use fixed 12-digit scientific notation so identical inputs give
byte-identical files.
"""
from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .core import (
    FrequencyGrid,
    Method,
    PhysicalParams,
    ThermalConvention,
    parse_range,
    validate_params,
)
from .errors import InvalidParameterError
from .quadrature import QuadratureConfig
from .rates import rate_total
from .spectra import spectrum_total

SPECTRUM_COLUMNS = ("omega", "omega_over_omega0", "vac_scaled", "thermal_scaled", "total_scaled")
RATE_COLUMNS = ("omega0", "xi", "rate_vac", "rate_thermal", "rate_total", "temperature")


def fmt(x: float) -> str:
    return f"{float(x):.12e}"


def fmt_param(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render(meta: Sequence[tuple[str, object]], columns: Sequence[str],
           rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO(newline="")
    for key, value in meta:
        buf.write(f"# {key}={fmt_param(value)}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_text(path, text: str) -> None:
    Path(path).write_bytes(text.encode("utf-8"))


def read_csv(path) -> tuple[dict[str, str], list[str], np.ndarray]:
    return parse_csv(Path(path).read_text(encoding="utf-8"))


def parse_csv(text: str) -> tuple[dict[str, str], list[str], np.ndarray]:
    """Parse emitted CSV text into ``(metadata, columns, data)``."""
    meta: dict[str, str] = {}
    lines = text.splitlines()
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        key, _, value = lines[i][1:].strip().partition("=")
        meta[key] = value
        i += 1
    columns = lines[i].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[i + 1:] if line]
    data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
    return meta, columns, data


def _common_meta(p: PhysicalParams, conv, method, rel_tol: float, command: str):
    report = validate_params(p)
    return [
        ("generator", f"robin_dce {__version__}"),
        ("command", command),
        ("gamma0", float(p.gamma0)),
        ("epsilon0", float(p.epsilon0)),
        ("omega0", float(p.omega0)),
        ("tau", float(p.tau)),
        ("convention", ThermalConvention(conv).value),
        ("method", Method(method).value),
        ("rel_tol", float(rel_tol)),
        ("flags", "|".join(report.labels())),
    ]


def spectrum_table(p: PhysicalParams, grid_spec: str,
                   conv=ThermalConvention.SELF_CONSISTENT,
                   method=Method.CLOSED_FORM, rel_tol: float = 1e-10,
                   profile=None, profile_file: str | None = None) -> str:
    grid = FrequencyGrid.parse(grid_spec)
    cfg = QuadratureConfig(rel_tol=rel_tol)
    res = spectrum_total(grid, p, conv, method, profile, cfg)
    meta = _common_meta(p, conv, method, rel_tol, "spectrum")
    meta += [("temperature", float(p.temperature)), ("grid", grid_spec)]
    if profile_file is not None:
        meta.append(("profile_file", profile_file))
    w = grid.points
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = w / p.omega0 if p.omega0 > 0 else np.full_like(w, np.nan)
    rows = zip(w, ratio, res.vacuum, res.thermal, res.total)
    return render(meta, SPECTRUM_COLUMNS, rows)


def rate_rows(p: PhysicalParams, omega0_values: Sequence[float], temperatures: Sequence[float],
              conv=ThermalConvention.SELF_CONSISTENT, method=Method.CLOSED_FORM,
              cfg: QuadratureConfig | None = None, profile=None) -> list[tuple[float, ...]]:
    rows = []
    for T in temperatures:
        for w0 in omega0_values:
            q = p.replace(omega0=float(w0), temperature=float(T))
            r = rate_total(q, conv, cfg, method, profile)
            rows.append((q.omega0, q.xi, r.vacuum_rate, r.thermal_rate, r.total_rate, q.temperature))
    return rows


def parse_temperatures(text: str) -> list[float]:
    try:
        temps = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidParameterError(f"bad temperature list {text!r}") from None
    if not temps or any(t < 0 for t in temps):
        raise InvalidParameterError(f"temperatures must be non-negative, got {text!r}")
    return temps


def rate_table(p: PhysicalParams, sweep_spec: str, temperatures: Sequence[float],
               conv=ThermalConvention.SELF_CONSISTENT, method=Method.CLOSED_FORM,
               rel_tol: float = 1e-10) -> str:
    start, stop, count = parse_range(sweep_spec)
    if start < 0:
        raise InvalidParameterError("omega0 sweep must be non-negative")
    sweep = np.linspace(start, stop, count)
    cfg = QuadratureConfig(rel_tol=rel_tol)
    rows = rate_rows(p, sweep, temperatures, conv, method, cfg)
    meta = _common_meta(p, conv, method, rel_tol, "rate")
    meta += [("omega0_sweep", sweep_spec),
             ("temperatures", ",".join(fmt_param(float(t)) for t in temperatures))]
    return render(meta, RATE_COLUMNS, rows)


def params_from_meta(meta: dict[str, str], temperature: float | None = None) -> PhysicalParams:
    T = float(meta["temperature"]) if temperature is None else temperature
    return PhysicalParams(
        gamma0=float(meta["gamma0"]), epsilon0=float(meta["epsilon0"]),
        omega0=float(meta["omega0"]), tau=float(meta["tau"]), temperature=T,
    )


def recompute(text: str) -> str:
    """Regenerate a spectrum or rate CSV from its own metadata header."""
    meta, _, _ = parse_csv(text)
    conv, method, rel_tol = meta["convention"], meta["method"], float(meta["rel_tol"])
    if meta["command"] == "spectrum":
        profile = None
        if "profile_file" in meta:
            from .kernels import Tabulated
            profile = Tabulated.from_file(meta["profile_file"])
        return spectrum_table(params_from_meta(meta), meta["grid"], conv, method, rel_tol,
                              profile, meta.get("profile_file"))
    if meta["command"] == "rate":
        p = params_from_meta(meta, temperature=0.0)
        return rate_table(p, meta["omega0_sweep"], parse_temperatures(meta["temperatures"]),
                          conv, method, rel_tol)
    raise InvalidParameterError(f"cannot recompute command {meta['command']!r}")
